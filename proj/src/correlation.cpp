#include "corrwork/correlation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>

#include "corrwork/errors.hpp"

namespace corrwork {

Angle Angle::canonicalize(double raw) {
    if (!std::isfinite(raw)) {
        throw std::domain_error("angle must be finite");
    }
    constexpr double two_pi = 2.0 * kPi;
    double m = std::fmod(raw, two_pi);
    if (m < 0.0) {
        m += two_pi;
    }
    // fmod of a negative tiny value can round up to exactly 2pi
    if (m >= two_pi) {
        m = 0.0;
    }
    return Angle(std::min(m, two_pi - m));
}

CorrelationValue::CorrelationValue(double e) : e_(e) {
    if (!(e >= -1.0 && e <= 1.0)) {
        throw std::domain_error("correlation value must lie in [-1, 1]");
    }
}

CorrelationValue eval_classical(Angle theta) noexcept {
    return CorrelationValue(std::clamp(-1.0 + 2.0 * theta.radians() / kPi, -1.0, 1.0));
}

CorrelationValue eval_quantum(Angle theta) noexcept {
    return CorrelationValue(-std::cos(theta.radians()));
}

CorrelationValue eval_superquantum(Angle theta) noexcept {
    const double arg = 2.0 * theta.radians() / kPi - 1.0;
    if (arg < 0.0) return CorrelationValue(-1.0);
    if (arg > 0.0) return CorrelationValue(1.0);
    return CorrelationValue(0.0);
}

CorrelationLaw CorrelationLaw::tabulated(std::vector<TableKnot> knots) {
    if (knots.empty()) {
        throw std::invalid_argument("tabulated law needs at least one knot");
    }
    for (std::size_t i = 0; i < knots.size(); ++i) {
        const auto& k = knots[i];
        if (!(k.theta >= 0.0 && k.theta <= kPi)) {
            throw std::invalid_argument("knot " + std::to_string(i) + ": theta outside [0, pi]");
        }
        if (!(k.e >= -1.0 && k.e <= 1.0)) {
            throw std::invalid_argument("knot " + std::to_string(i) + ": e outside [-1, 1]");
        }
        if (i > 0 && !(k.theta > knots[i - 1].theta)) {
            throw std::invalid_argument("knot " + std::to_string(i) + ": theta not strictly increasing");
        }
    }
    CorrelationLaw law(LawKind::Tabulated);
    law.knots_ = std::move(knots);
    return law;
}

std::string_view CorrelationLaw::name() const noexcept {
    switch (kind_) {
        case LawKind::ClassicalLinear: return "classical";
        case LawKind::QuantumCosine: return "quantum";
        case LawKind::SuperQuantumStep: return "superquantum";
        case LawKind::Tabulated: return "tabulated";
    }
    return "unknown";
}

CorrelationValue CorrelationLaw::evaluate(Angle theta) const {
    switch (kind_) {
        case LawKind::ClassicalLinear: return eval_classical(theta);
        case LawKind::QuantumCosine: return eval_quantum(theta);
        case LawKind::SuperQuantumStep: return eval_superquantum(theta);
        case LawKind::Tabulated: break;
    }
    const double t = theta.radians();
    if (t <= knots_.front().theta) return CorrelationValue(knots_.front().e);
    if (t >= knots_.back().theta) return CorrelationValue(knots_.back().e);
    const auto hi = std::upper_bound(knots_.begin(), knots_.end(), t,
                                     [](double v, const TableKnot& k) { return v < k.theta; });
    const auto lo = hi - 1;
    const double w = (t - lo->theta) / (hi->theta - lo->theta);
    return CorrelationValue(std::clamp(lo->e + w * (hi->e - lo->e), -1.0, 1.0));
}

double JointDistribution::probability(int x, int y) const noexcept {
    if (x > 0) return y > 0 ? p_pp : p_pm;
    return y > 0 ? p_mp : p_mm;
}

double JointDistribution::correlation() const noexcept {
    return p_pp - p_pm - p_mp + p_mm;
}

JointDistribution joint_distribution(CorrelationValue e) noexcept {
    const double same = 0.25 * (1.0 + e.value());
    const double diff = 0.25 * (1.0 - e.value());
    return JointDistribution{same, diff, diff, same};
}

OutcomePair sample_pair(const JointDistribution& d, RandomStream& stream) noexcept {
    const double u = stream.next_unit();
    double acc = d.p_pp;
    if (u < acc) return {+1, +1};
    acc += d.p_pm;
    if (u < acc) return {+1, -1};
    acc += d.p_mp;
    if (u < acc) return {-1, +1};
    // p_mm absorbs rounding in the running sum, but a zero cell is never drawn
    if (d.p_mm > 0.0) return {-1, -1};
    if (d.p_mp > 0.0) return {-1, +1};
    if (d.p_pm > 0.0) return {+1, -1};
    return {+1, +1};
}

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

double parse_number(std::string_view field, const std::string& where) {
    field = trim(field);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
        throw std::runtime_error(where + "not a number: '" + std::string(field) + "'");
    }
    return v;
}

}  // namespace

CorrelationLaw parse_tabulated_csv(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<TableKnot> knots;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = source + ":" + std::to_string(line_no) + ": ";
        const std::string_view row = trim(line);
        if (!header_seen) {
            if (row != "theta_radians,e") {
                throw std::runtime_error(where + "expected header 'theta_radians,e'");
            }
            header_seen = true;
            continue;
        }
        if (row.empty()) continue;
        const auto comma = row.find(',');
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
            throw std::runtime_error(where + "expected exactly two columns");
        }
        const double theta = parse_number(row.substr(0, comma), where);
        const double e = parse_number(row.substr(comma + 1), where);
        if (!(theta >= 0.0 && theta <= kPi)) {
            throw std::runtime_error(where + "theta outside [0, pi]");
        }
        if (!(e >= -1.0 && e <= 1.0)) {
            throw std::runtime_error(where + "e outside [-1, 1]");
        }
        if (!knots.empty() && !(theta > knots.back().theta)) {
            throw std::runtime_error(where + "theta not strictly increasing");
        }
        knots.push_back({theta, e});
    }
    if (!header_seen) {
        throw std::runtime_error(source + ":1: empty file");
    }
    if (knots.empty()) {
        throw std::runtime_error(source + ":" + std::to_string(line_no) + ": no data rows");
    }
    return CorrelationLaw::tabulated(std::move(knots));
}

CorrelationLaw load_tabulated_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open correlation table '" + path.string() + "'");
    }
    return parse_tabulated_csv(in, path.string());
}

}  // namespace corrwork
