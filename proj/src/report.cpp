#include "corrwork/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "corrwork/energetics.hpp"
#include "corrwork/information.hpp"
#include "corrwork/nonlocality.hpp"
#include "corrwork/random.hpp"
#include "corrwork/szilard.hpp"

namespace corrwork {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

double round_significant(double v) {
    if (!std::isfinite(v)) return v;
    return std::strtod(format_number(v).c_str(), nullptr);
}

SweepTable make_sweep(const CorrelationLaw& law, std::string law_name, double theta_min, double theta_max,
                      std::size_t steps) {
    if (!(theta_min >= 0.0 && theta_min < theta_max && theta_max <= kPi)) {
        throw std::invalid_argument("sweep range must satisfy 0 <= theta_min < theta_max <= pi");
    }
    if (steps < 2) {
        throw std::invalid_argument("sweep needs at least 2 steps");
    }
    SweepTable table;
    table.law_name = std::move(law_name);
    table.theta_min = theta_min;
    table.theta_max = theta_max;
    table.steps = steps;
    table.rows.reserve(steps);
    const double span = theta_max - theta_min;
    for (std::size_t k = 0; k < steps; ++k) {
        // k / (steps - 1) first, so midpoints such as pi/2 land exactly.
        const double frac = static_cast<double>(k) / static_cast<double>(steps - 1);
        const double theta = k + 1 == steps ? theta_max : theta_min + span * frac;
        const Angle angle = Angle::canonicalize(theta);
        const CorrelationValue e = law.evaluate(angle);
        const double i = mutual_information(e).value;
        table.rows.push_back({theta, e.value(), i, work_from_correlation(Nats{i}).kT_units});
    }
    return table;
}

void write_sweep_csv(const SweepTable& table, std::ostream& out) {
    out << "theta,e,i_nats,w_kT\n";
    for (const auto& r : table.rows) {
        out << format_number(r.theta) << ',' << format_number(r.e) << ',' << format_number(r.i_nats) << ','
            << format_number(r.w_kT) << '\n';
    }
}

std::vector<SweepRow> parse_sweep_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<SweepRow> rows;
    if (!std::getline(in, line)) {
        throw std::runtime_error("line 1: missing header");
    }
    ++line_no;
    if (line != "theta,e,i_nats,w_kT") {
        throw std::runtime_error("line 1: unexpected header '" + line + "'");
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string cell;
        std::vector<double> values;
        while (std::getline(fields, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size()) {
                throw std::runtime_error("line " + std::to_string(line_no) + ": not a number: '" + cell + "'");
            }
            values.push_back(v);
        }
        if (values.size() != 4) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected 4 columns");
        }
        rows.push_back({values[0], values[1], values[2], values[3]});
    }
    return rows;
}

std::vector<std::string> validate_sweep_rows(const std::vector<SweepRow>& rows, double tolerance) {
    std::vector<std::string> problems;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        const std::string where = "row " + std::to_string(k + 1) + ": ";
        if (k > 0 && !(r.theta > rows[k - 1].theta)) {
            problems.push_back(where + "theta not strictly increasing");
        }
        if (!(r.e >= -1.0 && r.e <= 1.0)) {
            problems.push_back(where + "e outside [-1, 1]");
            continue;
        }
        const double expected = mutual_information(CorrelationValue(r.e)).value;
        if (std::abs(r.i_nats - expected) > tolerance) {
            problems.push_back(where + "i_nats disagrees with ln 2 - h2((1+e)/2)");
        }
        if (std::abs(r.w_kT - r.i_nats) > tolerance) {
            problems.push_back(where + "w_kT differs from i_nats");
        }
    }
    return problems;
}

nlohmann::ordered_json sweep_metadata(const SweepTable& table) {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = table.version;
    j["law"] = table.law_name;
    j["theta_min"] = round_significant(table.theta_min);
    j["theta_max"] = round_significant(table.theta_max);
    j["steps"] = table.steps;
    j["rows"] = table.rows.size();
    return j;
}

bool Suite::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool VerificationReport::passed() const noexcept {
    return std::all_of(suites.begin(), suites.end(), [](const Suite& s) { return s.passed(); });
}

namespace {

Check equal(std::string name, double measured, double expected, double tolerance) {
    const bool ok = std::abs(measured - expected) <= tolerance;
    return {std::move(name), measured, expected, tolerance, Check::Relation::Equal, ok};
}

Check at_most(std::string name, double measured, double bound, double tolerance) {
    return {std::move(name), measured, bound, tolerance, Check::Relation::AtMost, measured <= bound + tolerance};
}

Check at_least(std::string name, double measured, double bound) {
    return {std::move(name), measured, bound, 0.0, Check::Relation::AtLeast, measured >= bound};
}

Check holds(std::string name, bool condition) {
    return {std::move(name), condition ? 1.0 : 0.0, 1.0, 0.0, Check::Relation::Holds, condition};
}

std::string_view relation_name(Check::Relation r) {
    switch (r) {
        case Check::Relation::Equal: return "equal";
        case Check::Relation::AtMost: return "at_most";
        case Check::Relation::AtLeast: return "at_least";
        case Check::Relation::Holds: return "holds";
    }
    return "equal";
}

ChshSettings random_settings(RandomStream& rng) {
    auto draw = [&] { return (rng.next_unit() * 4.0 - 2.0) * kPi; };
    ChshSettings s;
    s.phi_a = draw();
    s.phi_a_prime = draw();
    s.phi_b = draw();
    s.phi_b_prime = draw();
    return s;
}

// Binary entropy written out directly so formula checks do not reuse the
// information module.
double h2_direct(double p) {
    return -p * std::log(p) - (1.0 - p) * std::log(1.0 - p);
}

Suite chsh_suite(nlohmann::ordered_json& summary) {
    const auto std_angles = ChshSettings::standard();
    const double c = chsh_value(CorrelationLaw::classical(), std_angles).s;
    const double q = chsh_value(CorrelationLaw::quantum(), std_angles).s;
    const double s = chsh_value(CorrelationLaw::superquantum(), std_angles).s;
    summary["classical"] = round_significant(c);
    summary["quantum"] = round_significant(q);
    summary["superquantum"] = round_significant(s);
    return {"chsh",
            {equal("classical_standard_angles", c, kClassicalBound, 1e-12),
             equal("quantum_standard_angles", q, kTsirelsonBound, 1e-12),
             equal("superquantum_standard_angles", s, kAlgebraicBound, 0.0)}};
}

Suite lhv_suite(RandomStream& rng) {
    double lo = lhv_deterministic_max(ChshSettings::standard()).s;
    double hi = lo;
    for (int k = 0; k < 100; ++k) {
        const double v = lhv_deterministic_max(random_settings(rng)).s;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {"lhv", {equal("min_over_random_settings", lo, 2.0, 0.0), equal("max_over_random_settings", hi, 2.0, 0.0)}};
}

Suite tsirelson_suite(RandomStream& rng) {
    double max_norm = 0.0;
    double max_singlet_excess = -kAlgebraicBound;
    double max_closed_form_gap = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const auto s = random_settings(rng);
        const double norm = chsh_operator_norm(s);
        max_norm = std::max(max_norm, norm);
        max_singlet_excess = std::max(max_singlet_excess, chsh_value(CorrelationLaw::quantum(), s).s - norm);
        const double closed = 4.0 + 4.0 * std::abs(std::sin(s.phi_a - s.phi_a_prime) * std::sin(s.phi_b - s.phi_b_prime));
        max_closed_form_gap = std::max(max_closed_form_gap, std::abs(norm * norm - closed));
    }
    return {"tsirelson",
            {equal("norm_standard_angles", chsh_operator_norm(ChshSettings::standard()), kTsirelsonBound, 1e-9),
             at_most("max_norm_random_settings", max_norm, kTsirelsonBound, 1e-9),
             at_most("singlet_value_minus_norm", max_singlet_excess, 0.0, 1e-9),
             at_most("squared_norm_closed_form_gap", max_closed_form_gap, 0.0, 1e-9)}};
}

Suite information_suite() {
    constexpr std::size_t grid = 10'000;
    const CorrelationLaw laws[] = {CorrelationLaw::classical(), CorrelationLaw::quantum(),
                                   CorrelationLaw::superquantum()};
    Suite suite{"mutual_information", {}};
    double superquantum_min = kLn2;
    for (const auto& law : laws) {
        double worst = 0.0;
        double chain = 0.0;
        for (std::size_t k = 0; k < grid; ++k) {
            const Angle t = Angle::canonicalize(kPi * static_cast<double>(k) / static_cast<double>(grid - 1));
            const CorrelationValue e = law.evaluate(t);
            const double pipeline = mutual_information(e).value;
            worst = std::max(worst, std::abs(mutual_information_law(law, t).value - pipeline));
            chain = std::max(chain, std::abs(pipeline + conditional_entropy(e).value - kLn2));
            if (law.kind() == LawKind::SuperQuantumStep) superquantum_min = std::min(superquantum_min, pipeline);
        }
        const std::string n{law.name()};
        suite.checks.push_back(at_most(n + "_closed_form_vs_pipeline", worst, 0.0, 1e-12));
        suite.checks.push_back(at_most(n + "_chain_identity", chain, 0.0, 1e-12));
    }
    const Angle zero = Angle::canonicalize(0.0);
    const Angle pi = Angle::canonicalize(kPi);
    const Angle half = Angle::canonicalize(kPi / 2.0);
    suite.checks.push_back(equal("classical_at_0", mutual_information_law(laws[0], zero).value, kLn2, 1e-12));
    suite.checks.push_back(equal("classical_at_pi", mutual_information_law(laws[0], pi).value, kLn2, 1e-12));
    suite.checks.push_back(equal("quantum_at_0", mutual_information_law(laws[1], zero).value, kLn2, 1e-12));
    suite.checks.push_back(equal("quantum_at_pi", mutual_information_law(laws[1], pi).value, kLn2, 1e-12));
    suite.checks.push_back(equal("quantum_at_half_pi", mutual_information_law(laws[1], half).value, 0.0, 1e-12));
    suite.checks.push_back(equal("superquantum_min_off_half_pi", superquantum_min, kLn2, 1e-12));
    suite.checks.push_back(equal("superquantum_at_half_pi", mutual_information_law(laws[2], half).value, 0.0, 0.0));
    return suite;
}

Suite energetic_suite(nlohmann::ordered_json& summary) {
    const auto std_angles = ChshSettings::standard();
    const auto h = hierarchy_report(std_angles);
    const double c = h.classical.kT_units;
    const double q = h.quantum.kT_units;
    const double s = h.superquantum.kT_units;
    const double p_q = (2.0 - std::sqrt(2.0)) / 4.0;
    const double formula_c = 2.0 * (kLn2 - h2_direct(0.25));
    const double formula_q = 2.0 * (kLn2 - h2_direct(p_q));
    const double formula_s = 2.0 * kLn2;
    summary["classical"] = round_significant(c);
    summary["quantum"] = round_significant(q);
    summary["superquantum"] = round_significant(s);
    summary["hierarchy"] = h.strictly_increasing() ? "strict" : "not_strict";

    Suite suite{"energetic_chsh",
                {equal("classical_vs_formula", c, formula_c, 1e-9), equal("quantum_vs_formula", q, formula_q, 1e-9),
                 equal("superquantum_vs_formula", s, formula_s, 1e-9),
                 holds("strict_hierarchy", h.strictly_increasing()),
                 holds("quantum_entropy_argument_below_classical", p_q < 0.25 && h2_direct(p_q) < h2_direct(0.25))}};
    const Angle quarter = Angle::canonicalize(kPi / 4.0);
    const Angle three_quarter = Angle::canonicalize(3.0 * kPi / 4.0);
    const std::pair<CorrelationLaw, double> reduced[] = {
        {CorrelationLaw::classical(), c}, {CorrelationLaw::quantum(), q}, {CorrelationLaw::superquantum(), s}};
    for (const auto& [law, value] : reduced) {
        const double r = std::abs(3.0 * mutual_information_law(law, quarter).value -
                                  mutual_information_law(law, three_quarter).value);
        suite.checks.push_back(equal(std::string(law.name()) + "_reduced_form", value, r, 1e-12));
    }
    return suite;
}

Suite robustness_suite(nlohmann::ordered_json& summary) {
    const Angle zero = Angle::canonicalize(0.0);
    const auto c = fit_decay_exponent(CorrelationLaw::classical(), zero);
    const auto q = fit_decay_exponent(CorrelationLaw::quantum(), zero);
    const auto s = fit_decay_exponent(CorrelationLaw::superquantum(), zero);
    Suite suite{"robustness", {}};
    suite.checks.push_back(holds("classical_power_law", c.shape == DecayShape::PowerLaw));
    suite.checks.push_back(holds("quantum_power_law", q.shape == DecayShape::PowerLaw));
    if (c.fit) {
        suite.checks.push_back(equal("classical_exponent", c.fit->exponent, 1.0, 0.005));
        suite.checks.push_back(equal("classical_prefactor", c.fit->prefactor, 2.0 / kPi, 1e-3));
        suite.checks.push_back(at_least("classical_r_squared", c.fit->r_squared, kMinFitRSquared));
        summary["classical_exponent"] = round_significant(c.fit->exponent);
        summary["classical_prefactor"] = round_significant(c.fit->prefactor);
    }
    if (q.fit) {
        suite.checks.push_back(equal("quantum_exponent", q.fit->exponent, 2.0, 0.01));
        suite.checks.push_back(at_least("quantum_r_squared", q.fit->r_squared, kMinFitRSquared));
        summary["quantum_exponent"] = round_significant(q.fit->exponent);
    }
    suite.checks.push_back(holds("superquantum_flat", s.shape == DecayShape::Flat));
    summary["superquantum"] = s.shape == DecayShape::Flat ? "flat" : "not_flat";
    return suite;
}

Suite szilard_suite(RandomStream& rng, nlohmann::ordered_json& summary) {
    Suite suite{"szilard", {}};
    double saturation_gap = 0.0;
    for (int k = 1; k <= 10; ++k) {
        const double eps = 0.05 * k;
        const double bound = mutual_information(CorrelationValue(1.0 - 2.0 * eps)).value;
        saturation_gap = std::max(saturation_gap, std::abs(optimal_partition(eps).w_opt.kT_units - bound));
    }
    suite.checks.push_back(at_most("optimum_saturates_bound", saturation_gap, 0.0, 1e-12));

    const auto perfect = optimal_partition(0.0);
    suite.checks.push_back(equal("perfect_correlation_optimum", perfect.w_opt.kT_units, kLn2, 1e-12));
    EngineConfig perfect_cfg{0.0, perfect.x_opt, 1000, rng.next_u64()};
    suite.checks.push_back(equal("perfect_correlation_monte_carlo", simulate(perfect_cfg).mean_work.kT_units, kLn2, 1e-12));

    double worst_z = 0.0;
    for (int k = 0; k < 10; ++k) {
        EngineConfig cfg;
        cfg.epsilon = 0.02 + 0.48 * rng.next_unit();
        cfg.partition_fraction = 0.05 + 0.9 * rng.next_unit();
        cfg.trials = 1'000'000;
        cfg.seed = rng.next_u64();
        const auto r = simulate(cfg);
        const double closed = expected_work(cfg.epsilon, cfg.partition_fraction).kT_units;
        worst_z = std::max(worst_z, std::abs(r.mean_work.kT_units - closed) / r.std_error);
    }
    suite.checks.push_back(at_most("monte_carlo_standard_errors", worst_z, 4.0, 0.0));

    double excess = -kLn2;
    for (int i = 0; i < 50; ++i) {
        const double eps = 0.5 * i / 49.0;
        const double ceiling = kLn2 - binary_entropy(eps).value;
        for (int j = 0; j < 50; ++j) {
            const double x = (j + 1) / 51.0;
            excess = std::max(excess, expected_work(eps, x).kT_units - ceiling);
        }
    }
    suite.checks.push_back(at_most("second_law_ceiling", excess, 0.0, 1e-12));
    summary["max_saturation_gap"] = round_significant(saturation_gap);
    summary["max_monte_carlo_z"] = round_significant(worst_z);
    return suite;
}

nlohmann::ordered_json check_json(const Check& c) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["relation"] = relation_name(c.relation);
    j["measured"] = round_significant(c.measured);
    j["expected"] = round_significant(c.expected);
    j["tolerance"] = c.tolerance;
    j["passed"] = c.passed;
    return j;
}

}  // namespace

VerificationReport run_verification(std::uint64_t seed) {
    VerificationReport report;
    report.seed = seed;
    RandomStream rng(seed);
    nlohmann::ordered_json chsh, energetic, robustness, szilard;

    report.suites.push_back(chsh_suite(chsh));
    report.suites.push_back(lhv_suite(rng));
    report.suites.push_back(tsirelson_suite(rng));
    report.suites.push_back(information_suite());
    report.suites.push_back(energetic_suite(energetic));
    report.suites.push_back(robustness_suite(robustness));
    report.suites.push_back(szilard_suite(rng, szilard));

    auto& j = report.json;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["seed"] = seed;
    j["passed"] = report.passed();
    j["suites_total"] = report.suites.size();
    j["suites_passed"] = std::count_if(report.suites.begin(), report.suites.end(),
                                       [](const Suite& s) { return s.passed(); });
    j["chsh"] = chsh;
    j["energetic_chsh"] = energetic;
    j["robustness"] = robustness;
    j["szilard"] = szilard;
    j["suites"] = nlohmann::ordered_json::array();
    j["failed_checks"] = nlohmann::ordered_json::array();
    for (const auto& suite : report.suites) {
        nlohmann::ordered_json s;
        s["name"] = suite.name;
        s["passed"] = suite.passed();
        s["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : suite.checks) {
            s["checks"].push_back(check_json(c));
            if (!c.passed) j["failed_checks"].push_back(suite.name + "." + c.name);
        }
        j["suites"].push_back(s);
    }
    return report;
}

}  // namespace corrwork
