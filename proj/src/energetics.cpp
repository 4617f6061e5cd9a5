#include "corrwork/energetics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace corrwork {

LedgerEntry ledger(double delta_F, double delta_I) {
    if (!std::isfinite(delta_F) || !std::isfinite(delta_I)) {
        throw std::domain_error("ledger inputs must be finite");
    }
    return LedgerEntry{delta_F, delta_F + delta_I, delta_I};
}

WorkQuantity work_from_correlation(Nats i) {
    if (!(i.value >= 0.0 && i.value <= kLn2)) {
        throw std::domain_error("mutual information of a binary pair must lie in [0, ln 2]");
    }
    return WorkQuantity{i.value, std::nullopt};
}

WorkQuantity energetic_chsh(const CorrelationLaw& law, const ChshSettings& settings) {
    settings.validate();
    const auto rel = settings.relative_angles();
    const double s = mutual_information_law(law, rel[0]).value + mutual_information_law(law, rel[1]).value +
                     mutual_information_law(law, rel[2]).value - mutual_information_law(law, rel[3]).value;
    return WorkQuantity{std::abs(s), std::nullopt};
}

HierarchyReport hierarchy_report(const ChshSettings& settings) {
    return HierarchyReport{energetic_chsh(CorrelationLaw::classical(), settings),
                           energetic_chsh(CorrelationLaw::quantum(), settings),
                           energetic_chsh(CorrelationLaw::superquantum(), settings)};
}

namespace {

void check_anchor(Angle anchor) {
    if (anchor.radians() != 0.0 && anchor.radians() != kPi) {
        throw std::domain_error("robustness anchor must be 0 or pi");
    }
}

}  // namespace

std::vector<DeficitSample> deficit_samples(const CorrelationLaw& law, Angle anchor, const DecayWindow& window) {
    check_anchor(anchor);
    if (!(window.min > 0.0 && window.max > window.min && window.points >= 2)) {
        throw std::invalid_argument("decay window needs 0 < min < max and at least two points");
    }
    std::vector<DeficitSample> samples;
    samples.reserve(window.points);
    const double log_min = std::log(window.min);
    const double log_span = std::log(window.max) - log_min;
    for (std::size_t k = 0; k < window.points; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(window.points - 1);
        const double dtheta = std::exp(log_min + t * log_span);
        // canonicalize folds pi + d back to pi - d
        const Angle theta = Angle::canonicalize(anchor.radians() + dtheta);
        const double e = law.evaluate(theta).value();
        samples.push_back({dtheta, 1.0 - std::abs(e), kLn2 - mutual_information(CorrelationValue(e)).value});
    }
    return samples;
}

RobustnessReport fit_decay_exponent(const CorrelationLaw& law, Angle anchor, const DecayWindow& window) {
    const auto samples = deficit_samples(law, anchor, window);

    RobustnessReport report;
    bool all_flat = true;
    bool any_nonpositive = false;
    for (const auto& s : samples) {
        if (s.correlation_deficit >= kFlatDeficit) all_flat = false;
        if (!(s.correlation_deficit > 0.0)) any_nonpositive = true;
    }
    if (all_flat) {
        report.shape = DecayShape::Flat;
        report.attempted_r_squared = std::numeric_limits<double>::quiet_NaN();
        return report;
    }
    if (any_nonpositive) {
        report.shape = DecayShape::Irregular;
        report.attempted_r_squared = std::numeric_limits<double>::quiet_NaN();
        return report;
    }

    const double n = static_cast<double>(samples.size());
    double mx = 0.0, my = 0.0;
    for (const auto& s : samples) {
        mx += std::log(s.delta_theta);
        my += std::log(s.correlation_deficit);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& s : samples) {
        const double dx = std::log(s.delta_theta) - mx;
        const double dy = std::log(s.correlation_deficit) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    const double r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;

    report.attempted_r_squared = r2;
    if (r2 >= kMinFitRSquared) {
        report.shape = DecayShape::PowerLaw;
        report.fit = DecayFit{slope, std::exp(intercept), r2, window.min, window.max};
    } else {
        report.shape = DecayShape::Irregular;
    }
    return report;
}

}  // namespace corrwork
