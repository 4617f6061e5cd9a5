#pragma once

#include <numbers>

#include "corrwork/correlation.hpp"

namespace corrwork {

inline constexpr double kLn2 = std::numbers::ln2;

/// Information quantity in natural-log units.
struct Nats {
    double value = 0.0;

    /// 1 bit = ln 2 nats.
    double bits() const noexcept { return value / kLn2; }
};

/// h2(p) = -p ln p - (1-p) ln(1-p), with 0 ln 0 = 0.
/// Throws std::domain_error for p outside [0, 1].
Nats binary_entropy(double p);

/// I(A:E) = ln 2 - h2((1 + E) / 2) for the uniform-marginal distribution.
Nats mutual_information(CorrelationValue e);

/// H(A|E) = h2((1 + E) / 2).
Nats conditional_entropy(CorrelationValue e);

/// Closed form of I for each analytic law:
///   classical     ln 2 - h2(theta / pi)
///   quantum       ln 2 - h2(sin^2(theta / 2))
///   superquantum  ln 2 away from pi/2, 0 at pi/2
/// Tabulated laws go through mutual_information(law.evaluate(theta)).
Nats mutual_information_law(const CorrelationLaw& law, Angle theta);

}  // namespace corrwork
