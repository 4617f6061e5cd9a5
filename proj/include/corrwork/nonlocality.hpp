#pragma once

#include <array>
#include <cstddef>

#include "corrwork/correlation.hpp"
#include "corrwork/linalg.hpp"

namespace corrwork {

/// Measurement directions (radians) for the two settings of each party.
struct ChshSettings {
    double phi_a = 0.0;
    double phi_a_prime = 0.0;
    double phi_b = 0.0;
    double phi_b_prime = 0.0;

    /// phi_a = 0, phi_a' = pi/2, phi_b = pi/4, phi_b' = -pi/4.
    static ChshSettings standard() noexcept;

    /// Throws std::domain_error if any angle is not finite.
    void validate() const;

    /// Canonical relative angles in the order (a,b), (a,b'), (a',b), (a',b').
    std::array<Angle, 4> relative_angles() const;

    ChshSettings rotated(double offset) const noexcept;

    std::array<double, 4> as_array() const noexcept { return {phi_a, phi_a_prime, phi_b, phi_b_prime}; }
    static ChshSettings from_array(const std::array<double, 4>& v) noexcept { return {v[0], v[1], v[2], v[3]}; }
};

struct ChshValue {
    double s = 0.0;
};

inline constexpr double kClassicalBound = 2.0;
inline constexpr double kTsirelsonBound = 2.0 * std::numbers::sqrt2;
inline constexpr double kAlgebraicBound = 4.0;

/// |E(a,b) + E(a,b') + E(a',b) - E(a',b')|
ChshValue chsh_value(const CorrelationLaw& law, const ChshSettings& settings);

/// Maximum of the CHSH combination over the 16 deterministic local
/// strategies A, A', B, B' in {-1, +1}. The settings do not enter.
ChshValue lhv_deterministic_max(const ChshSettings& settings);

/// A(phi) = cos(phi) Z + sin(phi) X.
linalg::Matrix<2> planar_observable(double phi) noexcept;

/// A(a) B(b) + A(a) B(b') + A(a') B(b) - A(a') B(b') as a real 4x4 matrix.
linalg::Matrix<4> chsh_operator(const ChshSettings& settings);

/// Spectral norm of chsh_operator(settings), via Jacobi eigenvalues.
double chsh_operator_norm(const ChshSettings& settings);

struct ChshSearchOptions {
    double grid_step = kPi / 36.0;
    double refine_until = 1e-6;
    double step_floor = 1e-7;
    std::size_t max_evaluations = 10'000;
};

struct ChshOptimum {
    ChshSettings settings;
    ChshValue value;
    ChshValue grid_value;
    double final_step = 0.0;
    std::size_t refine_evaluations = 0;
};

/// Grid scan of all four angles over [0, 2pi) followed by compass pattern
/// search. Ties on the grid go to the first point in lexicographic order of
/// (phi_a, phi_a', phi_b, phi_b').
ChshOptimum maximize_chsh(const CorrelationLaw& law, const ChshSearchOptions& options = {});

}  // namespace corrwork
