#pragma once

#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "corrwork/random.hpp"

namespace corrwork {

inline constexpr double kPi = std::numbers::pi;

/// Relative measurement angle, always stored in [0, pi].
class Angle {
public:
    constexpr Angle() = default;

    /// Reflects an arbitrary finite angle into [0, pi]:
    /// theta -> min(theta mod 2pi, 2pi - theta mod 2pi).
    /// Throws std::domain_error on NaN or infinity.
    static Angle canonicalize(double raw);

    constexpr double radians() const noexcept { return radians_; }

    friend constexpr bool operator==(Angle, Angle) = default;

private:
    constexpr explicit Angle(double r) noexcept : radians_(r) {}
    double radians_ = 0.0;
};

/// Two-party correlator E in [-1, 1].
class CorrelationValue {
public:
    /// Throws std::domain_error outside [-1, 1].
    explicit CorrelationValue(double e);

    constexpr double value() const noexcept { return e_; }

private:
    double e_;
};

enum class LawKind { ClassicalLinear, QuantumCosine, SuperQuantumStep, Tabulated };

struct TableKnot {
    double theta;
    double e;
};

/// One of the three analytic correlation laws, or a user-supplied curve.
class CorrelationLaw {
public:
    static CorrelationLaw classical() { return CorrelationLaw(LawKind::ClassicalLinear); }
    static CorrelationLaw quantum() { return CorrelationLaw(LawKind::QuantumCosine); }
    static CorrelationLaw superquantum() { return CorrelationLaw(LawKind::SuperQuantumStep); }

    /// Knots must be non-empty, strictly increasing in theta, with theta in
    /// [0, pi] and e in [-1, 1]. Evaluation interpolates linearly and clamps
    /// to the end knots outside their range.
    static CorrelationLaw tabulated(std::vector<TableKnot> knots);

    LawKind kind() const noexcept { return kind_; }
    const std::vector<TableKnot>& knots() const noexcept { return knots_; }

    /// "classical", "quantum", "superquantum" or "tabulated".
    std::string_view name() const noexcept;

    CorrelationValue evaluate(Angle theta) const;

private:
    explicit CorrelationLaw(LawKind kind) : kind_(kind) {}

    LawKind kind_;
    std::vector<TableKnot> knots_;
};

/// E_c(theta) = -1 + 2 theta / pi
CorrelationValue eval_classical(Angle theta) noexcept;
/// E_q(theta) = -cos(theta)
CorrelationValue eval_quantum(Angle theta) noexcept;
/// E_s(theta) = sgn(2 theta / pi - 1), with sgn(0) = 0.
CorrelationValue eval_superquantum(Angle theta) noexcept;

/// Outcome distribution P(x, y) over x, y in {-1, +1}.
struct JointDistribution {
    double p_pp = 0.25;
    double p_pm = 0.25;
    double p_mp = 0.25;
    double p_mm = 0.25;

    double probability(int x, int y) const noexcept;
    /// Sum over cells of x * y * P(x, y).
    double correlation() const noexcept;
    double total() const noexcept { return p_pp + p_pm + p_mp + p_mm; }
    double marginal_a_plus() const noexcept { return p_pp + p_pm; }
    double marginal_b_plus() const noexcept { return p_pp + p_mp; }
};

/// P(x, y) = [1 + x y E] / 4; no-signaling with uniform marginals.
JointDistribution joint_distribution(CorrelationValue e) noexcept;

struct OutcomePair {
    int x;
    int y;
};

/// Draws one (x, y) pair. Cells are ordered (+,+), (+,-), (-,+), (-,-).
OutcomePair sample_pair(const JointDistribution& d, RandomStream& stream) noexcept;

/// Parses a `theta_radians,e` CSV with a header line. Errors are
/// std::runtime_error messages of the form "<source>:<line>: <reason>".
CorrelationLaw parse_tabulated_csv(std::istream& in, const std::string& source);

/// Throws IoError if the file cannot be opened.
CorrelationLaw load_tabulated_csv(const std::filesystem::path& path);

}  // namespace corrwork
