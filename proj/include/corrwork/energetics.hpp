#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "corrwork/correlation.hpp"
#include "corrwork/information.hpp"
#include "corrwork/nonlocality.hpp"

namespace corrwork {

/// Exact SI value, J/K.
inline constexpr double kBoltzmann = 1.380649e-23;

/// Energy in units of k_B T. The temperature only matters for presentation.
struct WorkQuantity {
    double kT_units = 0.0;
    std::optional<double> temperature_kelvin;

    std::optional<double> joules() const noexcept {
        if (!temperature_kelvin) return std::nullopt;
        return kT_units * kBoltzmann * *temperature_kelvin;
    }
};

/// Free-energy balance of one process, all in kT units:
/// delta_F = work_on_system - delta_I.
struct LedgerEntry {
    double delta_F = 0.0;
    double work_on_system = 0.0;
    double delta_I = 0.0;

    /// Work delivered to the agent, -W.
    double extractable_work() const noexcept { return -work_on_system; }
};

/// Builds the entry with work_on_system = delta_F + delta_I.
/// Throws std::domain_error on non-finite input.
LedgerEntry ledger(double delta_F, double delta_I);

/// Saturating bound W_ext = kT I. Throws std::domain_error unless
/// i is in [0, ln 2].
WorkQuantity work_from_correlation(Nats i);

/// kT |I(a,b) + I(a,b') + I(a',b) - I(a',b')|
WorkQuantity energetic_chsh(const CorrelationLaw& law, const ChshSettings& settings);

struct HierarchyReport {
    WorkQuantity classical;
    WorkQuantity quantum;
    WorkQuantity superquantum;

    bool strictly_increasing() const noexcept {
        return classical.kT_units < quantum.kT_units && quantum.kT_units < superquantum.kT_units;
    }
};

HierarchyReport hierarchy_report(const ChshSettings& settings);

struct DecayWindow {
    double min = 1e-3;
    double max = 1e-1;
    std::size_t points = 25;
};

struct DeficitSample {
    double delta_theta;
    double correlation_deficit;  // 1 - |E(anchor + delta_theta)|
    double information_deficit;  // ln 2 - I(anchor + delta_theta)
};

/// Geometric grid of misalignments around a perfectly aligned anchor.
std::vector<DeficitSample> deficit_samples(const CorrelationLaw& law, Angle anchor,
                                           const DecayWindow& window = {});

/// deficit ~ prefactor * delta_theta^exponent
struct DecayFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
    double window_min = 0.0;
    double window_max = 0.0;
};

enum class DecayShape { PowerLaw, Flat, Irregular };

inline constexpr double kMinFitRSquared = 0.999;
inline constexpr double kFlatDeficit = 1e-15;

struct RobustnessReport {
    DecayShape shape = DecayShape::Irregular;
    /// Present only for PowerLaw, i.e. when r_squared >= kMinFitRSquared.
    std::optional<DecayFit> fit;
    /// r^2 of the attempted regression; NaN when no regression was possible.
    double attempted_r_squared = 0.0;
};

/// Least-squares fit of log(1 - |E|) against log(delta_theta). A deficit
/// below kFlatDeficit across the whole window reports Flat. Throws
/// std::domain_error unless anchor is exactly 0 or pi.
RobustnessReport fit_decay_exponent(const CorrelationLaw& law, Angle anchor,
                                    const DecayWindow& window = {});

}  // namespace corrwork
