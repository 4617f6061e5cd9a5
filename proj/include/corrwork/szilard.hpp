#pragma once

#include <cstddef>
#include <cstdint>

#include "corrwork/energetics.hpp"

namespace corrwork {

/// Single-particle Szilard cycle driven by a memory bit that predicts the
/// particle's half with error probability epsilon. After the prediction the
/// partition sits at the middle and is moved quasi-statically until a
/// fraction x of the box lies on the predicted side.
struct EngineConfig {
    double epsilon = 0.0;
    double partition_fraction = 0.5;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    /// Trials are split over this many independent streams. Results depend on
    /// the shard count but not on the number of worker threads.
    std::size_t shards = 16;

    /// Requires epsilon in [0, 1/2], x in (0, 1) (x = 1 allowed only when
    /// epsilon = 0), trials >= 1, shards >= 1. Throws std::domain_error.
    void validate() const;
};

/// epsilon = (1 - |E|) / 2.
double error_probability(CorrelationValue e) noexcept;

struct CycleResult {
    WorkQuantity mean_work;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

/// W(x) = (1 - eps) ln(2x) + eps ln(2(1 - x)), extracted work in kT units.
/// Throws std::domain_error for eps outside [0, 1/2] or x outside (0, 1).
WorkQuantity expected_work(double epsilon, double x);

struct PartitionOptimum {
    double x_opt = 0.5;
    WorkQuantity w_opt;
    /// True for eps = 0, where the supremum ln 2 sits at the wall x = 1.
    bool boundary = false;
};

/// x_opt = 1 - eps; w_opt = W(x_opt) = ln 2 - h2(eps).
PartitionOptimum optimal_partition(double epsilon);

/// Monte Carlo over memory-bit correctness. Deterministic for a fixed
/// (seed, shards).
CycleResult simulate(const EngineConfig& config);

}  // namespace corrwork
