#include "corrwork/szilard.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "corrwork/parallel.hpp"
#include "corrwork/random.hpp"

namespace corrwork {

namespace {

void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 0.5)) {
        throw std::domain_error("epsilon must lie in [0, 1/2]; relabel the bit for larger error rates");
    }
}

// Welford accumulator; merged with Chan's pairwise update.
struct Moments {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double v) noexcept {
        ++n;
        const double d = v - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (v - mean);
    }

    static Moments merge(const Moments& a, const Moments& b) noexcept {
        if (a.n == 0) return b;
        if (b.n == 0) return a;
        Moments r;
        r.n = a.n + b.n;
        const double na = static_cast<double>(a.n);
        const double nb = static_cast<double>(b.n);
        const double d = b.mean - a.mean;
        r.mean = a.mean + d * nb / static_cast<double>(r.n);
        r.m2 = a.m2 + b.m2 + d * d * na * nb / static_cast<double>(r.n);
        return r;
    }
};

Moments merge_range(const std::vector<Moments>& parts, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return parts[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return Moments::merge(merge_range(parts, lo, mid), merge_range(parts, mid, hi));
}

}  // namespace

void EngineConfig::validate() const {
    check_epsilon(epsilon);
    const bool interior = partition_fraction > 0.0 && partition_fraction < 1.0;
    const bool wall = partition_fraction == 1.0 && epsilon == 0.0;
    if (!interior && !wall) {
        throw std::domain_error("partition fraction must lie in (0, 1)");
    }
    if (trials < 1) throw std::domain_error("trials must be at least 1");
    if (shards < 1) throw std::domain_error("shards must be at least 1");
}

double error_probability(CorrelationValue e) noexcept {
    return 0.5 * (1.0 - std::abs(e.value()));
}

WorkQuantity expected_work(double epsilon, double x) {
    check_epsilon(epsilon);
    if (!(x > 0.0 && x < 1.0)) {
        throw std::domain_error("partition fraction must lie in (0, 1)");
    }
    return WorkQuantity{(1.0 - epsilon) * std::log(2.0 * x) + epsilon * std::log(2.0 * (1.0 - x)), std::nullopt};
}

PartitionOptimum optimal_partition(double epsilon) {
    check_epsilon(epsilon);
    if (epsilon == 0.0) {
        return PartitionOptimum{1.0, WorkQuantity{kLn2, std::nullopt}, true};
    }
    const double x = 1.0 - epsilon;
    return PartitionOptimum{x, expected_work(epsilon, x), false};
}

CycleResult simulate(const EngineConfig& config) {
    config.validate();
    const double x = config.partition_fraction;
    const double w_correct = std::log(2.0 * x);
    const double w_wrong = x < 1.0 ? std::log(2.0 * (1.0 - x)) : 0.0;
    const double p_correct = 1.0 - config.epsilon;

    const std::size_t shards = static_cast<std::size_t>(
        std::min<std::uint64_t>(config.shards, config.trials));
    const std::uint64_t base = config.trials / shards;
    const std::uint64_t extra = config.trials % shards;

    std::vector<Moments> parts(shards);
    parallel_for(shards, [&](std::size_t k) {
        RandomStream stream = RandomStream::derive(config.seed, k);
        const std::uint64_t count = base + (k < extra ? 1 : 0);
        Moments m;
        for (std::uint64_t t = 0; t < count; ++t) {
            // A wrong prediction has probability epsilon; it never fires at epsilon = 0.
            m.add(stream.next_unit() < p_correct ? w_correct : w_wrong);
        }
        parts[k] = m;
    });
    const Moments total = merge_range(parts, 0, parts.size());

    CycleResult result;
    result.n = total.n;
    result.mean_work = WorkQuantity{total.mean, std::nullopt};
    if (total.n > 1) {
        const double variance = total.m2 / static_cast<double>(total.n - 1);
        result.std_error = std::sqrt(variance / static_cast<double>(total.n));
    }
    return result;
}

}  // namespace corrwork
