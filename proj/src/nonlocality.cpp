#include "corrwork/nonlocality.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "corrwork/parallel.hpp"

namespace corrwork {

ChshSettings ChshSettings::standard() noexcept {
    return {0.0, kPi / 2.0, kPi / 4.0, -kPi / 4.0};
}

void ChshSettings::validate() const {
    for (double v : as_array()) {
        if (!std::isfinite(v)) {
            throw std::domain_error("CHSH settings must be finite");
        }
    }
}

std::array<Angle, 4> ChshSettings::relative_angles() const {
    return {Angle::canonicalize(phi_a - phi_b), Angle::canonicalize(phi_a - phi_b_prime),
            Angle::canonicalize(phi_a_prime - phi_b), Angle::canonicalize(phi_a_prime - phi_b_prime)};
}

ChshSettings ChshSettings::rotated(double offset) const noexcept {
    return {phi_a + offset, phi_a_prime + offset, phi_b + offset, phi_b_prime + offset};
}

ChshValue chsh_value(const CorrelationLaw& law, const ChshSettings& settings) {
    settings.validate();
    const auto rel = settings.relative_angles();
    const double s = law.evaluate(rel[0]).value() + law.evaluate(rel[1]).value() +
                     law.evaluate(rel[2]).value() - law.evaluate(rel[3]).value();
    return ChshValue{std::abs(s)};
}

ChshValue lhv_deterministic_max(const ChshSettings& /*settings*/) {
    int best = 0;
    for (int bits = 0; bits < 16; ++bits) {
        const int a = (bits & 1) ? 1 : -1;
        const int a2 = (bits & 2) ? 1 : -1;
        const int b = (bits & 4) ? 1 : -1;
        const int b2 = (bits & 8) ? 1 : -1;
        const int s = a * b + a * b2 + a2 * b - a2 * b2;
        best = std::max(best, std::abs(s));
    }
    return ChshValue{static_cast<double>(best)};
}

linalg::Matrix<2> planar_observable(double phi) noexcept {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {{{c, s}, {s, -c}}};
}

linalg::Matrix<4> chsh_operator(const ChshSettings& settings) {
    settings.validate();
    const auto a = planar_observable(settings.phi_a);
    const auto a2 = planar_observable(settings.phi_a_prime);
    const auto b = planar_observable(settings.phi_b);
    const auto b2 = planar_observable(settings.phi_b_prime);
    const auto ab = linalg::kronecker(a, b);
    const auto ab2 = linalg::kronecker(a, b2);
    const auto a2b = linalg::kronecker(a2, b);
    const auto a2b2 = linalg::kronecker(a2, b2);
    linalg::Matrix<4> op{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) op[i][j] = ab[i][j] + ab2[i][j] + a2b[i][j] - a2b2[i][j];
    return op;
}

double chsh_operator_norm(const ChshSettings& settings) {
    return linalg::spectral_norm_symmetric<4>(chsh_operator(settings));
}

namespace {

struct GridBest {
    double value = -1.0;
    std::array<double, 4> point{};
};

}  // namespace

ChshOptimum maximize_chsh(const CorrelationLaw& law, const ChshSearchOptions& options) {
    const auto per_axis = static_cast<std::size_t>(std::llround(2.0 * kPi / options.grid_step));
    std::vector<double> axis(per_axis);
    for (std::size_t i = 0; i < per_axis; ++i) axis[i] = static_cast<double>(i) * options.grid_step;

    // One block per phi_a value; merging blocks in index order keeps the
    // lexicographic first-found maximum regardless of worker count.
    std::vector<GridBest> blocks(per_axis);
    parallel_for(per_axis, [&](std::size_t i) {
        GridBest best;
        for (double pa2 : axis)
            for (double pb : axis)
                for (double pb2 : axis) {
                    const ChshSettings s{axis[i], pa2, pb, pb2};
                    const double v = chsh_value(law, s).s;
                    if (v > best.value) best = {v, s.as_array()};
                }
        blocks[i] = best;
    });
    GridBest grid;
    for (const auto& b : blocks)
        if (b.value > grid.value) grid = b;

    std::array<double, 4> x = grid.point;
    double fx = grid.value;
    double step = options.grid_step;
    std::size_t evals = 0;
    while (step >= options.refine_until && step >= options.step_floor && evals < options.max_evaluations) {
        bool moved = false;
        for (std::size_t d = 0; d < 4 && !moved && evals < options.max_evaluations; ++d) {
            for (double sign : {1.0, -1.0}) {
                auto trial = x;
                trial[d] += sign * step;
                const double v = chsh_value(law, ChshSettings::from_array(trial)).s;
                ++evals;
                if (v > fx) {
                    x = trial;
                    fx = v;
                    moved = true;
                    break;
                }
                if (evals >= options.max_evaluations) break;
            }
        }
        if (!moved) step *= 0.5;
    }
    return ChshOptimum{ChshSettings::from_array(x), ChshValue{fx}, ChshValue{grid.value}, step, evals};
}

}  // namespace corrwork
