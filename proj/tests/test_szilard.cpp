#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "corrwork/szilard.hpp"

using namespace corrwork;

namespace {

constexpr double kInfoHalfCorrelation = 0.130812035941136959129201806234;

// Golden-section maximization of W(eps, .) on (0, 1), independent of the
// analytic optimum.
double golden_section_argmax(double eps) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 1e-12, hi = 1.0 - 1e-12;
    auto w = [&](double x) { return (1.0 - eps) * std::log(2.0 * x) + eps * std::log(2.0 * (1.0 - x)); };
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    double wa = w(a), wb = w(b);
    while (hi - lo > 1e-12) {
        if (wa < wb) {
            lo = a;
            a = b;
            wa = wb;
            b = lo + inv_phi * (hi - lo);
            wb = w(b);
        } else {
            hi = b;
            b = a;
            wb = wa;
            a = hi - inv_phi * (hi - lo);
            wa = w(a);
        }
    }
    return 0.5 * (lo + hi);
}

struct ThreadsEnv {
    explicit ThreadsEnv(const char* value) { setenv("CORRWORK_THREADS", value, 1); }
    ~ThreadsEnv() { unsetenv("CORRWORK_THREADS"); }
};

}  // namespace

TEST_CASE("expected_work examples") {
    CHECK(std::abs(expected_work(0.0, 1.0 - 1e-12).kT_units - kLn2) < 1e-11);
    CHECK(expected_work(0.5, 0.5).kT_units == 0.0);
    CHECK(std::abs(expected_work(0.25, 0.75).kT_units - kInfoHalfCorrelation) < 1e-15);
}

TEST_CASE("expected_work domain errors") {
    CHECK_THROWS_AS(expected_work(0.1, 0.0), std::domain_error);
    CHECK_THROWS_AS(expected_work(0.1, 1.0), std::domain_error);
    CHECK_THROWS_AS(expected_work(0.6, 0.5), std::domain_error);
    CHECK_THROWS_AS(expected_work(-0.1, 0.5), std::domain_error);
}

TEST_CASE("optimal_partition matches a golden-section oracle") {
    const auto quarter = optimal_partition(0.25);
    CHECK(quarter.x_opt == 0.75);
    CHECK(std::abs(golden_section_argmax(0.25) - 0.75) < 1e-6);
    CHECK(std::abs(quarter.w_opt.kT_units - kInfoHalfCorrelation) < 1e-15);
    CHECK_FALSE(quarter.boundary);

    for (double eps : {0.01, 0.1, 0.2, 0.33, 0.45}) {
        CAPTURE(eps);
        CHECK(std::abs(golden_section_argmax(eps) - optimal_partition(eps).x_opt) < 1e-6);
    }

    const auto half = optimal_partition(0.5);
    CHECK(half.x_opt == 0.5);
    CHECK(half.w_opt.kT_units == 0.0);

    const auto perfect = optimal_partition(0.0);
    CHECK(perfect.boundary);
    CHECK(perfect.x_opt == 1.0);
    CHECK(perfect.w_opt.kT_units == kLn2);

    CHECK_THROWS_AS(optimal_partition(0.51), std::domain_error);
}

TEST_CASE("the optimum saturates the mutual-information bound") {
    for (int k = 1; k <= 10; ++k) {
        const double eps = 0.05 * k;
        const double bound = mutual_information(CorrelationValue(1.0 - 2.0 * eps)).value;
        CHECK(std::abs(optimal_partition(eps).w_opt.kT_units - bound) < 1e-12);
    }
}

TEST_CASE("expected work never exceeds ln 2 - h2(eps) on a 50x50 grid") {
    for (int i = 0; i < 50; ++i) {
        const double eps = 0.5 * i / 49.0;
        const double ceiling = kLn2 - binary_entropy(eps).value;
        for (int j = 0; j < 50; ++j) {
            const double x = (j + 1) / 51.0;
            REQUIRE(expected_work(eps, x).kT_units <= ceiling + 1e-12);
        }
    }
}

TEST_CASE("W(x) is concave for fixed eps") {
    const double h = 1e-3;
    for (double eps : {0.0, 0.05, 0.25, 0.5}) {
        for (int j = 2; j < 998; ++j) {
            const double x = j * 1e-3;
            const double second = expected_work(eps, x + h).kT_units - 2.0 * expected_work(eps, x).kT_units +
                                  expected_work(eps, x - h).kT_units;
            REQUIRE(second <= 0.0);
        }
    }
}

TEST_CASE("error probability from a correlator") {
    CHECK(error_probability(CorrelationValue(-1.0)) == 0.0);
    CHECK(error_probability(CorrelationValue(0.0)) == 0.5);
    CHECK(error_probability(CorrelationValue(-0.5)) == 0.25);
    CHECK(error_probability(CorrelationValue(0.5)) == 0.25);
}

TEST_CASE("EngineConfig validation") {
    EngineConfig ok{0.1, 0.9, 10, 1};
    CHECK_NOTHROW(ok.validate());
    CHECK_THROWS_AS((EngineConfig{0.6, 0.5, 10, 1}.validate()), std::domain_error);
    CHECK_THROWS_AS((EngineConfig{0.1, 1.0, 10, 1}.validate()), std::domain_error);
    CHECK_THROWS_AS((EngineConfig{0.1, 0.0, 10, 1}.validate()), std::domain_error);
    CHECK_THROWS_AS((EngineConfig{0.1, 0.5, 0, 1}.validate()), std::domain_error);
    CHECK_NOTHROW((EngineConfig{0.0, 1.0, 10, 1}.validate()));
}

TEST_CASE("perfect correlation has zero variance") {
    const auto r = simulate({0.0, 1.0 - 1e-12, 1000, 5});
    CHECK(r.n == 1000);
    CHECK(r.std_error == 0.0);
    CHECK(std::abs(r.mean_work.kT_units - kLn2) < 1e-11);

    const auto wall = simulate({0.0, 1.0, 1000, 5});
    CHECK(wall.mean_work.kT_units == kLn2);
}

TEST_CASE("Monte Carlo at eps = 1/4 lands on the closed form") {
    const auto opt = simulate({0.25, 0.75, 1'000'000, 7});
    CHECK(opt.n == 1'000'000);
    CHECK(std::abs(opt.mean_work.kT_units - kInfoHalfCorrelation) < 3.0 * opt.std_error);

    // Symmetric partition: both branches are ln 1 = 0.
    const auto sym = simulate({0.25, 0.5, 1'000'000, 7});
    CHECK(sym.mean_work.kT_units == 0.0);
    CHECK(sym.mean_work.kT_units < opt.mean_work.kT_units - 0.13);
}

TEST_CASE("Monte Carlo stays within 4 standard errors for random configurations") {
    RandomStream rng(2718);
    for (int k = 0; k < 10; ++k) {
        EngineConfig cfg;
        cfg.epsilon = 0.01 + 0.49 * rng.next_unit();
        cfg.partition_fraction = 0.02 + 0.96 * rng.next_unit();
        cfg.trials = 1'000'000;
        cfg.seed = rng.next_u64();
        const auto r = simulate(cfg);
        const double closed = expected_work(cfg.epsilon, cfg.partition_fraction).kT_units;
        CAPTURE(cfg.epsilon);
        CAPTURE(cfg.partition_fraction);
        CHECK(std::abs(r.mean_work.kT_units - closed) < 4.0 * r.std_error);
        CHECK(r.mean_work.kT_units <= kLn2 - binary_entropy(cfg.epsilon).value + 3.0 * r.std_error);
    }
}

TEST_CASE("simulation is deterministic and independent of the thread count") {
    const EngineConfig cfg{0.3, 0.6, 200'003, 99};
    CycleResult single, many;
    {
        ThreadsEnv env("1");
        single = simulate(cfg);
    }
    {
        ThreadsEnv env("4");
        many = simulate(cfg);
    }
    CHECK(single.mean_work.kT_units == many.mean_work.kT_units);
    CHECK(single.std_error == many.std_error);
    CHECK(single.n == 200'003);

    const auto again = simulate(cfg);
    CHECK(again.mean_work.kT_units == single.mean_work.kT_units);

    EngineConfig other = cfg;
    other.seed = 100;
    CHECK(simulate(other).mean_work.kT_units != single.mean_work.kT_units);
}

TEST_CASE("fewer trials than shards still runs every trial") {
    const auto r = simulate({0.2, 0.7, 3, 1});
    CHECK(r.n == 3);
}
