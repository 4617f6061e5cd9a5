#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "corrwork/nonlocality.hpp"

using namespace corrwork;

namespace {

ChshSettings random_settings(RandomStream& rng) {
    auto draw = [&] { return (rng.next_unit() * 4.0 - 2.0) * kPi; };
    return {draw(), draw(), draw(), draw()};
}

}  // namespace

TEST_CASE("chsh_value at the standard angles") {
    const auto s = ChshSettings::standard();
    CHECK(std::abs(chsh_value(CorrelationLaw::classical(), s).s - 2.0) < 1e-12);
    CHECK(std::abs(chsh_value(CorrelationLaw::quantum(), s).s - 2.0 * std::sqrt(2.0)) < 1e-12);
    CHECK(chsh_value(CorrelationLaw::superquantum(), s).s == 4.0);
}

TEST_CASE("standard angles give three pi/4 and one 3pi/4 relative angle") {
    const auto rel = ChshSettings::standard().relative_angles();
    CHECK(rel[0].radians() == doctest::Approx(kPi / 4.0));
    CHECK(rel[1].radians() == doctest::Approx(kPi / 4.0));
    CHECK(rel[2].radians() == doctest::Approx(kPi / 4.0));
    CHECK(rel[3].radians() == doctest::Approx(3.0 * kPi / 4.0));
}

TEST_CASE("non-finite settings are rejected") {
    ChshSettings s = ChshSettings::standard();
    s.phi_b = std::nan("");
    CHECK_THROWS_AS(chsh_value(CorrelationLaw::quantum(), s), std::domain_error);
    CHECK_THROWS_AS(chsh_operator_norm(s), std::domain_error);
}

TEST_CASE("deterministic LHV enumeration always gives 2") {
    CHECK(lhv_deterministic_max(ChshSettings::standard()).s == 2.0);
    CHECK(lhv_deterministic_max(ChshSettings{0, 0, 0, 0}).s == 2.0);
    RandomStream rng(31);
    for (int i = 0; i < 100; ++i) REQUIRE(lhv_deterministic_max(random_settings(rng)).s == 2.0);
}

TEST_CASE("Jacobi eigenvalues of small known matrices") {
    const linalg::Matrix<2> a{{{2.0, 1.0}, {1.0, 2.0}}};
    const auto ea = linalg::jacobi_eigenvalues<2>(a);
    CHECK(ea.converged);
    CHECK(ea.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ea.values[1] == doctest::Approx(3.0).epsilon(1e-14));

    // Tridiagonal (2, -1) matrix: eigenvalues 2 - 2 cos(k pi / 5).
    linalg::Matrix<4> t{};
    for (int i = 0; i < 4; ++i) {
        t[i][i] = 2.0;
        if (i + 1 < 4) t[i][i + 1] = t[i + 1][i] = -1.0;
    }
    const auto et = linalg::jacobi_eigenvalues<4>(t);
    CHECK(et.converged);
    for (int k = 1; k <= 4; ++k) {
        CHECK(std::abs(et.values[k - 1] - (2.0 - 2.0 * std::cos(k * kPi / 5.0))) < 1e-12);
    }

    const linalg::Matrix<4> diag{{{-3, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 0}}};
    CHECK(linalg::jacobi_eigenvalues<4>(diag).sweeps == 0);
    CHECK(linalg::spectral_norm_symmetric<4>(diag) == 3.0);
}

TEST_CASE("planar observables square to the identity") {
    for (double phi : {0.0, 0.3, kPi / 2.0, -2.1}) {
        const auto a = planar_observable(phi);
        const auto sq = linalg::multiply<2>(a, a);
        CHECK(sq[0][0] == doctest::Approx(1.0));
        CHECK(sq[1][1] == doctest::Approx(1.0));
        CHECK(std::abs(sq[0][1]) < 1e-15);
    }
}

TEST_CASE("CHSH operator norm examples") {
    CHECK(std::abs(chsh_operator_norm(ChshSettings::standard()) - 2.0 * std::sqrt(2.0)) < 1e-9);
    CHECK(std::abs(chsh_operator_norm(ChshSettings{0, 0, 0, 0}) - 2.0) < 1e-9);
}

TEST_CASE("operator is symmetric and its square matches the commutator identity") {
    RandomStream rng(77);
    for (int i = 0; i < 200; ++i) {
        const auto s = random_settings(rng);
        const auto op = chsh_operator(s);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) REQUIRE(op[r][c] == doctest::Approx(op[c][r]));
        // Expanding B = A(B + B') + A'(B - B') gives B^2 = 4 I - [A,A'] (x) [B,B'],
        // with [A(x),A(y)] = 2 sin(y - x) ZX.
        const auto sq = linalg::multiply<4>(op, op);
        const double k = 4.0 * std::sin(s.phi_a_prime - s.phi_a) * std::sin(s.phi_b_prime - s.phi_b);
        const linalg::Matrix<2> zx{{{0.0, 1.0}, {-1.0, 0.0}}};
        const auto comm = linalg::kronecker(zx, zx);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                REQUIRE(std::abs(sq[r][c] - ((r == c ? 4.0 : 0.0) - k * comm[r][c])) < 1e-12);
    }
}

TEST_CASE("Tsirelson bound holds for 1000 random settings") {
    RandomStream rng(1000);
    for (int i = 0; i < 1000; ++i) {
        const auto s = random_settings(rng);
        const double norm = chsh_operator_norm(s);
        REQUIRE(norm <= 2.0 * std::sqrt(2.0) + 1e-9);
        REQUIRE(chsh_value(CorrelationLaw::quantum(), s).s <= norm + 1e-9);
        const double closed = 4.0 + 4.0 * std::abs(std::sin(s.phi_a - s.phi_a_prime) * std::sin(s.phi_b - s.phi_b_prime));
        REQUIRE(std::abs(norm * norm - closed) < 1e-9);
    }
}

TEST_CASE("maximize_chsh finds the known maxima") {
    const auto std_angles = ChshSettings::standard();
    SUBCASE("classical") {
        const auto law = CorrelationLaw::classical();
        const auto best = maximize_chsh(law);
        CHECK(std::abs(best.value.s - 2.0) < 1e-6);
        CHECK(best.value.s >= chsh_value(law, std_angles).s - 1e-15);
    }
    SUBCASE("quantum") {
        const auto law = CorrelationLaw::quantum();
        const auto best = maximize_chsh(law);
        CHECK(std::abs(best.value.s - 2.0 * std::sqrt(2.0)) < 1e-6);
        CHECK(best.value.s >= chsh_value(law, std_angles).s - 1e-15);
        CHECK(best.final_step < 1e-6);
        CHECK(best.refine_evaluations <= 10'000);
        for (int k = 0; k < 10; ++k) {
            const double offset = -3.0 + 0.7 * k;
            CHECK(std::abs(chsh_value(law, best.settings.rotated(offset)).s - best.value.s) < 1e-6);
        }
    }
    SUBCASE("superquantum") {
        const auto law = CorrelationLaw::superquantum();
        const auto best = maximize_chsh(law);
        CHECK(best.value.s == 4.0);
        CHECK(chsh_value(law, best.settings).s == 4.0);
        for (int k = 0; k < 10; ++k) {
            CHECK(std::abs(chsh_value(law, best.settings.rotated(0.37 * k - 1.0)).s - 4.0) < 1e-6);
        }
    }
}

TEST_CASE("maximize_chsh refines an off-grid optimum") {
    // Piecewise-linear -cos; a pi/7 grid cannot reach the pi/4 optimum.
    std::vector<TableKnot> knots;
    for (int k = 0; k <= 400; ++k) {
        const double t = kPi * k / 400.0;
        knots.push_back({t, -std::cos(t)});
    }
    const auto law = CorrelationLaw::tabulated(knots);
    ChshSearchOptions coarse;
    coarse.grid_step = kPi / 7.0;
    const auto best = maximize_chsh(law, coarse);
    CHECK(best.value.s > best.grid_value.s + 1e-3);
    CHECK(best.value.s == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-4));
}

TEST_CASE("maximize_chsh is deterministic") {
    ChshSearchOptions coarse;
    coarse.grid_step = kPi / 12.0;
    const auto a = maximize_chsh(CorrelationLaw::quantum(), coarse);
    const auto b = maximize_chsh(CorrelationLaw::quantum(), coarse);
    CHECK(a.settings.as_array() == b.settings.as_array());
    CHECK(a.value.s == b.value.s);
}
