#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "corrwork/energetics.hpp"

using namespace corrwork;

namespace {

// mpmath, 30 digits.
constexpr double kSwClassical = 0.261624071882273918258403612467;   // 2[ln 2 - h2(1/4)]
constexpr double kSwQuantum = 0.553303299720515717370808039043;     // 2[ln 2 - h2(sin^2(pi/8))]
constexpr double kSwSuperquantum = 1.38629436111989061883446424292; // 2 ln 2
constexpr double kSwGap = 0.291679227838241799112404426576;         // quantum - classical
constexpr double kInfoHalfCorrelation = 0.130812035941136959129201806234;

}  // namespace

TEST_CASE("ledger examples") {
    const auto cyclic = ledger(0.0, -kLn2);
    CHECK(cyclic.extractable_work() == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(ledger(0.0, 0.0).extractable_work() == 0.0);
    CHECK(ledger(-0.3, -0.2).extractable_work() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(ledger(std::nan(""), 0.0), std::domain_error);
}

TEST_CASE("ledger identity holds for random entries") {
    RandomStream rng(55);
    for (int i = 0; i < 1000; ++i) {
        const double df = (rng.next_unit() - 0.5) * 10.0;
        const double di = (rng.next_unit() - 0.5) * 10.0;
        const auto entry = ledger(df, di);
        REQUIRE(std::abs(entry.delta_F - (entry.work_on_system - entry.delta_I)) < 1e-12);
    }
}

TEST_CASE("work_from_correlation saturates the bound") {
    CHECK(work_from_correlation(Nats{kLn2}).kT_units == kLn2);
    CHECK(work_from_correlation(Nats{0.0}).kT_units == 0.0);
    CHECK(work_from_correlation(Nats{kInfoHalfCorrelation}).kT_units == kInfoHalfCorrelation);
    CHECK_THROWS_AS(work_from_correlation(Nats{-1e-9}), std::domain_error);
    CHECK_THROWS_AS(work_from_correlation(Nats{0.7}), std::domain_error);
}

TEST_CASE("joules only appear with a temperature") {
    WorkQuantity w{kLn2, std::nullopt};
    CHECK_FALSE(w.joules().has_value());
    w.temperature_kelvin = 300.0;
    CHECK(w.joules().value() == doctest::Approx(2.87097888507872379e-21).epsilon(1e-12));
}

TEST_CASE("energetic CHSH at the standard angles") {
    const auto s = ChshSettings::standard();
    CHECK(std::abs(energetic_chsh(CorrelationLaw::classical(), s).kT_units - kSwClassical) < 1e-9);
    CHECK(std::abs(energetic_chsh(CorrelationLaw::quantum(), s).kT_units - kSwQuantum) < 1e-9);
    CHECK(std::abs(energetic_chsh(CorrelationLaw::superquantum(), s).kT_units - kSwSuperquantum) < 1e-9);
}

TEST_CASE("hierarchy at the standard angles is strict") {
    const auto h = hierarchy_report(ChshSettings::standard());
    CHECK(h.strictly_increasing());
    CHECK(std::abs(h.quantum.kT_units - h.classical.kT_units - kSwGap) < 1e-9);
    const double p_q = std::pow(std::sin(kPi / 8.0), 2);
    CHECK(p_q == doctest::Approx((2.0 - std::sqrt(2.0)) / 4.0));
    CHECK(p_q < 0.25);
    CHECK(binary_entropy(p_q).value < binary_entropy(0.25).value);
}

TEST_CASE("hierarchy is not strict when all angles coincide") {
    const auto h = hierarchy_report(ChshSettings{0.4, 0.4, 0.4, 0.4});
    CHECK(h.classical.kT_units == doctest::Approx(2.0 * kLn2));
    CHECK(h.quantum.kT_units == doctest::Approx(2.0 * kLn2));
    CHECK(h.superquantum.kT_units == doctest::Approx(2.0 * kLn2));
    CHECK_FALSE(h.strictly_increasing());
}

TEST_CASE("four-term S_W equals the reduced 3 I(pi/4) - I(3 pi/4) form") {
    const Angle q = Angle::canonicalize(kPi / 4.0);
    const Angle tq = Angle::canonicalize(3.0 * kPi / 4.0);
    for (const auto& law : {CorrelationLaw::classical(), CorrelationLaw::quantum(), CorrelationLaw::superquantum()}) {
        CAPTURE(law.name());
        const double reduced = std::abs(3.0 * mutual_information_law(law, q).value - mutual_information_law(law, tq).value);
        CHECK(std::abs(energetic_chsh(law, ChshSettings::standard()).kT_units - reduced) < 1e-12);
    }
    for (const auto& law : {CorrelationLaw::classical(), CorrelationLaw::quantum()}) {
        CHECK(std::abs(mutual_information_law(law, q).value - mutual_information_law(law, tq).value) < 1e-15);
    }
}

TEST_CASE("classical deficit decays linearly with prefactor 2/pi") {
    for (double anchor : {0.0, kPi}) {
        const auto r = fit_decay_exponent(CorrelationLaw::classical(), Angle::canonicalize(anchor));
        REQUIRE(r.shape == DecayShape::PowerLaw);
        REQUIRE(r.fit.has_value());
        CHECK(std::abs(r.fit->exponent - 1.0) < 0.001);
        CHECK(std::abs(r.fit->prefactor - 2.0 / kPi) < 1e-3);
        CHECK(r.fit->r_squared >= 0.999);
        CHECK(r.fit->window_min == 1e-3);
        CHECK(r.fit->window_max == 1e-1);
    }
}

TEST_CASE("quantum deficit decays quadratically") {
    for (double anchor : {0.0, kPi}) {
        const auto r = fit_decay_exponent(CorrelationLaw::quantum(), Angle::canonicalize(anchor));
        REQUIRE(r.fit.has_value());
        CHECK(std::abs(r.fit->exponent - 2.0) < 0.005);
        CHECK(r.fit->prefactor == doctest::Approx(0.5).epsilon(1e-2));
        CHECK(r.fit->r_squared >= 0.999);
    }
}

TEST_CASE("superquantum deficit is flat") {
    const auto r = fit_decay_exponent(CorrelationLaw::superquantum(), Angle::canonicalize(0.0));
    CHECK(r.shape == DecayShape::Flat);
    CHECK_FALSE(r.fit.has_value());
}

TEST_CASE("robustness anchor must be 0 or pi") {
    CHECK_THROWS_AS(fit_decay_exponent(CorrelationLaw::quantum(), Angle::canonicalize(1.0)), std::domain_error);
    CHECK_THROWS_AS(deficit_samples(CorrelationLaw::quantum(), Angle::canonicalize(kPi / 2.0)), std::domain_error);
}

TEST_CASE("a curve with no power law is reported irregular") {
    // Deficit jumps from 0.2 to 0.01 inside the window: no straight log-log line.
    const auto law = CorrelationLaw::tabulated({{0.0, -0.8}, {0.01, -0.8}, {0.0100001, -0.99}, {kPi, 1.0}});
    const auto r = fit_decay_exponent(law, Angle::canonicalize(0.0));
    CHECK(r.shape == DecayShape::Irregular);
    CHECK_FALSE(r.fit.has_value());
    CHECK(r.attempted_r_squared < 0.999);
}

TEST_CASE("deficit samples carry the information deficit too") {
    const auto samples = deficit_samples(CorrelationLaw::classical(), Angle::canonicalize(0.0));
    REQUIRE(samples.size() == 25);
    CHECK(samples.front().delta_theta == doctest::Approx(1e-3));
    CHECK(samples.back().delta_theta == doctest::Approx(1e-1));
    for (const auto& s : samples) {
        CHECK(s.correlation_deficit == doctest::Approx(2.0 * s.delta_theta / kPi).epsilon(1e-10));
        CHECK(s.information_deficit == doctest::Approx(binary_entropy(s.delta_theta / kPi).value).epsilon(1e-10));
    }
}
