#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "corrwork/correlation.hpp"

namespace corrwork {

inline constexpr std::string_view kToolName = "corrwork";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// printf("%.10g")
std::string format_number(double v);

/// v rounded to 10 significant digits, so JSON output matches the CSV text.
double round_significant(double v);

struct SweepRow {
    double theta = 0.0;
    double e = 0.0;
    double i_nats = 0.0;
    double w_kT = 0.0;
};

struct SweepTable {
    std::string law_name;
    double theta_min = 0.0;
    double theta_max = kPi;
    std::size_t steps = 0;
    std::string version{kToolVersion};
    std::vector<SweepRow> rows;
};

/// Uniform grid theta_k = theta_min + (theta_max - theta_min) * k / (steps - 1).
/// Throws std::invalid_argument unless 0 <= theta_min < theta_max <= pi and
/// steps >= 2.
SweepTable make_sweep(const CorrelationLaw& law, std::string law_name, double theta_min, double theta_max,
                      std::size_t steps);

/// Header `theta,e,i_nats,w_kT`, LF line endings.
void write_sweep_csv(const SweepTable& table, std::ostream& out);

/// Throws std::runtime_error naming the offending line.
std::vector<SweepRow> parse_sweep_csv(std::istream& in);

/// Checks ordering and i_nats = ln 2 - h2((1 + e) / 2) row by row. Returns a
/// description of each violation; empty means valid.
std::vector<std::string> validate_sweep_rows(const std::vector<SweepRow>& rows, double tolerance);

nlohmann::ordered_json sweep_metadata(const SweepTable& table);

/// One measured-versus-expected comparison in the verification report.
struct Check {
    enum class Relation { Equal, AtMost, AtLeast, Holds };

    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    Relation relation = Relation::Equal;
    bool passed = false;
};

struct Suite {
    std::string name;
    std::vector<Check> checks;

    bool passed() const noexcept;
};

struct VerificationReport {
    std::uint64_t seed = 0;
    std::vector<Suite> suites;
    nlohmann::ordered_json json;

    bool passed() const noexcept;
};

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Runs the seven invariant suites (chsh, lhv, tsirelson, mutual_information,
/// energetic_chsh, robustness, szilard). Pure apart from the returned report.
VerificationReport run_verification(std::uint64_t seed = kDefaultSeed);

}  // namespace corrwork
