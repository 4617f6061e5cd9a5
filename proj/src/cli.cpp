#include "corrwork/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "corrwork/energetics.hpp"
#include "corrwork/errors.hpp"
#include "corrwork/information.hpp"
#include "corrwork/nonlocality.hpp"
#include "corrwork/report.hpp"
#include "corrwork/szilard.hpp"

namespace corrwork::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kLawNames = "classical, quantum, superquantum, table:<path>";

double parse_real(std::string_view text, std::string_view what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
    }
    return v;
}

ChshSettings parse_settings(const std::string& text) {
    if (text.empty()) return ChshSettings::standard();
    std::vector<double> v;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) v.push_back(parse_angle(part));
    if (v.size() != 4) {
        throw UsageError("--angles expects four comma-separated values: phi_a,phi_a',phi_b,phi_b'");
    }
    return ChshSettings{v[0], v[1], v[2], v[3]};
}

Json settings_json(const ChshSettings& s) {
    Json j;
    j["phi_a"] = round_significant(s.phi_a);
    j["phi_a_prime"] = round_significant(s.phi_a_prime);
    j["phi_b"] = round_significant(s.phi_b);
    j["phi_b_prime"] = round_significant(s.phi_b_prime);
    return j;
}

std::optional<double> checked_temperature(const std::optional<double>& t) {
    if (t && !(*t > 0.0 && std::isfinite(*t))) {
        throw UsageError("--temperature must be a positive number of kelvin");
    }
    return t;
}

void add_work(Json& j, const std::string& key, double kT, const std::optional<double>& temperature) {
    j[key + "_kT"] = round_significant(kT);
    if (temperature) {
        j[key + "_joules"] = round_significant(WorkQuantity{kT, temperature}.joules().value());
    }
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write '" + path + "'");
    return f;
}

void finish_output(std::ofstream& f, const std::string& path) {
    f.flush();
    if (!f) throw IoError("failed writing '" + path + "'");
}

struct Options {
    std::uint64_t seed = kDefaultSeed;
    std::string law;
    std::string angles;
    std::optional<double> temperature;

    std::string theta_min = "0";
    std::string theta_max = "pi";
    std::size_t steps = 181;
    std::string out_path;

    std::string anchor = "0";
    DecayWindow window;

    std::optional<double> epsilon;
    std::optional<double> correlation;
    std::optional<double> x;
    bool optimal = false;
    std::uint64_t trials = 100'000;
    std::size_t shards = 16;
};

int cmd_sweep(const Options& o, std::ostream& out) {
    const auto law = parse_law(o.law);
    const auto table = make_sweep(law, o.law, parse_angle(o.theta_min), parse_angle(o.theta_max), o.steps);
    if (o.out_path.empty() || o.out_path == "-") {
        write_sweep_csv(table, out);
        return kSuccess;
    }
    auto f = open_output(o.out_path);
    write_sweep_csv(table, f);
    finish_output(f, o.out_path);
    Json meta = sweep_metadata(table);
    meta["out"] = o.out_path;
    emit(out, meta);
    return kSuccess;
}

int cmd_chsh(const Options& o, std::ostream& out) {
    const auto law = parse_law(o.law);
    const auto settings = parse_settings(o.angles);
    Json j;
    j["law"] = o.law;
    j["settings"] = settings_json(settings);
    j["relative_angles"] = Json::array();
    j["correlations"] = Json::array();
    for (const Angle a : settings.relative_angles()) {
        j["relative_angles"].push_back(round_significant(a.radians()));
        j["correlations"].push_back(round_significant(law.evaluate(a).value()));
    }
    j["s"] = round_significant(chsh_value(law, settings).s);
    j["lhv_max"] = round_significant(lhv_deterministic_max(settings).s);
    j["operator_norm"] = round_significant(chsh_operator_norm(settings));
    j["bounds"] = {{"local", kClassicalBound},
                   {"tsirelson", round_significant(kTsirelsonBound)},
                   {"algebraic", kAlgebraicBound}};
    emit(out, j);
    return kSuccess;
}

int cmd_optimize(const Options& o, std::ostream& out) {
    const auto law = parse_law(o.law);
    const auto best = maximize_chsh(law);
    Json j;
    j["law"] = o.law;
    j["value"] = round_significant(best.value.s);
    j["grid_value"] = round_significant(best.grid_value.s);
    j["settings"] = settings_json(best.settings);
    j["final_step"] = round_significant(best.final_step);
    j["refine_evaluations"] = best.refine_evaluations;
    emit(out, j);
    return kSuccess;
}

int cmd_energetic(const Options& o, std::ostream& out) {
    const auto law = parse_law(o.law);
    const auto settings = parse_settings(o.angles);
    const auto temperature = checked_temperature(o.temperature);
    Json j;
    j["law"] = o.law;
    j["settings"] = settings_json(settings);
    j["mutual_information_nats"] = Json::array();
    j["mutual_information_bits"] = Json::array();
    for (const Angle a : settings.relative_angles()) {
        const Nats i = mutual_information_law(law, a);
        j["mutual_information_nats"].push_back(round_significant(i.value));
        j["mutual_information_bits"].push_back(round_significant(i.bits()));
    }
    add_work(j, "s_w", energetic_chsh(law, settings).kT_units, temperature);
    emit(out, j);
    return kSuccess;
}

int cmd_hierarchy(const Options& o, std::ostream& out) {
    const auto settings = parse_settings(o.angles);
    const auto temperature = checked_temperature(o.temperature);
    const auto h = hierarchy_report(settings);
    Json j;
    j["settings"] = settings_json(settings);
    add_work(j, "classical", h.classical.kT_units, temperature);
    add_work(j, "quantum", h.quantum.kT_units, temperature);
    add_work(j, "superquantum", h.superquantum.kT_units, temperature);
    j["hierarchy"] = h.strictly_increasing() ? "strict" : "not_strict";
    emit(out, j);
    return kSuccess;
}

int cmd_robustness(const Options& o, std::ostream& out) {
    const auto law = parse_law(o.law);
    const double anchor_raw = parse_angle(o.anchor);
    const Angle anchor = Angle::canonicalize(anchor_raw);
    if (anchor.radians() != 0.0 && anchor.radians() != kPi) {
        throw UsageError("--anchor must be 0 or pi");
    }
    const auto report = fit_decay_exponent(law, anchor, o.window);
    Json j;
    j["law"] = o.law;
    j["anchor"] = round_significant(anchor.radians());
    switch (report.shape) {
        case DecayShape::PowerLaw: j["shape"] = "power_law"; break;
        case DecayShape::Flat: j["shape"] = "flat"; break;
        case DecayShape::Irregular: j["shape"] = "irregular"; break;
    }
    if (report.fit) {
        j["fit"] = {{"exponent", round_significant(report.fit->exponent)},
                    {"prefactor", round_significant(report.fit->prefactor)},
                    {"r_squared", round_significant(report.fit->r_squared)},
                    {"window", {round_significant(report.fit->window_min), round_significant(report.fit->window_max)}}};
    } else {
        j["fit"] = nullptr;
    }
    j["samples"] = Json::array();
    for (const auto& s : deficit_samples(law, anchor, o.window)) {
        j["samples"].push_back({{"delta_theta", round_significant(s.delta_theta)},
                                {"correlation_deficit", round_significant(s.correlation_deficit)},
                                {"information_deficit", round_significant(s.information_deficit)}});
    }
    emit(out, j);
    return kSuccess;
}

int cmd_szilard(const Options& o, std::ostream& out) {
    if (o.epsilon.has_value() == o.correlation.has_value()) {
        throw UsageError("give exactly one of --epsilon or --correlation");
    }
    if (o.x.has_value() == o.optimal) {
        throw UsageError("give exactly one of --x or --optimal");
    }
    double eps = 0.0;
    if (o.epsilon) {
        eps = *o.epsilon;
    } else {
        if (!(*o.correlation >= -1.0 && *o.correlation <= 1.0)) {
            throw UsageError("--correlation must lie in [-1, 1]");
        }
        eps = error_probability(CorrelationValue(*o.correlation));
    }
    if (eps > 0.5) {
        throw UsageError("--epsilon above 1/2: relabel the bit so it predicts the other side");
    }
    if (!(eps >= 0.0)) {
        throw UsageError("--epsilon must lie in [0, 1/2]");
    }
    const auto temperature = checked_temperature(o.temperature);

    EngineConfig cfg;
    cfg.epsilon = eps;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.shards = o.shards;
    bool boundary = false;
    if (o.optimal) {
        const auto opt = optimal_partition(eps);
        cfg.partition_fraction = opt.x_opt;
        boundary = opt.boundary;
    } else {
        cfg.partition_fraction = *o.x;
    }
    try {
        cfg.validate();
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
    const auto result = simulate(cfg);
    const double bound = kLn2 - binary_entropy(eps).value;
    const double closed = boundary ? kLn2 : expected_work(eps, cfg.partition_fraction).kT_units;

    Json j;
    j["epsilon"] = round_significant(eps);
    j["partition_fraction"] = round_significant(cfg.partition_fraction);
    j["optimal"] = o.optimal;
    j["boundary_optimum"] = boundary;
    j["trials"] = result.n;
    j["seed"] = cfg.seed;
    j["shards"] = cfg.shards;
    add_work(j, "mean_work", result.mean_work.kT_units, temperature);
    j["std_error"] = round_significant(result.std_error);
    add_work(j, "expected_work", closed, temperature);
    add_work(j, "bound", bound, temperature);
    j["bound_bits"] = round_significant(Nats{bound}.bits());
    if (temperature) j["temperature_kelvin"] = *temperature;
    emit(out, j);
    return kSuccess;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const auto report = run_verification(o.seed);
    if (!o.out_path.empty() && o.out_path != "-") {
        auto f = open_output(o.out_path);
        f << report.json.dump(2) << '\n';
        finish_output(f, o.out_path);
    }
    emit(out, report.json);
    return report.passed() ? kSuccess : kVerificationFailed;
}

}  // namespace

CorrelationLaw parse_law(std::string_view name) {
    if (name == "classical") return CorrelationLaw::classical();
    if (name == "quantum") return CorrelationLaw::quantum();
    if (name == "superquantum") return CorrelationLaw::superquantum();
    constexpr std::string_view prefix = "table:";
    if (name.starts_with(prefix) && name.size() > prefix.size()) {
        return load_tabulated_csv(std::string(name.substr(prefix.size())));
    }
    throw UsageError("unknown law '" + std::string(name) + "'; valid names: " + std::string(kLawNames));
}

double parse_angle(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    const auto pi_pos = text.find("pi");
    if (pi_pos == std::string_view::npos) {
        return parse_real(text, "angle");
    }
    std::string_view coeff = text.substr(0, pi_pos);
    std::string_view rest = text.substr(pi_pos + 2);
    if (!coeff.empty() && coeff.back() == '*') coeff.remove_suffix(1);
    double factor = 1.0;
    if (coeff == "-") {
        factor = -1.0;
    } else if (!coeff.empty() && coeff != "+") {
        factor = parse_real(coeff.front() == '+' ? coeff.substr(1) : coeff, "angle");
    }
    double divisor = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw UsageError("invalid angle: '" + std::string(text) + "'");
        divisor = parse_real(rest.substr(1), "angle");
        if (divisor == 0.0) throw UsageError("invalid angle: division by zero");
    }
    return factor * kPi / divisor;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Correlation laws, CHSH parameters and correlation-fuelled work extraction", "corrwork"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));
    Options o;
    app.add_option("--seed", o.seed, "Seed for every randomized step")->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "Tabulate E, I and W over a grid of relative angles (CSV)");
    sweep->add_option("--law", o.law, std::string("Correlation law: ") + std::string(kLawNames))->required();
    sweep->add_option("--theta-min", o.theta_min, "Grid start (radians or multiple of pi)")->capture_default_str();
    sweep->add_option("--theta-max", o.theta_max, "Grid end")->capture_default_str();
    sweep->add_option("--steps", o.steps, "Number of grid points")->capture_default_str();
    sweep->add_option("--out", o.out_path, "CSV path; stdout when omitted");

    auto* chsh = app.add_subcommand("chsh", "CHSH parameter, LHV maximum and operator norm");
    chsh->add_option("--law", o.law, "Correlation law")->required();
    chsh->add_option("--angles", o.angles, "phi_a,phi_a',phi_b,phi_b' (default: standard angles)");

    auto* optimize = app.add_subcommand("optimize-chsh", "Maximize the CHSH parameter over all angles");
    optimize->add_option("--law", o.law, "Correlation law")->required();

    auto* energetic = app.add_subcommand("energetic-chsh", "Energetic CHSH parameter S_W");
    energetic->add_option("--law", o.law, "Correlation law")->required();
    energetic->add_option("--angles", o.angles, "phi_a,phi_a',phi_b,phi_b'");
    energetic->add_option("--temperature", o.temperature, "Kelvin; adds joule values");

    auto* hierarchy = app.add_subcommand("hierarchy", "S_W for all three analytic laws");
    hierarchy->add_option("--angles", o.angles, "phi_a,phi_a',phi_b,phi_b'");
    hierarchy->add_option("--temperature", o.temperature, "Kelvin; adds joule values");

    auto* robustness = app.add_subcommand("robustness", "Misalignment decay exponent of 1 - |E|");
    robustness->add_option("--law", o.law, "Correlation law")->required();
    robustness->add_option("--anchor", o.anchor, "0 or pi")->capture_default_str();
    robustness->add_option("--window-min", o.window.min, "Smallest misalignment")->capture_default_str();
    robustness->add_option("--window-max", o.window.max, "Largest misalignment")->capture_default_str();
    robustness->add_option("--points", o.window.points, "Geometric grid size")->capture_default_str();

    auto* szilard = app.add_subcommand("szilard", "Monte Carlo Szilard cycle fuelled by a correlated bit");
    szilard->add_option("--epsilon", o.epsilon, "Probability the memory bit mispredicts the side");
    szilard->add_option("--correlation", o.correlation, "Correlator E; epsilon = (1 - |E|) / 2");
    szilard->add_option("--x", o.x, "Final partition fraction on the predicted side");
    szilard->add_flag("--optimal", o.optimal, "Use the optimal partition 1 - epsilon");
    szilard->add_option("--trials", o.trials, "Number of cycles")->capture_default_str()->check(CLI::PositiveNumber);
    szilard->add_option("--shards", o.shards, "Independent random streams")->capture_default_str()->check(CLI::PositiveNumber);
    szilard->add_option("--temperature", o.temperature, "Kelvin; adds joule values");

    auto* verify = app.add_subcommand("verify", "Run the invariant suites and print a JSON report");
    verify->add_option("--out", o.out_path, "Also write the report to this path");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (sweep->parsed()) return cmd_sweep(o, out);
        if (chsh->parsed()) return cmd_chsh(o, out);
        if (optimize->parsed()) return cmd_optimize(o, out);
        if (energetic->parsed()) return cmd_energetic(o, out);
        if (hierarchy->parsed()) return cmd_hierarchy(o, out);
        if (robustness->parsed()) return cmd_robustness(o, out);
        if (szilard->parsed()) return cmd_szilard(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
    err << "error: no subcommand\n";
    return kUsageError;
}

}  // namespace corrwork::cli
