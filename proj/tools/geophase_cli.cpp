// geophase: command-line front end.
//
// Exit status: 0 success, 1 validation or numerical failure, 2 bad input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "geophase/dressed.hpp"
#include "geophase/dynamics.hpp"
#include "geophase/field_model.hpp"
#include "geophase/gauge.hpp"
#include "geophase/perturbation.hpp"
#include "geophase/sensitivity.hpp"
#include "geophase/sweep.hpp"
#include "geophase/validation.hpp"

namespace {

using namespace geophase;
using nlohmann::ordered_json;

constexpr double kDegree = kPi / 180.0;

struct CommonArgs {
    std::optional<double> theta_deg;
    std::optional<double> omega;
    std::optional<double> b;
    std::optional<double> c;
    std::string config_path;
    std::string format = "csv";
    std::string out_path;
    std::uint64_t seed = 7;
    unsigned threads = 0;
};

void add_field_flags(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--theta-deg", a.theta_deg, "cone half-angle in degrees (57.2958 = 1 rad)");
    cmd->add_option("--omega", a.omega, "rotation frequency");
    cmd->add_option("--b", a.b, "magnetic splitting strength");
    cmd->add_option("--c", a.c, "quadrupole coupling strength");
}

void add_output_flags(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config_path, "JSON config file; flags override its values");
    cmd->add_option("--format", a.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", a.out_path, "write to this file instead of stdout");
    cmd->add_option("--seed", a.seed, "random seed (recorded in the output header)");
    cmd->add_option("--threads", a.threads, "worker threads, 0 = all cores");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ordered_json config_document(const CommonArgs& a) {
    if (a.config_path.empty()) return ordered_json::object();
    try {
        return ordered_json::parse(read_file(a.config_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
}

FieldConfig resolve_config(const CommonArgs& a, FieldConfig defaults = {}) {
    FieldConfig config = defaults;
    if (!a.config_path.empty()) config = field_config_from_json(read_file(a.config_path), config);
    if (a.theta_deg) config.theta = *a.theta_deg * kDegree;
    if (a.omega) config.omega = *a.omega;
    if (a.b) config.b = *a.b;
    if (a.c) config.c = *a.c;
    config.validate();
    return config;
}

ordered_json config_meta(const FieldConfig& config) { return ordered_json::parse(to_json(config)); }

void emit(const Table& table, const CommonArgs& a) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!a.out_path.empty()) {
        file.open(a.out_path, std::ios::binary);
        if (!file) throw InputError("cannot open output file " + a.out_path);
        out = &file;
    }
    if (a.format == "json")
        write_json(table, *out);
    else
        write_csv(table, *out);
    out->flush();
    if (!*out) throw std::runtime_error("failed to write output");
}

Table single_row(std::string name, ordered_json meta, std::vector<std::string> columns, std::vector<Cell> row) {
    Table t;
    t.name = std::move(name);
    meta["command"] = t.name;
    t.meta_json = meta.dump();
    t.columns = std::move(columns);
    t.rows.push_back(std::move(row));
    return t;
}

DressingMode parse_mode(const std::string& text) {
    if (text == "co") return DressingMode::CoRotating;
    if (text == "counter") return DressingMode::CounterRotating;
    throw InputError("mode must be 'co' or 'counter'");
}

Table cmd_gauge(const CommonArgs& a) {
    const FieldConfig config = resolve_config(a);
    const GaugeMatrix g32 = gauge_matrix_analytic(Subspace::ThreeHalves, config.theta);
    const GaugeMatrix g12 = gauge_matrix_analytic(Subspace::OneHalf, config.theta);
    return single_row("gauge", {{"config", config_meta(config)}},
                      {"theta_rad", "x", "gauge_exact", "eigengauge_plus", "eigengauge_minus", "abelian_limit",
                       "gamma_three_halves", "gamma_one_half_diag", "gamma_one_half_offdiag"},
                      {config.theta, config.x(), gauge_exact(config.x(), config.theta), g12.eigengauges[0],
                       g12.eigengauges[1], -0.5 * std::cos(config.theta),
                       g32.matrix(0, 0), g12.matrix(0, 0), g12.matrix(0, 1)});
}

Table cmd_dress(const CommonArgs& a, const std::string& mode_text) {
    const FieldConfig config = resolve_config(a);
    const DressingMode mode = parse_mode(mode_text);
    const DressedSolution d = dress(config.omega, config.b, config.theta, mode);
    return single_row("dress", {{"config", config_meta(config)}, {"mode", to_string(mode)}},
                      {"omega", "b", "theta_rad", "x", "big_lambda", "lambda", "lambda_companion", "gauge",
                       "omega_plus", "omega_minus"},
                      {d.omega, d.b, d.theta, d.x, d.big_lambda, d.lambda, d.lambda_companion, d.gauge,
                       d.dressing_frequencies[0], d.dressing_frequencies[1]});
}

Table cmd_simulate(const CommonArgs& a, int cycles, long steps, const std::string& regime_text) {
    const FieldConfig config = resolve_config(a);
    Regime regime;
    if (regime_text == "non_abelian")
        regime = Regime::NonAbelian;
    else if (regime_text == "abelian")
        regime = Regime::Abelian;
    else
        throw InputError("regime must be 'non_abelian' or 'abelian'");
    if (cycles < 1) throw InputError("cycles must be at least 1");
    if (steps == 0) steps = recommended_full_steps(config, regime, cycles);

    const LabHamiltonian h(config, regime);
    const PropagatorResult run = propagate_full(config, regime, cycles, steps);
    const PhaseExtraction phases = extract_phases(run, h);
    for (const auto& w : run.warnings) std::cerr << "warning: " << w << '\n';

    Table t;
    t.name = "simulate";
    ordered_json meta{{"command", "simulate"},
                      {"config", config_meta(config)},
                      {"regime", to_string(regime)},
                      {"cycles", cycles},
                      {"steps", steps},
                      {"estimated_error", run.estimated_error},
                      {"unitarity_error", run.unitarity_error},
                      {"leakage", phases.leakage},
                      {"warnings", run.warnings}};
    t.meta_json = meta.dump();
    t.columns = {"subspace", "state", "total_phase", "dynamical_phase", "geometric_phase", "winding",
                 "unwrapped_geometric", "unwrapped_geometric_over_2pi"};
    auto add = [&t](const char* subspace, const PhaseResult& p) {
        t.rows.push_back({std::string(subspace), p.state_label, p.total_phase, p.dynamical_phase, p.geometric_phase,
                          static_cast<double>(p.winding), p.unwrapped_geometric(), p.unwrapped_geometric() / kTwoPi});
    };
    for (const auto& p : phases.three_halves) add("pm3/2", p);
    for (const auto& p : phases.one_half) add("pm1/2", p);
    return t;
}

Table cmd_perturb(const CommonArgs& a) {
    const FieldConfig config = resolve_config(a);
    const double x = config.x();
    Table t;
    t.name = "perturb";
    const SingularityLocus locus = singularity_locus(config.theta, config.omega);
    t.meta_json = ordered_json{{"command", "perturb"},
                               {"config", config_meta(config)},
                               {"singularity_b", locus.b_singular},
                               {"abelian_validity_b", locus.b_validity},
                               {"reflected", locus.reflected}}
                      .dump();
    t.columns = {"limit", "x", "unperturbed_gauge", "correction", "signed_correction", "first_order", "second_order",
                 "dressing_shift", "exact_slope", "exact_gauge", "exact_deviation", "predicted_gauge", "abs_error",
                 "valid", "singular"};
    auto add = [&t](const PerturbationReport& r) {
        t.rows.push_back({std::string(to_string(r.limit)), r.x, r.unperturbed_gauge, r.correction, r.signed_correction,
                          r.first_order, r.second_order, r.dressing_shift, r.exact_slope, r.exact_gauge,
                          r.exact_deviation, r.predicted_gauge(), r.abs_error, r.valid, r.singular});
    };
    if (x > 0.0) add(abelian_correction(x, config.theta));
    add(non_abelian_correction(x, config.theta));
    return t;
}

Table cmd_sense(const CommonArgs& a, double sigma_b_frac, double sigma_omega_frac, long samples) {
    const FieldConfig config = resolve_config(a);
    Table t;
    t.name = "sense";
    ordered_json meta{{"command", "sense"}, {"config", config_meta(config)}};
    t.columns = {"source", "limit_valid", "dgamma_db", "dgamma_domega", "dressing_db", "dressing_domega"};
    const SensitivityReport e = exact_sensitivity(config.b, config.omega, config.theta);
    t.rows.push_back({std::string("exact"), true, e.dgamma_db, e.dgamma_domega, e.dressing_db, e.dressing_domega});
    if (config.b > 0.0) {
        const SensitivityReport s = analytic_sensitivity(Limit::Abelian, config.b, config.omega, config.theta);
        t.rows.push_back({std::string("abelian"), s.valid, s.dgamma_db, s.dgamma_domega, 0.0, 0.0});
    }
    const SensitivityReport n = analytic_sensitivity(Limit::NonAbelian, config.b, config.omega, config.theta);
    t.rows.push_back({std::string("non_abelian"), n.valid, n.dgamma_db, n.dgamma_domega, 0.0, 0.0});
    if (samples > 0) {
        NoiseOptions options;
        options.seed = a.seed;
        options.threads = a.threads;
        const NoiseSample mc = monte_carlo_phase_noise(config.b, config.omega, config.theta, sigma_b_frac * config.b,
                                                       sigma_omega_frac * config.omega, samples, options);
        meta["monte_carlo"] = {{"sigma_b", mc.sigma_b},         {"sigma_omega", mc.sigma_omega},
                               {"samples", mc.n_samples},       {"seed", mc.seed},
                               {"mean", mc.mean},               {"measured_std", mc.measured_std},
                               {"linearized_std", mc.linearized_std}};
    }
    t.meta_json = meta.dump();
    return t;
}

std::vector<SweepOutput> parse_outputs(const std::vector<std::string>& names) {
    std::vector<SweepOutput> out;
    for (const auto& n : names) out.push_back(parse_sweep_output(n));
    return out;
}

struct SweepArgs {
    std::optional<std::string> axis;
    std::optional<double> start;
    std::optional<double> stop;
    std::optional<int> points;
    bool log = false;
    std::vector<std::string> outputs;
    std::optional<long> steps;
    std::string mode = "co";
};

Table cmd_sweep(const CommonArgs& a, const SweepArgs& s) {
    SweepSpec spec;
    spec.fixed = resolve_config(a);
    spec.seed = a.seed;
    spec.threads = a.threads;
    spec.mode = parse_mode(s.mode);

    const ordered_json doc = config_document(a);
    if (doc.contains("sweep")) {
        const auto& sw = doc["sweep"];
        try {
            if (sw.contains("axis")) spec.axis = parse_sweep_axis(sw["axis"].get<std::string>());
            if (sw.contains("start")) spec.start = sw["start"].get<double>();
            if (sw.contains("stop")) spec.stop = sw["stop"].get<double>();
            if (sw.contains("points")) spec.points = sw["points"].get<int>();
            if (sw.contains("log")) spec.log = sw["log"].get<bool>();
            if (sw.contains("oracle_steps")) spec.oracle_steps = sw["oracle_steps"].get<long>();
            if (sw.contains("outputs")) spec.outputs = parse_outputs(sw["outputs"].get<std::vector<std::string>>());
        } catch (const nlohmann::json::exception& e) {
            throw InputError(std::string("bad sweep section in config: ") + e.what());
        }
    }
    // Angles on the command line are degrees; the config file uses radians.
    if (s.axis) spec.axis = parse_sweep_axis(*s.axis);
    const double unit = spec.axis == SweepAxis::Theta ? kDegree : 1.0;
    if (s.start) spec.start = *s.start * unit;
    if (s.stop) spec.stop = *s.stop * unit;
    if (s.points) spec.points = *s.points;
    if (s.log) spec.log = true;
    if (s.steps) spec.oracle_steps = *s.steps;
    if (!s.outputs.empty()) spec.outputs = parse_outputs(s.outputs);
    return run_sweep(spec);
}

Table cmd_validate(const std::string& level, const std::string& mutate, bool& passed, std::string& summary) {
    ValidationOptions options;
    if (level == "fast")
        options.level = ValidationLevel::Fast;
    else if (level == "full")
        options.level = ValidationLevel::Full;
    else
        throw InputError("level must be 'fast' or 'full'");
    if (mutate == "flip-coupling")
        options.flip_coupling = true;
    else if (!mutate.empty())
        throw InputError("unknown mutation '" + mutate + "'");
    const ValidationReport report = validate(options);
    passed = report.passed();
    summary = report.to_json();

    Table t;
    t.name = "validate";
    t.meta_json = ordered_json{{"command", "validate"}, {"level", level}, {"mutation", mutate}, {"passed", passed}}.dump();
    t.columns = {"check", "passed", "measured", "threshold", "detail"};
    for (const auto& c : report.checks) t.rows.push_back({c.name, c.passed, c.measured, c.threshold, c.detail});
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geophase: geometric phase of a driven spin-3/2 system"};
    app.require_subcommand(1);

    CommonArgs common;

    auto* gauge = app.add_subcommand("gauge", "gauge matrices and eigengauges at the configured theta and b/omega");
    auto* dress_cmd = app.add_subcommand("dress", "dressed-state solution of the +-1/2 pair");
    auto* simulate = app.add_subcommand("simulate", "brute-force 4-level propagation and phase extraction");
    auto* perturb = app.add_subcommand("perturb", "perturbative corrections around both limits");
    auto* sense = app.add_subcommand("sense", "gauge sensitivity to b and omega, optional Monte Carlo");
    auto* sweep = app.add_subcommand("sweep", "parameter sweep");
    auto* fig2 = app.add_subcommand("fig2", "gauge vs b for omega in {1, 10, 100}, theta = 1 rad");
    auto* fig3 = app.add_subcommand("fig3", "exact vs perturbative gauge, theta = 1 rad, omega = 10");
    auto* validate_cmd = app.add_subcommand("validate", "self-check suite");

    for (auto* cmd : {gauge, dress_cmd, simulate, perturb, sense, sweep}) add_field_flags(cmd, common);
    for (auto* cmd : {gauge, dress_cmd, simulate, perturb, sense, sweep, fig2, fig3, validate_cmd})
        add_output_flags(cmd, common);

    std::string mode = "co";
    dress_cmd->add_option("--mode", mode, "co or counter rotating drive");

    int cycles = 1;
    long steps = 0;
    std::string regime = "non_abelian";
    simulate->add_option("--cycles", cycles, "drive cycles");
    simulate->add_option("--steps", steps, "RK4 steps, 0 = recommended");
    simulate->add_option("--regime", regime, "non_abelian (b ignored) or abelian");

    double sigma_b = 0.01;
    double sigma_omega = 0.0;
    long samples = 0;
    sense->add_option("--sigma-b", sigma_b, "fractional sigma of b for Monte Carlo");
    sense->add_option("--sigma-omega", sigma_omega, "fractional sigma of omega for Monte Carlo");
    sense->add_option("--samples", samples, "Monte Carlo samples (0 = skip, else >= 10000)");

    SweepArgs sweep_args;
    sweep->add_option("--axis", sweep_args.axis, "b, omega, theta (degrees) or x");
    sweep->add_option("--start", sweep_args.start, "first grid value");
    sweep->add_option("--stop", sweep_args.stop, "last grid value");
    sweep->add_option("--points", sweep_args.points, "grid points");
    sweep->add_flag("--log", sweep_args.log, "logarithmic spacing");
    sweep->add_option("--outputs", sweep_args.outputs, "gauge_exact, dressed, oracle, perturbation, sensitivity")
        ->delimiter(',');
    sweep->add_option("--steps", sweep_args.steps, "oracle RK4 steps per drive period");
    sweep->add_option("--mode", sweep_args.mode, "co or counter rotating drive");

    int fig_points = 201;
    fig2->add_option("--points", fig_points, "points per curve");
    fig3->add_option("--points", fig_points, "grid points");

    std::string level = "fast";
    std::string mutate;
    validate_cmd->add_option("--level", level, "fast or full");
    validate_cmd->add_option("--mutate", mutate, "deliberate defect: flip-coupling");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e);
        return status == 0 ? 0 : 2;
    }

    try {
        if (*gauge) emit(cmd_gauge(common), common);
        if (*dress_cmd) emit(cmd_dress(common, mode), common);
        if (*simulate) emit(cmd_simulate(common, cycles, steps, regime), common);
        if (*perturb) emit(cmd_perturb(common), common);
        if (*sense) emit(cmd_sense(common, sigma_b, sigma_omega, samples), common);
        if (*sweep) emit(cmd_sweep(common, sweep_args), common);
        if (*fig2) emit(fig2_dataset(fig_points, common.seed, common.threads), common);
        if (*fig3) emit(fig3_dataset(fig_points, common.seed, common.threads), common);
        if (*validate_cmd) {
            bool passed = false;
            std::string summary;
            const Table t = cmd_validate(level, mutate, passed, summary);
            if (common.format == "json") {
                std::ofstream file;
                std::ostream* out = &std::cout;
                if (!common.out_path.empty()) {
                    file.open(common.out_path);
                    out = &file;
                }
                *out << summary << '\n';
            } else {
                emit(t, common);
            }
            return passed ? 0 : 1;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
