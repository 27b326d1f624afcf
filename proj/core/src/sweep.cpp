#include "geophase/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "geophase/dynamics.hpp"
#include "geophase/perturbation.hpp"
#include "geophase/sensitivity.hpp"

namespace geophase {

namespace {

using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs body(i) for i in [0, count) on a small pool; each index is written by
// exactly one worker so the output order never depends on scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) body(i);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

struct Point {
    double b;
    double omega;
    double theta;
};

Point point_at(const SweepSpec& spec, double value) {
    Point p{spec.fixed.b, spec.fixed.omega, spec.fixed.theta};
    switch (spec.axis) {
        case SweepAxis::B: p.b = value; break;
        case SweepAxis::Omega: p.omega = value; break;
        case SweepAxis::Theta: p.theta = value; break;
        case SweepAxis::X: p.b = value * spec.fixed.omega; break;
    }
    return p;
}

std::vector<std::string> output_columns(SweepOutput output) {
    switch (output) {
        case SweepOutput::GaugeExact: return {"gauge_exact"};
        case SweepOutput::Dressed: return {"big_lambda", "lambda", "lambda_companion"};
        case SweepOutput::Oracle: return {"oracle_gauge", "oracle_deviation", "oracle_estimated_error"};
        case SweepOutput::Perturbation:
            return {"abelian_perturbation", "abelian_valid", "abelian_singular", "non_abelian_perturbation",
                    "non_abelian_valid"};
        case SweepOutput::Sensitivity: return {"dgamma_db", "dgamma_domega"};
    }
    return {};
}

void append_output(SweepOutput output, const SweepSpec& spec, const Point& p, std::vector<Cell>& row) {
    const double x = p.b / p.omega;
    switch (output) {
        case SweepOutput::GaugeExact: row.emplace_back(gauge_exact(x, p.theta, spec.mode)); return;
        case SweepOutput::Dressed: {
            const DressedSolution d = dress(p.omega, p.b, p.theta, spec.mode);
            row.emplace_back(d.big_lambda);
            row.emplace_back(d.lambda);
            row.emplace_back(d.lambda_companion);
            return;
        }
        case SweepOutput::Oracle: {
            const OracleGauge o = oracle_gauge(p.omega, p.b, p.theta, spec.oracle_steps, spec.mode);
            row.emplace_back(o.spectrum.gauge);
            row.emplace_back(o.spectrum.gauge - gauge_exact(x, p.theta, spec.mode));
            row.emplace_back(o.estimated_error);
            return;
        }
        case SweepOutput::Perturbation: {
            if (x > 0.0) {
                const PerturbationReport a = abelian_correction(x, p.theta);
                row.emplace_back(a.singular ? kNaN : a.predicted_gauge());
                row.emplace_back(a.valid);
                row.emplace_back(a.singular);
            } else {
                row.emplace_back(kNaN);
                row.emplace_back(false);
                row.emplace_back(false);
            }
            const PerturbationReport n = non_abelian_correction(x, p.theta);
            row.emplace_back(n.unperturbed_gauge + n.signed_correction + n.dressing_shift);
            row.emplace_back(n.valid);
            return;
        }
        case SweepOutput::Sensitivity: {
            const SensitivityReport s = exact_sensitivity(p.b, p.omega, p.theta);
            row.emplace_back(s.dgamma_db);
            row.emplace_back(s.dgamma_domega);
            return;
        }
    }
}

ordered_json config_json(const FieldConfig& c) {
    return ordered_json{{"c", c.c}, {"b", c.b}, {"omega", c.omega}, {"theta_rad", c.theta}};
}

ordered_json cell_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return v;
            } else {
                return v;
            }
        },
        cell);
}

std::string csv_escape(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

Table fill_rows(Table table, std::size_t count, unsigned threads,
                const std::function<std::vector<Cell>(std::size_t)>& make_row) {
    table.rows.resize(count);
    parallel_for(count, threads, [&](std::size_t i) {
        std::vector<Cell> row;
        try {
            row = make_row(i);
            row.emplace_back(std::string{});
        } catch (const std::exception& e) {
            row.resize(table.columns.size() - 1, Cell{kNaN});
            row.emplace_back(std::string{e.what()});
        }
        table.rows[i] = std::move(row);
    });
    return table;
}

std::vector<double> linear_grid(double start, double stop, int points) {
    std::vector<double> g(static_cast<size_t>(points));
    for (int i = 0; i < points; ++i) g[i] = start + (stop - start) * i / (points - 1);
    g.back() = stop;
    return g;
}

}  // namespace

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::B: return "b";
        case SweepAxis::Omega: return "omega";
        case SweepAxis::Theta: return "theta";
        case SweepAxis::X: return "x";
    }
    return "?";
}

std::string_view to_string(SweepOutput output) {
    switch (output) {
        case SweepOutput::GaugeExact: return "gauge_exact";
        case SweepOutput::Dressed: return "dressed";
        case SweepOutput::Oracle: return "oracle";
        case SweepOutput::Perturbation: return "perturbation";
        case SweepOutput::Sensitivity: return "sensitivity";
    }
    return "?";
}

SweepAxis parse_sweep_axis(std::string_view text) {
    for (SweepAxis a : {SweepAxis::B, SweepAxis::Omega, SweepAxis::Theta, SweepAxis::X})
        if (to_string(a) == text) return a;
    throw InputError("unknown sweep axis '" + std::string(text) + "' (expected b, omega, theta or x)");
}

SweepOutput parse_sweep_output(std::string_view text) {
    for (SweepOutput o : {SweepOutput::GaugeExact, SweepOutput::Dressed, SweepOutput::Oracle,
                          SweepOutput::Perturbation, SweepOutput::Sensitivity})
        if (to_string(o) == text) return o;
    throw InputError("unknown sweep output '" + std::string(text) + "'");
}

void SweepSpec::validate() const {
    if (points < 2) throw InputError("sweep needs at least 2 points");
    if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop))
        throw InputError("sweep requires start < stop");
    if (log && start <= 0.0) throw InputError("log spacing requires start > 0");
    if (outputs.empty()) throw InputError("sweep needs at least one output");
    if (oracle_steps < 1) throw InputError("oracle steps must be positive");
    switch (axis) {
        case SweepAxis::B:
        case SweepAxis::X:
            if (start < 0.0) throw InputError("b and x sweeps must start at or above 0");
            break;
        case SweepAxis::Omega:
            if (start <= 0.0) throw InputError("omega sweeps must start above 0");
            break;
        case SweepAxis::Theta:
            if (start < 0.0 || stop > kPi) throw InputError("theta sweeps must stay within [0, pi]");
            break;
    }
    FieldConfig probe = fixed;
    if (axis == SweepAxis::B || axis == SweepAxis::X) probe.b = 0.0;
    if (axis == SweepAxis::Omega) probe.omega = 1.0;
    if (axis == SweepAxis::Theta) probe.theta = 0.0;
    probe.validate();
}

std::vector<double> SweepSpec::grid() const {
    if (!log) return linear_grid(start, stop, points);
    std::vector<double> g(static_cast<size_t>(points));
    const double a = std::log(start);
    const double z = std::log(stop);
    for (int i = 0; i < points; ++i) g[i] = std::exp(a + (z - a) * i / (points - 1));
    g.front() = start;
    g.back() = stop;
    return g;
}

std::size_t Table::column(std::string_view name_) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name_) return i;
    throw std::out_of_range("no column " + std::string(name_));
}

double Table::number(std::size_t row, std::string_view name_) const {
    const Cell& cell = rows.at(row).at(column(name_));
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    if (const auto* b = std::get_if<bool>(&cell)) return *b ? 1.0 : 0.0;
    throw std::invalid_argument("column " + std::string(name_) + " is not numeric");
}

Table run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::vector<double> grid = spec.grid();

    Table table;
    table.name = "sweep";
    table.columns = {"b", "omega", "theta_rad", "x"};
    std::vector<std::string> outputs_text;
    for (SweepOutput o : spec.outputs) {
        for (auto& col : output_columns(o)) table.columns.push_back(col);
        outputs_text.emplace_back(to_string(o));
    }
    table.columns.push_back("error");

    ordered_json meta;
    meta["command"] = "sweep";
    meta["config"] = config_json(spec.fixed);
    meta["sweep"] = {{"axis", to_string(spec.axis)}, {"start", spec.start}, {"stop", spec.stop},
                     {"points", spec.points},        {"log", spec.log},     {"outputs", outputs_text}};
    meta["mode"] = to_string(spec.mode);
    meta["oracle_steps"] = spec.oracle_steps;
    meta["seed"] = spec.seed;
    table.meta_json = meta.dump();

    return fill_rows(std::move(table), grid.size(), spec.threads, [&](std::size_t i) {
        const Point p = point_at(spec, grid[i]);
        std::vector<Cell> row{p.b, p.omega, p.theta, p.b / p.omega};
        for (SweepOutput o : spec.outputs) append_output(o, spec, p, row);
        return row;
    });
}

Table fig2_dataset(int points, std::uint64_t seed, unsigned threads) {
    if (points < 2) throw InputError("fig2 needs at least 2 points per curve");
    constexpr double theta = 1.0;
    const std::array<double, 3> omegas{1.0, 10.0, 100.0};
    Table table;
    table.name = "fig2";
    table.columns = {"omega", "b", "x", "gauge_exact", "error"};
    ordered_json meta;
    meta["command"] = "fig2";
    meta["theta_rad"] = theta;
    meta["omega"] = omegas;
    meta["b_range"] = "0 to 50 omega";
    meta["points_per_curve"] = points;
    meta["seed"] = seed;
    table.meta_json = meta.dump();

    const std::vector<double> xs = linear_grid(0.0, 50.0, points);
    const std::size_t n = xs.size();
    return fill_rows(std::move(table), omegas.size() * n, threads, [&](std::size_t i) {
        const double omega = omegas[i / n];
        const double b = xs[i % n] * omega;
        const double x = b / omega;
        return std::vector<Cell>{omega, b, x, gauge_exact(x, theta)};
    });
}

Table fig3_dataset(int points, std::uint64_t seed, unsigned threads) {
    if (points < 2) throw InputError("fig3 needs at least 2 points");
    constexpr double theta = 1.0;
    constexpr double omega = 10.0;
    Table table;
    table.name = "fig3";
    table.columns = {"b",
                     "x",
                     "exact",
                     "abelian_perturbation",
                     "abelian_valid",
                     "abelian_singular",
                     "non_abelian_perturbation",
                     "non_abelian_valid",
                     "error"};
    const SingularityLocus locus = singularity_locus(theta, omega);
    ordered_json meta;
    meta["command"] = "fig3";
    meta["theta_rad"] = theta;
    meta["omega"] = omega;
    meta["b_range"] = {0.0, 100.0};
    meta["points"] = points;
    meta["singularity_b"] = locus.b_singular;
    meta["seed"] = seed;
    table.meta_json = meta.dump();

    const std::vector<double> bs = linear_grid(0.0, 100.0, points);
    return fill_rows(std::move(table), bs.size(), threads, [&](std::size_t i) {
        const double b = bs[i];
        const double x = b / omega;
        std::vector<Cell> row{b, x, gauge_exact(x, theta)};
        SweepSpec spec;
        append_output(SweepOutput::Perturbation, spec, Point{b, omega, theta}, row);
        return row;
    });
}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[64];
    const auto res = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, res.ptr);
}

void write_csv(const Table& table, std::ostream& out) {
    out << "# " << table.meta_json << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            std::visit(
                [&out](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        out << format_number(v);
                    else if constexpr (std::is_same_v<T, bool>)
                        out << (v ? "true" : "false");
                    else
                        out << csv_escape(v);
                },
                row[i]);
        }
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out) {
    ordered_json doc;
    doc["meta"] = ordered_json::parse(table.meta_json);
    doc["columns"] = table.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json r = ordered_json::array();
        for (const auto& cell : row) r.push_back(cell_json(cell));
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

}  // namespace geophase
