#pragma once

// Parameter sweeps and the figure presets. Tables are written as CSV with a
// leading "# {json}" line holding the resolved configuration, or as JSON.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "geophase/dressed.hpp"
#include "geophase/field_model.hpp"

namespace geophase {

enum class SweepAxis { B, Omega, Theta, X };
enum class SweepOutput { GaugeExact, Dressed, Oracle, Perturbation, Sensitivity };

std::string_view to_string(SweepAxis axis);
std::string_view to_string(SweepOutput output);
SweepAxis parse_sweep_axis(std::string_view text);
SweepOutput parse_sweep_output(std::string_view text);

struct SweepSpec {
    SweepAxis axis = SweepAxis::X;
    double start = 0.0;  // theta in radians
    double stop = 10.0;
    int points = 101;
    bool log = false;
    FieldConfig fixed;  // the swept field is overwritten per row; x sweeps keep fixed.omega
    std::vector<SweepOutput> outputs{SweepOutput::GaugeExact};
    long oracle_steps = 2000;  // per drive period
    DressingMode mode = DressingMode::CoRotating;
    std::uint64_t seed = 7;
    unsigned threads = 0;  // 0: hardware concurrency

    void validate() const;
    std::vector<double> grid() const;
};

using Cell = std::variant<double, bool, std::string>;

struct Table {
    std::string name;
    std::string meta_json;  // JSON object describing how the table was produced
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::size_t column(std::string_view name) const;  // throws std::out_of_range
    double number(std::size_t row, std::string_view name) const;
};

// One row per grid point, in grid order. Failures of individual rows land in
// the trailing "error" column instead of aborting the sweep.
Table run_sweep(const SweepSpec& spec);

// theta = 1 rad, omega in {1, 10, 100}, b from 0 to 50 omega; rows grouped by omega.
Table fig2_dataset(int points = 201, std::uint64_t seed = 7, unsigned threads = 0);
// theta = 1 rad, omega = 10, b from 0 to 100.
Table fig3_dataset(int points = 201, std::uint64_t seed = 7, unsigned threads = 0);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);

// Shortest round-trip representation; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double value);

}  // namespace geophase
