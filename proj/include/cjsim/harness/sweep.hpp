#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cjsim/analytic_bounds.hpp"
#include "cjsim/harness/serialize.hpp"
#include "cjsim/monte_carlo.hpp"

namespace cjsim::harness {

enum class SweepParameter { n, m, gamma_r, gamma_e, eps_s, eps_t, tau };

std::string_view to_string(SweepParameter p) noexcept;
SweepParameter parse_sweep_parameter(std::string_view text);

struct SweepOutputs {
    bool bounds = true;
    bool simulation = true;
};

SweepOutputs parse_sweep_outputs(std::string_view text);

struct SweepSpec {
    SweepParameter parameter = SweepParameter::n;
    std::vector<double> values;
    RunSettings base;
    SweepOutputs outputs;
    bool load_balance = false;  ///< adds Jain index over `trials` slots
    bool parallel_rows = false;
    unsigned workers = 1;       ///< Monte Carlo threads per row
};

/// from, from+step, ... up to `to` inclusive (within step/1e9).
std::vector<double> make_grid(double from, double to, double step);

/// Parses "a,b,c".
std::vector<double> parse_value_list(std::string_view text);

struct ResultRow {
    double swept_value = 0.0;
    std::optional<bounds::BoundReport> bounds;
    std::optional<OutageEstimate> simulation;
    std::optional<double> jain_index;
    std::string status = "ok";
};

/// Rows in value order; infeasible or invalid points are recorded in the
/// status column and the sweep continues.
std::vector<ResultRow> run_sweep(const SweepSpec& spec);

/// Fixed column order shared by every sweep.
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_row(const ResultRow& row);

/// Appends rows to path, writing the header only when the file is new or
/// empty.  Throws ConfigError if an existing header differs.
void append_csv(const std::string& path, const std::vector<ResultRow>& rows);

Json to_json(const ResultRow& row);

} // namespace cjsim::harness
