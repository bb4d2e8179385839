#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "blockade/fock.hpp"
#include "blockade/model.hpp"
#include "blockade/observables.hpp"

namespace blockade {

enum class SweepAxis { delta_a, g };
enum class GridScale { linear, log };

std::string_view axis_name(SweepAxis axis) noexcept;
std::string_view scale_name(GridScale scale) noexcept;

inline constexpr std::size_t kDefaultLinearPoints = 401;
inline constexpr std::size_t kDefaultLogPoints = 200;

struct SweepSpec
{
    SweepAxis axis = SweepAxis::delta_a;
    double start = -10.0;
    double stop = 10.0;
    std::size_t points = kDefaultLinearPoints;
    GridScale scale = GridScale::linear;
    SystemParams base;
    FockTruncation trunc;

    // Throws InvalidRange / InvalidParameters.
    void validate() const;

    // Strictly increasing axis values; first == start and last == stop exactly.
    std::vector<double> samples() const;

    // base with the swept parameter set to x
    SystemParams params_at(double x) const;
};

struct SweepResult
{
    SweepSpec spec;
    std::vector<ObservableRecord> records;

    SweepResult without_gaps() const;
};

/// Steady state and observables at a single parameter set. Solver and
/// observable failures come back as a gap record instead of throwing.
ObservableRecord solve_point(const SystemParams& params, const FockSpace& space, double x);

/// Evaluates every sample of the spec. Points are independent and may be
/// spread over `threads` workers; records are always in axis order and do
/// not depend on the thread count.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 1);

inline constexpr std::string_view kCsvHeader = "x,g2_a,n_a,n_b,n_c";

// 10 significant digits, e.g. 2.770200000e-03; NaN prints as "nan".
std::string format_value(double value);

/// Header plus one LF-terminated row per record; gap rows carry "nan" in
/// every observable column.
std::string emit_csv(const SweepResult& result);

struct CsvRow
{
    double x = 0.0;
    double g2_a = 0.0;
    double n_a = 0.0;
    double n_b = 0.0;
    double n_c = 0.0;
};

/// Reads the document written by emit_csv. Throws ParseError on a wrong
/// header or malformed row.
std::vector<CsvRow> parse_csv(std::string_view text);

} // namespace blockade
