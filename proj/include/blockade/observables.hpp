#pragma once

#include <optional>
#include <string>

#include "blockade/fock.hpp"
#include "blockade/model.hpp"

namespace blockade {

// Below this mean occupation g2 is reported as undefined rather than small.
inline constexpr double kOccupationCutoff = 1e-14;
// Population of a mode's top Fock level above which g2 may be biased by the cutoff.
inline constexpr double kTruncationLeakThreshold = 1e-6;

struct CorrelationEstimate
{
    double value = 0.0;
    double top_level_population = 0.0;
    bool truncation_warning = false;
};

// Tr(ρ n_mode). Throws InvariantViolation if the imaginary part exceeds 1e-10.
double mean_occupation(const DensityMatrix& rho, const FockSpace& space, Mode mode);

// Total population of the states where `mode` sits at its cutoff.
double top_level_population(const DensityMatrix& rho, const FockSpace& space, Mode mode);

/// Equal-time second-order correlation <o^dag o^dag o o> / <o^dag o>^2.
/// Throws UndefinedCorrelation when <o^dag o> <= kOccupationCutoff.
CorrelationEstimate g2_zero(const DensityMatrix& rho, const FockSpace& space, Mode mode);

/// One sample of a sweep. A gap record carries NaN observables and the
/// reason the point failed.
struct ObservableRecord
{
    double x = 0.0;
    double g2_a = 0.0;
    double n_a = 0.0;
    double n_b = 0.0;
    double n_c = 0.0;
    bool truncation_warning = false;
    StateDiagnostics diagnostics;
    std::optional<std::string> failure;

    bool is_gap() const noexcept { return failure.has_value(); }

    static ObservableRecord gap(double x, std::string reason);
};

ObservableRecord evaluate_observables(double x, const DensityMatrix& rho, const FockSpace& space);

} // namespace blockade
