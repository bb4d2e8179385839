#pragma once

#include <string_view>

#include "blockade/model.hpp"
#include "blockade/sweep.hpp"

namespace blockade {

// Line-oriented `key = value` documents; `#` starts a comment.
//
// Model keys:  delta_a delta_b delta_c g f_a kappa_a kappa_b kappa_c
// Sweep keys:  axis (delta_a | g), start, stop, points, scale (linear | log)
//
// Unset model keys default to 0 (decay rates to 1). scale defaults to
// linear for delta_a and log for g; points defaults to 401 on a linear grid
// and 200 on a log grid. The truncation is always the default (5, 2, 2).

struct ParsedConfig
{
    SystemParams params;
    SweepSpec sweep; // sweep.base == params
};

/// Parses a sweep configuration. axis, start and stop are required.
/// Throws ParseError naming the offending line.
ParsedConfig parse_config(std::string_view text);

/// Parses the model keys only; sweep keys are accepted and ignored.
SystemParams parse_params(std::string_view text);

} // namespace blockade
