#pragma once

#include "qsw/config.hpp"
#include "qsw/container.hpp"
#include "qsw/walk.hpp"

namespace qsw {

/// Executes the full pipeline described by the config: load the graph, build
/// the walk operators and superoperator, set the initial state, evolve, and
/// measure. Deterministic for a fixed config and worker count.
ResultContainer run(const RunConfig& config);

}  // namespace qsw
