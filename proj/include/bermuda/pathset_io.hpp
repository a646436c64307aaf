#pragma once

#include <string>

#include "bermuda/g1pp.hpp"

namespace bermuda {

// Audit dump of a simulated PathSet: one CSV row per path with the factor and
// the path-wise discount factor at every grid time, plus a JSON provenance
// sidecar holding (seed, params, grid).
void dump_pathset(const PathSet& paths, const std::string& csv_path);

}  // namespace bermuda
