#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bermuda/g1pp.hpp"
#include "bermuda/swaption.hpp"

namespace bermuda {

struct LsmcConfig {
    std::size_t n_paths = 50000;
    std::uint64_t seed = 42;
    int basis_degree = 3;     // monomials 1..x^d of the OU state
    bool itm_only = true;     // regress on in-the-money paths only
    bool antithetic = false;
    // Restrict the exercise schedule to these indices (0-based into the
    // spec's exercise dates). Empty means all dates. Used for the
    // single-exercise consistency checks and nested-schedule tests.
    std::vector<int> exercise_subset;

    void validate() const;
};

struct LsmcResult {
    double price = 0.0;
    double std_error = 0.0;
    std::vector<double> exercise_fractions;  // per exercise date, in schedule order
    std::vector<std::string> warnings;
};

/// Least-squares Monte Carlo Bermudan price. Backward induction over the
/// exercise grid; continuation values are regressed on monomials of the OU
/// state over (by default) in-the-money paths; discounting uses the exact
/// path-wise numeraire. Deterministic given (seed, n_paths, grid) and
/// independent of the worker count.
LsmcResult price_bermudan(const BermudanSpec& spec, const G1ppParams& params,
                          const CurveSet& curves, const LsmcConfig& config);

/// Same pricer on externally simulated paths (shared-path workflows: the
/// dataset generator reuses one PathSet per cell for price and correlation).
/// The PathSet grid must equal spec.grid_times().
LsmcResult price_bermudan_on_paths(const BermudanSpec& spec, const CurveSet& curves,
                                   const PathSet& paths, const LsmcConfig& config);

struct BasketCellResult {
    std::size_t spec_index = 0;
    std::size_t scenario_index = 0;
    bool ok = false;
    LsmcResult result;
    std::string error;
    double wall_ms = 0.0;
};

/// Prices every (spec, scenario) cell; cells fail individually without
/// aborting the batch. Each cell derives its seed from the config seed and
/// its (spec, scenario) position, so results match pricing cells one by one.
std::vector<BasketCellResult> price_basket(const std::vector<BermudanSpec>& specs,
                                           const ScenarioGrid& grid, const CurveSet& curves,
                                           const LsmcConfig& config);

}  // namespace bermuda
