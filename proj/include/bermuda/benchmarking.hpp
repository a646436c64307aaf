#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bermuda/dataset.hpp"
#include "bermuda/lsmc.hpp"
#include "bermuda/ml/pipeline.hpp"

#include <json.hpp>

namespace bermuda {

struct TimingRow {
    std::string name;
    double train_s = 0.0;
    double pricing_s = 0.0;
};

/// Wall-clock comparison of the surrogate route against the Monte Carlo
/// route: each model is fitted on the training rows (timed) and then prices
/// the full basket in one batch predict (timed); the LSMC row re-prices every
/// (spec, scenario) cell. Monotonic clocks throughout. The LSMC row is
/// always last, named "lsmc".
std::vector<TimingRow> timing_benchmark(
    const std::vector<std::pair<std::string, nlohmann::json>>& models,
    const ml::Matrix& x_train, const ml::Vector& y_train, const ml::Matrix& x_all,
    const std::vector<BermudanSpec>& basket, const ScenarioGrid& grid,
    const CurveSet& curves, const LsmcConfig& lsmc_config, std::uint64_t seed);

void save_timing_csv(const std::vector<TimingRow>& rows, const std::string& path);

}  // namespace bermuda
