#pragma once

#include <functional>
#include <vector>

#include "bermuda/ml/pipeline.hpp"

namespace bermuda::ml {

struct CvPoint {
    nlohmann::json params;
    std::vector<double> fold_scores;  // standardized-target MSE per fold
    double mean_score = 0.0;
    double std_score = 0.0;
    double complexity = 0.0;
};

struct CvReport {
    int k = 0;
    std::vector<CvPoint> points;
    int best_index = -1;

    nlohmann::json to_json() const;
};

using PipelineFactory = std::function<Pipeline(const nlohmann::json& params)>;

// Seeded shuffle-partition of n rows into k folds of near-equal size.
std::vector<std::vector<int>> kfold_indices(int n, int k, std::uint64_t seed);

/// Scores every grid point by the mean validation MSE (computed on the target
/// standardized with the fold-train statistics) across k folds; transforms are
/// refit inside each fold. Best point: lowest mean, ties to the simplest
/// model, then the lowest grid index.
CvReport kfold_grid_search(const PipelineFactory& factory,
                           const std::vector<nlohmann::json>& grid, int k, const Matrix& x,
                           const Vector& y, std::uint64_t seed);

}  // namespace bermuda::ml
