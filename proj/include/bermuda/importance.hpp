#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bermuda/ml/pipeline.hpp"

namespace bermuda {

struct ImportanceReport {
    std::vector<double> importance;  // non-negative, sums to 1
    std::string method;              // "permutation" or "impurity"
    bool degenerate = false;         // baseline error was zero, fell back to uniform
};

/// Model-agnostic importance: the mean MSE degradation over n_repeats seeded
/// shuffles of each feature column, floored at zero and normalized to sum 1.
ImportanceReport permutation_importance(const ml::Pipeline& pipeline,
                                        const ml::Matrix& x, const ml::Vector& y,
                                        int n_repeats, std::uint64_t seed);

/// Endogenous importance of tree-based models: per-feature total SSE
/// reduction, sample-weighted, averaged over ensemble members, normalized to
/// sum 1. Throws std::invalid_argument for non-tree models.
ImportanceReport impurity_importance(const ml::Regressor& model);

}  // namespace bermuda
