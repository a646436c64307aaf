#include "bermuda/ml/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bermuda::ml {

DecisionTreeRegressor::DecisionTreeRegressor(TreeConfig config) : config_(config) {
    if (config.max_depth == 0 || config.max_depth < -1)
        throw std::invalid_argument("tree: max_depth must be positive or -1");
    if (config.min_samples_leaf < 1)
        throw std::invalid_argument("tree: min_samples_leaf must be >= 1");
    if (config.min_samples_leaf_fraction < 0.0 || config.min_samples_leaf_fraction >= 1.0)
        throw std::invalid_argument("tree: min_samples_leaf_fraction must be in [0,1)");
}

struct DecisionTreeRegressor::BuildContext {
    const Matrix& x;
    const Vector& y;
    std::size_t min_leaf;
    int n_subset_features;  // features examined per split
    SeqRng* rng;            // nullptr when all features are examined
};

namespace {

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double reduction = 0.0;
    std::size_t n_left = 0;
};

}  // namespace

int DecisionTreeRegressor::build_node(BuildContext& ctx, std::vector<int>& rows, int depth) {
    const int node_id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();

    double sum = 0.0, sumsq = 0.0;
    for (int r : rows) {
        sum += ctx.y(r);
        sumsq += ctx.y(r) * ctx.y(r);
    }
    const double n = static_cast<double>(rows.size());
    const double sse_parent = std::max(sumsq - sum * sum / n, 0.0);
    nodes_[node_id].value = sum / n;
    nodes_[node_id].n_samples = rows.size();

    const bool depth_ok = config_.max_depth < 0 || depth < config_.max_depth;
    if (!depth_ok || rows.size() < 2 * ctx.min_leaf || sse_parent <= 0.0) return node_id;

    // Feature subset for this split (ascending, so tie-breaking by feature
    // index is stable whatever the draw order).
    const int p = static_cast<int>(ctx.x.cols());
    std::vector<int> features;
    if (ctx.n_subset_features >= p) {
        features.resize(p);
        std::iota(features.begin(), features.end(), 0);
    } else {
        std::vector<int> all(p);
        std::iota(all.begin(), all.end(), 0);
        for (int i = 0; i < ctx.n_subset_features; ++i) {
            const std::size_t j = i + ctx.rng->index(p - i);
            std::swap(all[i], all[j]);
        }
        features.assign(all.begin(), all.begin() + ctx.n_subset_features);
        std::sort(features.begin(), features.end());
    }

    SplitChoice best;
    std::vector<std::pair<double, int>> order(rows.size());
    for (int f : features) {
        for (std::size_t i = 0; i < rows.size(); ++i)
            order[i] = {ctx.x(rows[i], f), rows[i]};
        std::sort(order.begin(), order.end());

        double left_sum = 0.0, left_sumsq = 0.0;
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            const double yi = ctx.y(order[i].second);
            left_sum += yi;
            left_sumsq += yi * yi;
            if (order[i].first == order[i + 1].first) continue;  // no boundary here
            const std::size_t nl = i + 1, nr = order.size() - nl;
            if (nl < ctx.min_leaf || nr < ctx.min_leaf) continue;
            const double right_sum = sum - left_sum;
            const double right_sumsq = sumsq - left_sumsq;
            const double sse_l = std::max(left_sumsq - left_sum * left_sum / nl, 0.0);
            const double sse_r = std::max(right_sumsq - right_sum * right_sum / nr, 0.0);
            const double reduction = sse_parent - sse_l - sse_r;
            if (reduction > best.reduction) {
                best.feature = f;
                best.threshold = 0.5 * (order[i].first + order[i + 1].first);
                best.reduction = reduction;
                best.n_left = nl;
            }
        }
    }
    if (best.feature < 0) return node_id;

    std::vector<int> left_rows, right_rows;
    left_rows.reserve(best.n_left);
    right_rows.reserve(rows.size() - best.n_left);
    for (int r : rows)
        (ctx.x(r, best.feature) <= best.threshold ? left_rows : right_rows).push_back(r);
    rows.clear();
    rows.shrink_to_fit();

    nodes_[node_id].feature = best.feature;
    nodes_[node_id].threshold = best.threshold;
    nodes_[node_id].impurity_decrease = best.reduction;
    const int left_id = build_node(ctx, left_rows, depth + 1);
    nodes_[node_id].left = left_id;
    const int right_id = build_node(ctx, right_rows, depth + 1);
    nodes_[node_id].right = right_id;
    return node_id;
}

void DecisionTreeRegressor::fit_rows(const Matrix& x, const Vector& y,
                                     const std::vector<int>& rows, std::size_t n_total,
                                     SeqRng* rng) {
    if (!nodes_.empty()) throw std::logic_error("tree: already grown");
    if (rows.empty()) throw std::invalid_argument("tree: no sample rows");

    std::size_t min_leaf = static_cast<std::size_t>(config_.min_samples_leaf);
    if (config_.min_samples_leaf_fraction > 0.0)
        min_leaf = std::max<std::size_t>(
            1, static_cast<std::size_t>(
                   std::ceil(config_.min_samples_leaf_fraction * static_cast<double>(n_total))));

    const int p = static_cast<int>(x.cols());
    int n_subset = p;
    if (config_.max_features == MaxFeatures::Log2 && p > 1)
        n_subset = std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(p)))));
    if (n_subset < p && rng == nullptr)
        throw std::invalid_argument("tree: feature subsampling needs an rng");

    BuildContext ctx{x, y, min_leaf, n_subset, rng};
    std::vector<int> root_rows = rows;
    build_node(ctx, root_rows, 0);
}

void DecisionTreeRegressor::do_fit(const Matrix& x, const Vector& y) {
    std::vector<int> rows(x.rows());
    std::iota(rows.begin(), rows.end(), 0);
    SeqRng rng(0);
    fit_rows(x, y, rows, x.rows(), &rng);
}

double DecisionTreeRegressor::predict_row(const Matrix& x, Eigen::Index row) const {
    int id = 0;
    while (nodes_[id].feature >= 0)
        id = x(row, nodes_[id].feature) <= nodes_[id].threshold ? nodes_[id].left
                                                                : nodes_[id].right;
    return nodes_[id].value;
}

Vector DecisionTreeRegressor::do_predict(const Matrix& x) const {
    Vector out(x.rows());
    for (Eigen::Index r = 0; r < x.rows(); ++r) out(r) = predict_row(x, r);
    return out;
}

double DecisionTreeRegressor::complexity_hint() const {
    const double depth = config_.max_depth < 0 ? 64.0 : config_.max_depth;
    return depth;
}

nlohmann::json DecisionTreeRegressor::nodes_to_json(const std::vector<TreeNode>& nodes) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& n : nodes)
        arr.push_back({{"f", n.feature},
                       {"t", n.threshold},
                       {"l", n.left},
                       {"r", n.right},
                       {"v", n.value},
                       {"d", n.impurity_decrease},
                       {"n", n.n_samples}});
    return arr;
}

std::vector<TreeNode> DecisionTreeRegressor::nodes_from_json(const nlohmann::json& j) {
    std::vector<TreeNode> nodes;
    nodes.reserve(j.size());
    for (const auto& e : j) {
        TreeNode n;
        n.feature = e.at("f").get<int>();
        n.threshold = e.at("t").get<double>();
        n.left = e.at("l").get<int>();
        n.right = e.at("r").get<int>();
        n.value = e.at("v").get<double>();
        n.impurity_decrease = e.at("d").get<double>();
        n.n_samples = e.at("n").get<std::size_t>();
        nodes.push_back(n);
    }
    return nodes;
}

nlohmann::json DecisionTreeRegressor::config_to_json(const TreeConfig& c) {
    return {{"max_depth", c.max_depth},
            {"min_samples_leaf_fraction", c.min_samples_leaf_fraction},
            {"min_samples_leaf", c.min_samples_leaf},
            {"max_features", c.max_features == MaxFeatures::All ? "all" : "log2"}};
}

TreeConfig DecisionTreeRegressor::config_from_json(const nlohmann::json& j) {
    TreeConfig c;
    c.max_depth = j.at("max_depth").get<int>();
    c.min_samples_leaf_fraction = j.at("min_samples_leaf_fraction").get<double>();
    c.min_samples_leaf = j.at("min_samples_leaf").get<int>();
    c.max_features =
        j.at("max_features").get<std::string>() == "all" ? MaxFeatures::All : MaxFeatures::Log2;
    return c;
}

nlohmann::json DecisionTreeRegressor::to_json() const {
    nlohmann::json j;
    j["format_version"] = 1;
    j["kind"] = kind();
    j["config"] = config_to_json(config_);
    j["nodes"] = nodes_to_json(nodes_);
    j["n_features"] = n_features();
    return j;
}

std::unique_ptr<Regressor> DecisionTreeRegressor::from_json(const nlohmann::json& j) {
    auto m = std::make_unique<DecisionTreeRegressor>(config_from_json(j.at("config")));
    m->nodes_ = nodes_from_json(j.at("nodes"));
    m->restore_n_features(j.at("n_features").get<int>());
    return m;
}

std::unique_ptr<Regressor> DecisionTreeRegressor::clone_unfitted() const {
    return std::make_unique<DecisionTreeRegressor>(config_);
}

}  // namespace bermuda::ml
