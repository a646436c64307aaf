#include "bermuda/ml/forest.hpp"

#include <omp.h>

#include <numeric>
#include <stdexcept>

namespace bermuda::ml {

namespace {

TreeConfig member_config(const ForestConfig& c) {
    TreeConfig t;
    t.max_depth = c.max_depth;
    t.min_samples_leaf = c.min_samples_leaf;
    t.max_features = c.max_features;
    return t;
}

}  // namespace

RandomForestRegressor::RandomForestRegressor(ForestConfig config) : config_(config) {
    if (config.n_estimators < 1)
        throw std::invalid_argument("random_forest: n_estimators must be >= 1");
}

void RandomForestRegressor::do_fit(const Matrix& x, const Vector& y) {
    const int n = static_cast<int>(x.rows());
    trees_.assign(config_.n_estimators, DecisionTreeRegressor(member_config(config_)));

#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < config_.n_estimators; ++t) {
        SeqRng rng(config_.seed, static_cast<std::uint64_t>(t));
        std::vector<int> rows(n);
        if (config_.bootstrap) {
            for (int i = 0; i < n; ++i) rows[i] = static_cast<int>(rng.index(n));
        } else {
            std::iota(rows.begin(), rows.end(), 0);
        }
        trees_[t].fit_rows(x, y, rows, x.rows(), &rng);
    }
}

Vector RandomForestRegressor::do_predict(const Matrix& x) const {
    Vector out = Vector::Zero(x.rows());
    for (const auto& tree : trees_)
        for (Eigen::Index r = 0; r < x.rows(); ++r) out(r) += tree.predict_row(x, r);
    return out / static_cast<double>(trees_.size());
}

nlohmann::json RandomForestRegressor::to_json() const {
    nlohmann::json j;
    j["format_version"] = 1;
    j["kind"] = kind();
    j["n_estimators"] = config_.n_estimators;
    j["max_depth"] = config_.max_depth;
    j["max_features"] = config_.max_features == MaxFeatures::All ? "all" : "log2";
    j["bootstrap"] = config_.bootstrap;
    j["min_samples_leaf"] = config_.min_samples_leaf;
    j["seed"] = config_.seed;
    nlohmann::json members = nlohmann::json::array();
    for (const auto& tree : trees_)
        members.push_back(DecisionTreeRegressor::nodes_to_json(tree.nodes()));
    j["trees"] = std::move(members);
    j["n_features"] = n_features();
    return j;
}

std::unique_ptr<Regressor> RandomForestRegressor::from_json(const nlohmann::json& j) {
    ForestConfig c;
    c.n_estimators = j.at("n_estimators").get<int>();
    c.max_depth = j.at("max_depth").get<int>();
    c.max_features =
        j.at("max_features").get<std::string>() == "all" ? MaxFeatures::All : MaxFeatures::Log2;
    c.bootstrap = j.at("bootstrap").get<bool>();
    c.min_samples_leaf = j.at("min_samples_leaf").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    auto m = std::make_unique<RandomForestRegressor>(c);
    for (const auto& nodes : j.at("trees")) {
        DecisionTreeRegressor tree(member_config(c));
        tree.restore_nodes(DecisionTreeRegressor::nodes_from_json(nodes));
        m->trees_.push_back(std::move(tree));
    }
    m->restore_n_features(j.at("n_features").get<int>());
    return m;
}

std::unique_ptr<Regressor> RandomForestRegressor::clone_unfitted() const {
    return std::make_unique<RandomForestRegressor>(config_);
}

}  // namespace bermuda::ml
