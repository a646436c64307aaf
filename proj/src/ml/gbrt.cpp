#include "bermuda/ml/gbrt.hpp"

#include <numeric>
#include <stdexcept>

namespace bermuda::ml {

namespace {

TreeConfig stage_config(const GbrtConfig& c) {
    TreeConfig t;
    t.max_depth = c.max_depth;
    t.min_samples_leaf = c.min_samples_leaf;
    t.max_features = c.max_features;
    return t;
}

}  // namespace

GbrtRegressor::GbrtRegressor(GbrtConfig config) : config_(config) {
    if (!(config.learning_rate > 0.0))
        throw std::invalid_argument("gbrt: learning_rate must be > 0");
    if (config.n_estimators < 1)
        throw std::invalid_argument("gbrt: n_estimators must be >= 1");
}

void GbrtRegressor::do_fit(const Matrix& x, const Vector& y) {
    const Eigen::Index n = x.rows();
    init_ = y.mean();
    Vector current = Vector::Constant(n, init_);
    std::vector<int> all_rows(n);
    std::iota(all_rows.begin(), all_rows.end(), 0);

    stages_.reserve(config_.n_estimators);
    training_loss_.reserve(config_.n_estimators);
    for (int stage = 0; stage < config_.n_estimators; ++stage) {
        const Vector residual = y - current;
        SeqRng rng(config_.seed, static_cast<std::uint64_t>(stage));
        DecisionTreeRegressor tree(stage_config(config_));
        tree.fit_rows(x, residual, all_rows, n, &rng);
        for (Eigen::Index r = 0; r < n; ++r)
            current(r) += config_.learning_rate * tree.predict_row(x, r);
        stages_.push_back(std::move(tree));
        training_loss_.push_back((y - current).squaredNorm() / static_cast<double>(n));
    }
}

Vector GbrtRegressor::do_predict(const Matrix& x) const {
    Vector out = Vector::Constant(x.rows(), init_);
    for (const auto& tree : stages_)
        for (Eigen::Index r = 0; r < x.rows(); ++r)
            out(r) += config_.learning_rate * tree.predict_row(x, r);
    return out;
}

nlohmann::json GbrtRegressor::to_json() const {
    nlohmann::json j;
    j["format_version"] = 1;
    j["kind"] = kind();
    j["learning_rate"] = config_.learning_rate;
    j["n_estimators"] = config_.n_estimators;
    j["max_depth"] = config_.max_depth;
    j["max_features"] = config_.max_features == MaxFeatures::All ? "all" : "log2";
    j["min_samples_leaf"] = config_.min_samples_leaf;
    j["seed"] = config_.seed;
    j["init"] = init_;
    j["training_loss"] = training_loss_;
    nlohmann::json members = nlohmann::json::array();
    for (const auto& tree : stages_)
        members.push_back(DecisionTreeRegressor::nodes_to_json(tree.nodes()));
    j["trees"] = std::move(members);
    j["n_features"] = n_features();
    return j;
}

std::unique_ptr<Regressor> GbrtRegressor::from_json(const nlohmann::json& j) {
    GbrtConfig c;
    c.learning_rate = j.at("learning_rate").get<double>();
    c.n_estimators = j.at("n_estimators").get<int>();
    c.max_depth = j.at("max_depth").get<int>();
    c.max_features =
        j.at("max_features").get<std::string>() == "all" ? MaxFeatures::All : MaxFeatures::Log2;
    c.min_samples_leaf = j.at("min_samples_leaf").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    auto m = std::make_unique<GbrtRegressor>(c);
    m->init_ = j.at("init").get<double>();
    m->training_loss_ = j.at("training_loss").get<std::vector<double>>();
    for (const auto& nodes : j.at("trees")) {
        DecisionTreeRegressor tree(stage_config(c));
        tree.restore_nodes(DecisionTreeRegressor::nodes_from_json(nodes));
        m->stages_.push_back(std::move(tree));
    }
    m->restore_n_features(j.at("n_features").get<int>());
    return m;
}

std::unique_ptr<Regressor> GbrtRegressor::clone_unfitted() const {
    return std::make_unique<GbrtRegressor>(config_);
}

}  // namespace bermuda::ml
