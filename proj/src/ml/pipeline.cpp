#include "bermuda/ml/pipeline.hpp"

#include <stdexcept>

#include "bermuda/ml/forest.hpp"
#include "bermuda/ml/gbrt.hpp"
#include "bermuda/ml/knn.hpp"
#include "bermuda/ml/mlp.hpp"
#include "bermuda/ml/ridge.hpp"
#include "bermuda/ml/tree.hpp"

namespace bermuda::ml {

Pipeline::Pipeline(FeatureTransform ft, int poly_degree, TargetTransform tt,
                   std::unique_ptr<Regressor> model)
    : feature_transform_(ft),
      poly_degree_(poly_degree),
      target_transform_(tt),
      model_(std::move(model)) {
    if (!model_) throw std::invalid_argument("Pipeline: null model");
    if (ft == FeatureTransform::StandardizePoly && poly_degree < 1)
        throw std::invalid_argument("Pipeline: polynomial transform needs a degree");
}

Matrix Pipeline::apply_features(const Matrix& x) const {
    switch (feature_transform_) {
        case FeatureTransform::None:
            return x;
        case FeatureTransform::Standardize:
            return feature_scaler_.transform(x);
        case FeatureTransform::StandardizePoly:
            return expander_->expand(feature_scaler_.transform(x));
    }
    throw std::logic_error("Pipeline: unknown feature transform");
}

void Pipeline::fit(const Matrix& x, const Vector& y) {
    if (feature_transform_ != FeatureTransform::None) feature_scaler_.fit(x);
    if (feature_transform_ == FeatureTransform::StandardizePoly)
        expander_.emplace(static_cast<int>(x.cols()), poly_degree_);

    Vector yt = y;
    if (target_transform_ == TargetTransform::Standardize) {
        target_scaler_.fit(y);
        yt = target_scaler_.transform(y);
    }
    model_->fit(apply_features(x), yt);
}

Vector Pipeline::predict(const Matrix& x) const {
    Vector out = model_->predict(apply_features(x));
    if (target_transform_ == TargetTransform::Standardize)
        out = target_scaler_.inverse_transform(out);
    return out;
}

double Pipeline::complexity_hint() const {
    double hint = model_->complexity_hint();
    if (feature_transform_ == FeatureTransform::StandardizePoly)
        hint *= static_cast<double>(poly_degree_);
    return hint;
}

Pipeline Pipeline::clone_unfitted() const {
    return Pipeline(feature_transform_, poly_degree_, target_transform_,
                    model_->clone_unfitted());
}

namespace {

std::string ft_name(FeatureTransform ft) {
    switch (ft) {
        case FeatureTransform::None:
            return "none";
        case FeatureTransform::Standardize:
            return "standardize";
        case FeatureTransform::StandardizePoly:
            return "standardize_poly";
    }
    return "none";
}

FeatureTransform ft_from(const std::string& s) {
    if (s == "none") return FeatureTransform::None;
    if (s == "standardize") return FeatureTransform::Standardize;
    if (s == "standardize_poly") return FeatureTransform::StandardizePoly;
    throw std::runtime_error("pipeline json: unknown feature transform '" + s + "'");
}

}  // namespace

nlohmann::json Pipeline::to_json() const {
    nlohmann::json j;
    j["format_version"] = 1;
    j["feature_transform"] = ft_name(feature_transform_);
    j["poly_degree"] = poly_degree_;
    j["target_transform"] =
        target_transform_ == TargetTransform::Standardize ? "standardize" : "none";
    if (feature_transform_ != FeatureTransform::None)
        j["feature_scaler"] = feature_scaler_.to_json();
    if (target_transform_ == TargetTransform::Standardize)
        j["target_scaler"] = target_scaler_.to_json();
    j["model"] = model_->to_json();
    return j;
}

Pipeline Pipeline::from_json(const nlohmann::json& j) {
    if (j.at("format_version").get<int>() != 1)
        throw std::runtime_error("pipeline json: unsupported format version");
    Pipeline p(ft_from(j.at("feature_transform").get<std::string>()),
               j.at("poly_degree").get<int>(),
               j.at("target_transform").get<std::string>() == "standardize"
                   ? TargetTransform::Standardize
                   : TargetTransform::None,
               regressor_from_json(j.at("model")));
    if (p.feature_transform_ != FeatureTransform::None)
        p.feature_scaler_ = Standardizer::from_json(j.at("feature_scaler"));
    if (p.feature_transform_ == FeatureTransform::StandardizePoly)
        p.expander_.emplace(static_cast<int>(p.feature_scaler_.mean().size()), p.poly_degree_);
    if (p.target_transform_ == TargetTransform::Standardize)
        p.target_scaler_ = Standardizer::from_json(j.at("target_scaler"));
    return p;
}

Pipeline make_pipeline(const std::string& kind, const nlohmann::json& hyper,
                       std::uint64_t seed) {
    const auto get = [&hyper](const char* key, auto fallback) {
        using T = decltype(fallback);
        return hyper.contains(key) ? hyper.at(key).get<T>() : fallback;
    };
    const auto max_feat = [&](const std::string& fallback) {
        return get("max_features", fallback) == std::string("all") ? MaxFeatures::All
                                                                   : MaxFeatures::Log2;
    };

    if (kind == "knn") {
        return Pipeline(FeatureTransform::Standardize, 0, TargetTransform::None,
                        std::make_unique<KnnRegressor>(get("k", 4)));
    }
    if (kind == "ridge") {
        return Pipeline(FeatureTransform::StandardizePoly, get("degree", 6),
                        TargetTransform::None,
                        std::make_unique<RidgeRegressor>(get("alpha", 0.01)));
    }
    if (kind == "tree") {
        TreeConfig cfg;
        cfg.max_depth = get("max_depth", 11);
        // below 1 the leaf floor reads as a fraction of the training set
        const double leaf = get("min_samples_leaf", 0.01);
        if (leaf < 1.0)
            cfg.min_samples_leaf_fraction = leaf;
        else
            cfg.min_samples_leaf = static_cast<int>(leaf);
        return Pipeline(FeatureTransform::None, 0, TargetTransform::None,
                        std::make_unique<DecisionTreeRegressor>(cfg));
    }
    if (kind == "random_forest") {
        ForestConfig cfg;
        cfg.n_estimators = get("n_estimators", 500);
        cfg.max_depth = get("max_depth", 17);
        cfg.max_features = max_feat("log2");
        cfg.seed = seed;
        return Pipeline(FeatureTransform::None, 0, TargetTransform::None,
                        std::make_unique<RandomForestRegressor>(cfg));
    }
    if (kind == "gbrt") {
        GbrtConfig cfg;
        cfg.learning_rate = get("learning_rate", 0.1);
        cfg.n_estimators = get("n_estimators", 1000);
        cfg.max_depth = get("max_depth", 5);
        cfg.max_features = max_feat("log2");
        cfg.seed = seed;
        return Pipeline(FeatureTransform::None, 0, TargetTransform::None,
                        std::make_unique<GbrtRegressor>(cfg));
    }
    if (kind == "mlp") {
        MlpConfig cfg;
        cfg.n_hidden = get("n_hidden", 4);
        cfg.n_neurons = get("n_neurons", 100);
        cfg.learning_rate = get("learning_rate", 0.01);
        cfg.batch_size = get("batch_size", 32);
        cfg.epochs = get("epochs", 200);
        cfg.seed = seed;
        return Pipeline(FeatureTransform::Standardize, 0, TargetTransform::Standardize,
                        std::make_unique<MlpRegressor>(cfg));
    }
    throw std::invalid_argument("make_pipeline: unknown model kind '" + kind + "'");
}

const std::vector<std::string>& model_kinds() {
    static const std::vector<std::string> kinds{"knn",           "ridge", "tree",
                                                "random_forest", "gbrt",  "mlp"};
    return kinds;
}

bool is_tree_based(const std::string& kind) {
    return kind == "tree" || kind == "random_forest" || kind == "gbrt";
}

}  // namespace bermuda::ml
