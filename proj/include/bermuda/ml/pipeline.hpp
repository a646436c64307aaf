#pragma once

#include <memory>
#include <optional>

#include "bermuda/ml/model.hpp"
#include "bermuda/ml/preprocess.hpp"

namespace bermuda::ml {

enum class FeatureTransform { None, Standardize, StandardizePoly };
enum class TargetTransform { None, Standardize };

/// Preprocessing plus model, fitted as one unit. Transform statistics come
/// from the data given to fit() only; predict() applies the inverse target
/// transform, so scores are always in target units.
class Pipeline {
  public:
    Pipeline(FeatureTransform ft, int poly_degree, TargetTransform tt,
             std::unique_ptr<Regressor> model);

    void fit(const Matrix& x, const Vector& y);
    Vector predict(const Matrix& x) const;
    bool fitted() const { return model_->fitted(); }

    const Regressor& model() const { return *model_; }
    FeatureTransform feature_transform() const { return feature_transform_; }
    double complexity_hint() const;

    Pipeline clone_unfitted() const;

    nlohmann::json to_json() const;
    static Pipeline from_json(const nlohmann::json& j);

  private:
    FeatureTransform feature_transform_;
    int poly_degree_;
    TargetTransform target_transform_;
    std::unique_ptr<Regressor> model_;

    Standardizer feature_scaler_;
    std::optional<PolynomialExpander> expander_;
    Standardizer target_scaler_;

    Matrix apply_features(const Matrix& x) const;
};

/// Pipeline factory keyed by model kind, with the production defaults:
///   knn   - standardized features, k = 4
///   ridge - standardized features + degree-6 polynomial, alpha = 0.01
///   tree  - raw features, depth 11, leaf floor 1% of the training set
///   random_forest - raw, 500 trees, depth 17, log2 feature subsets
///   gbrt  - raw, 1000 stages, depth 5, rate 0.1, log2 feature subsets
///   mlp   - standardized features and target, 4x100 relu
/// `hyper` overrides individual fields; `seed` drives every stochastic fit.
Pipeline make_pipeline(const std::string& kind, const nlohmann::json& hyper,
                       std::uint64_t seed);

const std::vector<std::string>& model_kinds();
bool is_tree_based(const std::string& kind);

}  // namespace bermuda::ml
