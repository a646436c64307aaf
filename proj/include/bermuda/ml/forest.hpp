#pragma once

#include "bermuda/ml/tree.hpp"

namespace bermuda::ml {

struct ForestConfig {
    int n_estimators = 500;
    int max_depth = 17;
    MaxFeatures max_features = MaxFeatures::Log2;
    bool bootstrap = true;
    int min_samples_leaf = 1;
    std::uint64_t seed = 0;
};

/// Bagged ensemble of CART trees with per-split feature subsampling; the
/// prediction is the arithmetic mean over members. Each tree owns an rng
/// derived from (seed, tree index), so training parallelism cannot change
/// the result.
class RandomForestRegressor : public Regressor {
  public:
    explicit RandomForestRegressor(ForestConfig config);

    std::string kind() const override { return "random_forest"; }
    double complexity_hint() const override {
        return static_cast<double>(config_.n_estimators) *
               (config_.max_depth < 0 ? 64.0 : config_.max_depth);
    }
    nlohmann::json to_json() const override;
    std::unique_ptr<Regressor> clone_unfitted() const override;
    static std::unique_ptr<Regressor> from_json(const nlohmann::json& j);

    const std::vector<DecisionTreeRegressor>& trees() const { return trees_; }
    const ForestConfig& config() const { return config_; }

  protected:
    void do_fit(const Matrix& x, const Vector& y) override;
    Vector do_predict(const Matrix& x) const override;

  private:
    ForestConfig config_;
    std::vector<DecisionTreeRegressor> trees_;
};

}  // namespace bermuda::ml
