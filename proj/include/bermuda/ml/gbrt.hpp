#pragma once

#include "bermuda/ml/tree.hpp"

namespace bermuda::ml {

struct GbrtConfig {
    double learning_rate = 0.1;
    int n_estimators = 1000;
    int max_depth = 5;
    MaxFeatures max_features = MaxFeatures::Log2;
    int min_samples_leaf = 1;
    std::uint64_t seed = 0;
};

/// Stagewise least-squares boosting: start from the target mean, then fit
/// depth-bounded trees to the residuals, each contributing learning_rate
/// times its prediction. The recorded training loss is non-increasing by
/// construction for learning rates in (0, 2).
class GbrtRegressor : public Regressor {
  public:
    explicit GbrtRegressor(GbrtConfig config);

    std::string kind() const override { return "gbrt"; }
    double complexity_hint() const override {
        return static_cast<double>(config_.n_estimators) * config_.max_depth;
    }
    nlohmann::json to_json() const override;
    std::unique_ptr<Regressor> clone_unfitted() const override;
    static std::unique_ptr<Regressor> from_json(const nlohmann::json& j);

    const std::vector<DecisionTreeRegressor>& trees() const { return stages_; }
    const std::vector<double>& training_loss() const { return training_loss_; }
    double init_value() const { return init_; }
    const GbrtConfig& config() const { return config_; }

  protected:
    void do_fit(const Matrix& x, const Vector& y) override;
    Vector do_predict(const Matrix& x) const override;

  private:
    GbrtConfig config_;
    double init_ = 0.0;
    std::vector<DecisionTreeRegressor> stages_;
    std::vector<double> training_loss_;  // MSE after each stage
};

}  // namespace bermuda::ml
