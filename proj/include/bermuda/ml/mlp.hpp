#pragma once

#include <vector>

#include "bermuda/ml/model.hpp"

namespace bermuda::ml {

struct MlpConfig {
    int n_hidden = 4;      // hidden layers
    int n_neurons = 100;   // units per hidden layer
    double learning_rate = 0.01;
    int batch_size = 32;
    int epochs = 200;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t seed = 0;
};

/// Dense feed-forward regressor: ReLU hidden layers, linear output, He-normal
/// initialization, squared loss trained by mini-batch back-propagation with
/// Nesterov-accelerated adaptive moments. Deterministic given the seed (batch
/// order is a seeded shuffle). Expects standardized features and target.
class MlpRegressor : public Regressor {
  public:
    explicit MlpRegressor(MlpConfig config);

    std::string kind() const override { return "mlp"; }
    double complexity_hint() const override {
        return static_cast<double>(config_.n_hidden) * config_.n_neurons * config_.n_neurons;
    }
    nlohmann::json to_json() const override;
    std::unique_ptr<Regressor> clone_unfitted() const override;
    static std::unique_ptr<Regressor> from_json(const nlohmann::json& j);

    const MlpConfig& config() const { return config_; }
    const std::vector<Matrix>& weights() const { return w_; }
    const std::vector<Vector>& biases() const { return b_; }

    // Mean squared error and its analytic gradients at the current weights
    // (diagnostics; the finite-difference check drives this).
    struct Gradients {
        double loss = 0.0;
        std::vector<Matrix> dw;
        std::vector<Vector> db;
    };
    Gradients loss_and_gradients(const Matrix& x, const Vector& y) const;

  protected:
    void do_fit(const Matrix& x, const Vector& y) override;
    Vector do_predict(const Matrix& x) const override;

  private:
    void init_weights(int n_features);

    MlpConfig config_;
    std::vector<Matrix> w_;  // layer l: (out x in)
    std::vector<Vector> b_;
};

}  // namespace bermuda::ml
