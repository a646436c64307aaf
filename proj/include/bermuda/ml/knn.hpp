#pragma once

#include "bermuda/ml/model.hpp"

namespace bermuda::ml {

/// k-nearest-neighbour regression: unweighted mean of the k closest training
/// targets under Euclidean distance, distance ties broken by the lowest
/// training-row index. Expects standardized features upstream.
class KnnRegressor : public Regressor {
  public:
    explicit KnnRegressor(int k);

    std::string kind() const override { return "knn"; }
    double complexity_hint() const override { return 1.0 / k_; }
    nlohmann::json to_json() const override;
    std::unique_ptr<Regressor> clone_unfitted() const override;
    static std::unique_ptr<Regressor> from_json(const nlohmann::json& j);

    int k() const { return k_; }

  protected:
    void do_fit(const Matrix& x, const Vector& y) override;
    Vector do_predict(const Matrix& x) const override;

  private:
    int k_;
    Matrix train_x_;
    Vector train_y_;
};

}  // namespace bermuda::ml
