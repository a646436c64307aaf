#pragma once

#include "bermuda/ml/model.hpp"

namespace bermuda::ml {

/// L2-regularized linear regression with an unpenalized intercept, solved by
/// QR on the centered, penalty-augmented system. alpha = 0 recovers ordinary
/// least squares.
class RidgeRegressor : public Regressor {
  public:
    explicit RidgeRegressor(double alpha);

    std::string kind() const override { return "ridge"; }
    double complexity_hint() const override;
    nlohmann::json to_json() const override;
    std::unique_ptr<Regressor> clone_unfitted() const override;
    static std::unique_ptr<Regressor> from_json(const nlohmann::json& j);

    const Vector& weights() const { return weights_; }
    double intercept() const { return intercept_; }
    double alpha() const { return alpha_; }

  protected:
    void do_fit(const Matrix& x, const Vector& y) override;
    Vector do_predict(const Matrix& x) const override;

  private:
    double alpha_;
    Vector weights_;
    double intercept_ = 0.0;
};

}  // namespace bermuda::ml
