#include "bermuda/ml/ridge.hpp"

#include <cmath>
#include <stdexcept>

namespace bermuda::ml {

RidgeRegressor::RidgeRegressor(double alpha) : alpha_(alpha) {
    if (alpha < 0.0 || !std::isfinite(alpha))
        throw std::invalid_argument("ridge: alpha must be >= 0");
}

void RidgeRegressor::do_fit(const Matrix& x, const Vector& y) {
    // Centering removes the intercept from the penalized problem.
    const Eigen::RowVectorXd x_mean = x.colwise().mean();
    const double y_mean = y.mean();
    const Matrix xc = x.rowwise() - x_mean;
    const Vector yc = y.array() - y_mean;

    const Eigen::Index p = x.cols();
    if (alpha_ == 0.0) {
        weights_ = xc.colPivHouseholderQr().solve(yc);
    } else {
        Matrix aug(x.rows() + p, p);
        aug.topRows(x.rows()) = xc;
        aug.bottomRows(p).setZero();
        aug.bottomRows(p).diagonal().setConstant(std::sqrt(alpha_));
        Vector rhs = Vector::Zero(x.rows() + p);
        rhs.head(x.rows()) = yc;
        weights_ = aug.colPivHouseholderQr().solve(rhs);
    }
    intercept_ = y_mean - x_mean * weights_;
}

Vector RidgeRegressor::do_predict(const Matrix& x) const {
    return (x * weights_).array() + intercept_;
}

double RidgeRegressor::complexity_hint() const {
    // Weight count is unknown before fit; the penalty strength orders ties.
    return 1.0 / (1.0 + alpha_);
}

nlohmann::json RidgeRegressor::to_json() const {
    nlohmann::json j;
    j["format_version"] = 1;
    j["kind"] = kind();
    j["alpha"] = alpha_;
    j["weights"] = vector_to_json(weights_);
    j["intercept"] = intercept_;
    j["n_features"] = n_features();
    return j;
}

std::unique_ptr<Regressor> RidgeRegressor::from_json(const nlohmann::json& j) {
    auto m = std::make_unique<RidgeRegressor>(j.at("alpha").get<double>());
    m->weights_ = vector_from_json(j.at("weights"));
    m->intercept_ = j.at("intercept").get<double>();
    m->restore_n_features(j.at("n_features").get<int>());
    return m;
}

std::unique_ptr<Regressor> RidgeRegressor::clone_unfitted() const {
    return std::make_unique<RidgeRegressor>(alpha_);
}

}  // namespace bermuda::ml
