#include "bermuda/ml/knn.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace bermuda::ml {

KnnRegressor::KnnRegressor(int k) : k_(k) {
    if (k < 1) throw std::invalid_argument("knn: k must be >= 1");
}

void KnnRegressor::do_fit(const Matrix& x, const Vector& y) {
    if (x.rows() < k_)
        throw std::invalid_argument("knn: k exceeds the number of training rows");
    train_x_ = x;
    train_y_ = y;
}

Vector KnnRegressor::do_predict(const Matrix& x) const {
    const Eigen::Index n = train_x_.rows();
    Vector out(x.rows());
    std::vector<std::pair<double, Eigen::Index>> dist(n);
    for (Eigen::Index q = 0; q < x.rows(); ++q) {
        for (Eigen::Index i = 0; i < n; ++i)
            dist[i] = {(train_x_.row(i) - x.row(q)).squaredNorm(), i};
        std::partial_sort(dist.begin(), dist.begin() + k_, dist.end());
        double sum = 0.0;
        for (int j = 0; j < k_; ++j) sum += train_y_(dist[j].second);
        out(q) = sum / k_;
    }
    return out;
}

nlohmann::json KnnRegressor::to_json() const {
    nlohmann::json j;
    j["format_version"] = 1;
    j["kind"] = kind();
    j["k"] = k_;
    j["train_x"] = matrix_to_json(train_x_);
    j["train_y"] = vector_to_json(train_y_);
    j["n_features"] = n_features();
    return j;
}

std::unique_ptr<Regressor> KnnRegressor::from_json(const nlohmann::json& j) {
    auto m = std::make_unique<KnnRegressor>(j.at("k").get<int>());
    m->train_x_ = matrix_from_json(j.at("train_x"));
    m->train_y_ = vector_from_json(j.at("train_y"));
    m->restore_n_features(j.at("n_features").get<int>());
    return m;
}

std::unique_ptr<Regressor> KnnRegressor::clone_unfitted() const {
    return std::make_unique<KnnRegressor>(k_);
}

}  // namespace bermuda::ml
