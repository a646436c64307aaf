#include "bermuda/ml/model.hpp"

#include <stdexcept>

#include "bermuda/ml/forest.hpp"
#include "bermuda/ml/gbrt.hpp"
#include "bermuda/ml/knn.hpp"
#include "bermuda/ml/mlp.hpp"
#include "bermuda/ml/ridge.hpp"
#include "bermuda/ml/tree.hpp"

namespace bermuda::ml {

void Regressor::fit(const Matrix& x, const Vector& y) {
    if (fitted()) throw std::logic_error(kind() + ": model is already fitted");
    if (x.rows() != y.size()) throw std::invalid_argument(kind() + ": X/y row mismatch");
    if (x.rows() < 1) throw std::invalid_argument(kind() + ": empty training data");
    if (!x.allFinite() || !y.allFinite())
        throw std::invalid_argument(kind() + ": non-finite training data");
    do_fit(x, y);
    n_features_ = static_cast<int>(x.cols());
}

Vector Regressor::predict(const Matrix& x) const {
    if (!fitted()) throw std::logic_error(kind() + ": predict before fit");
    if (x.cols() != n_features_)
        throw std::invalid_argument(kind() + ": query has " + std::to_string(x.cols()) +
                                    " features, model expects " + std::to_string(n_features_));
    return do_predict(x);
}

std::unique_ptr<Regressor> regressor_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (j.at("format_version").get<int>() != 1)
        throw std::runtime_error("model json: unsupported format version");
    if (kind == "knn") return KnnRegressor::from_json(j);
    if (kind == "ridge") return RidgeRegressor::from_json(j);
    if (kind == "tree") return DecisionTreeRegressor::from_json(j);
    if (kind == "random_forest") return RandomForestRegressor::from_json(j);
    if (kind == "gbrt") return GbrtRegressor::from_json(j);
    if (kind == "mlp") return MlpRegressor::from_json(j);
    throw std::runtime_error("model json: unknown kind '" + kind + "'");
}

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
    const auto rows = j.size();
    if (rows == 0) return Matrix(0, 0);
    const auto cols = j.at(0).size();
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = j.at(r).at(c).get<double>();
    return m;
}

nlohmann::json vector_to_json(const Vector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Vector vector_from_json(const nlohmann::json& j) {
    Vector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v(i) = j.at(i).get<double>();
    return v;
}

}  // namespace bermuda::ml
