#include "bermuda/ml/preprocess.hpp"

#include <cmath>
#include <stdexcept>

namespace bermuda::ml {

void Standardizer::fit(const Matrix& x) {
    if (x.rows() < 2) throw std::invalid_argument("Standardizer: need at least 2 rows");
    mean_ = x.colwise().mean();
    inv_sd_.resize(x.cols());
    zero_variance_.clear();
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
        const double var = (x.col(c).array() - mean_(c)).square().mean();
        if (var > 0.0) {
            inv_sd_(c) = 1.0 / std::sqrt(var);
        } else {
            inv_sd_(c) = 0.0;  // constant column transforms to exactly 0
            zero_variance_.push_back(static_cast<int>(c));
        }
    }
}

Matrix Standardizer::transform(const Matrix& x) const {
    if (!fitted()) throw std::logic_error("Standardizer: transform before fit");
    if (x.cols() != mean_.size())
        throw std::invalid_argument("Standardizer: column count mismatch");
    return (x.rowwise() - mean_.transpose()).array().rowwise() *
           inv_sd_.transpose().array();
}

Matrix Standardizer::fit_transform(const Matrix& x) {
    fit(x);
    return transform(x);
}

void Standardizer::fit(const Vector& y) { fit(Matrix(y)); }

Vector Standardizer::transform(const Vector& y) const {
    return transform(Matrix(y)).col(0);
}

Vector Standardizer::inverse_transform(const Vector& y) const {
    if (!fitted()) throw std::logic_error("Standardizer: inverse before fit");
    if (mean_.size() != 1) throw std::logic_error("Standardizer: not a target scaler");
    const double sd = inv_sd_(0) > 0.0 ? 1.0 / inv_sd_(0) : 0.0;
    return (y.array() * sd + mean_(0)).matrix();
}

nlohmann::json Standardizer::to_json() const {
    nlohmann::json j;
    j["mean"] = vector_to_json(mean_);
    j["inv_sd"] = vector_to_json(inv_sd_);
    return j;
}

Standardizer Standardizer::from_json(const nlohmann::json& j) {
    Standardizer s;
    s.mean_ = vector_from_json(j.at("mean"));
    s.inv_sd_ = vector_from_json(j.at("inv_sd"));
    for (Eigen::Index c = 0; c < s.inv_sd_.size(); ++c)
        if (s.inv_sd_(c) == 0.0) s.zero_variance_.push_back(static_cast<int>(c));
    return s;
}

long PolynomialExpander::output_columns(int n_features, int degree) {
    // C(p + d, d) - 1 monomials of total degree 1..d
    long count = 1;
    for (int i = 1; i <= degree; ++i)
        count = count * (n_features + i) / i;
    return count - 1;
}

PolynomialExpander::PolynomialExpander(int n_features, int degree)
    : n_features_(n_features), degree_(degree) {
    if (degree < 1) throw std::invalid_argument("PolynomialExpander: degree must be >= 1");
    if (n_features < 1) throw std::invalid_argument("PolynomialExpander: need features");
    if (output_columns(n_features, degree) > 100000)
        throw std::invalid_argument("PolynomialExpander: expansion exceeds 1e5 columns");

    // Non-decreasing index combinations per total degree, lexicographic.
    for (int deg = 1; deg <= degree; ++deg) {
        std::vector<int> combo(deg, 0);
        while (true) {
            combos_.push_back(combo);
            int pos = deg - 1;
            while (pos >= 0 && combo[pos] == n_features - 1) --pos;
            if (pos < 0) break;
            const int next = combo[pos] + 1;
            for (int i = pos; i < deg; ++i) combo[i] = next;
        }
    }
}

Matrix PolynomialExpander::expand(const Matrix& x) const {
    if (x.cols() != n_features_)
        throw std::invalid_argument("PolynomialExpander: column count mismatch");
    Matrix out(x.rows(), static_cast<Eigen::Index>(combos_.size()));
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
        for (std::size_t c = 0; c < combos_.size(); ++c) {
            double v = 1.0;
            for (int idx : combos_[c]) v *= x(r, idx);
            out(r, static_cast<Eigen::Index>(c)) = v;
        }
    }
    return out;
}

}  // namespace bermuda::ml
