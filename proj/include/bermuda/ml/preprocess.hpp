#pragma once

#include <vector>

#include "bermuda/ml/model.hpp"

namespace bermuda::ml {

/// Column-wise standardization to zero mean and unit (population) variance,
/// with statistics taken from the data passed to fit() only. Zero-variance
/// columns are flagged and transform to exactly 0.
class Standardizer {
  public:
    void fit(const Matrix& x);
    Matrix transform(const Matrix& x) const;
    Matrix fit_transform(const Matrix& x);

    void fit(const Vector& y);
    Vector transform(const Vector& y) const;
    Vector inverse_transform(const Vector& y) const;

    bool fitted() const { return mean_.size() > 0; }
    const Vector& mean() const { return mean_; }
    const Vector& inv_sd() const { return inv_sd_; }
    const std::vector<int>& zero_variance_columns() const { return zero_variance_; }

    nlohmann::json to_json() const;
    static Standardizer from_json(const nlohmann::json& j);

  private:
    Vector mean_;
    Vector inv_sd_;
    std::vector<int> zero_variance_;
};

/// All monomials of total degree 1..degree over the input columns, including
/// cross terms, ordered by ascending degree and lexicographic variable
/// combination: (x, y) at degree 2 expands to (x, y, x^2, xy, y^2). The bias
/// column is left to the downstream intercept.
class PolynomialExpander {
  public:
    PolynomialExpander(int n_features, int degree);

    Matrix expand(const Matrix& x) const;
    int n_output() const { return static_cast<int>(combos_.size()); }
    int n_input() const { return n_features_; }
    int degree() const { return degree_; }

    static long output_columns(int n_features, int degree);

  private:
    int n_features_;
    int degree_;
    std::vector<std::vector<int>> combos_;  // non-decreasing variable indices
};

}  // namespace bermuda::ml
