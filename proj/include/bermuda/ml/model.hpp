#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>

#include <json.hpp>

namespace bermuda::ml {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Base of all surrogate regressors.
///
/// fit() may be called once; the fitted state is immutable afterwards.
/// predict() rejects feature-dimension mismatches. Every model serializes to
/// versioned JSON that reloads to bit-identical predictions.
class Regressor {
  public:
    virtual ~Regressor() = default;

    void fit(const Matrix& x, const Vector& y);
    Vector predict(const Matrix& x) const;

    bool fitted() const { return n_features_ >= 0; }
    int n_features() const { return n_features_; }

    virtual std::string kind() const = 0;
    // Rough parameter-count proxy, defined before fitting; used only to break
    // exact score ties in model selection (fewer parameters wins).
    virtual double complexity_hint() const = 0;
    virtual nlohmann::json to_json() const = 0;
    virtual std::unique_ptr<Regressor> clone_unfitted() const = 0;

  protected:
    virtual void do_fit(const Matrix& x, const Vector& y) = 0;
    virtual Vector do_predict(const Matrix& x) const = 0;
    void restore_n_features(int n) { n_features_ = n; }

  private:
    int n_features_ = -1;
};

// Reconstructs any serialized regressor from its JSON form.
std::unique_ptr<Regressor> regressor_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

}  // namespace bermuda::ml
