#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "bermuda/importance.hpp"
#include "bermuda/ml/forest.hpp"
#include "bermuda/ml/knn.hpp"
#include "bermuda/ml/ridge.hpp"
#include "bermuda/ml/tree.hpp"
#include "bermuda/rng.hpp"

using namespace bermuda;
using namespace bermuda::ml;

namespace {

Matrix random_matrix(int rows, int cols, std::uint64_t seed) {
    SeqRng rng(seed);
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = rng.normal();
    return m;
}

double total(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

TEST_CASE("impurity importance: informative feature takes everything at depth 1") {
    const Matrix x = random_matrix(100, 2, 1);
    Vector y(100);
    for (int i = 0; i < 100; ++i) y(i) = x(i, 0) > 0.0 ? 1.0 : 0.0;  // feature 1 is noise

    TreeConfig cfg;
    cfg.max_depth = 1;
    DecisionTreeRegressor tree(cfg);
    tree.fit(x, y);
    const auto rep = impurity_importance(tree);
    CHECK(rep.method == "impurity");
    CHECK(rep.importance[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.importance[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("impurity importance sums to one for any fitted forest") {
    const Matrix x = random_matrix(120, 4, 2);
    Vector y(120);
    for (int i = 0; i < 120; ++i) y(i) = 2.0 * x(i, 0) + x(i, 1) * x(i, 1);
    ForestConfig cfg;
    cfg.n_estimators = 25;
    cfg.max_depth = 6;
    cfg.seed = 3;
    RandomForestRegressor forest(cfg);
    forest.fit(x, y);
    const auto rep = impurity_importance(forest);
    CHECK(total(rep.importance) == doctest::Approx(1.0).epsilon(1e-12));
    for (double v : rep.importance) CHECK(v >= 0.0);
}

TEST_CASE("impurity importance rejects non-tree models") {
    const Matrix x = random_matrix(30, 2, 4);
    Vector y(30);
    for (int i = 0; i < 30; ++i) y(i) = x(i, 0);
    RidgeRegressor ridge(0.1);
    ridge.fit(x, y);
    CHECK_THROWS_AS(impurity_importance(ridge), std::invalid_argument);
}

TEST_CASE("permutation importance: ignored features score zero") {
    const Matrix x = random_matrix(100, 2, 5);
    Vector y(100);
    SeqRng noise(55);
    for (int i = 0; i < 100; ++i)
        y(i) = (x(i, 0) > 0.0 ? 1.0 : 0.0) + 0.01 * noise.normal();

    TreeConfig cfg;
    cfg.max_depth = 1;
    Pipeline pipe(FeatureTransform::None, 0, TargetTransform::None,
                  std::make_unique<DecisionTreeRegressor>(cfg));
    pipe.fit(x, y);
    const auto rep = permutation_importance(pipe, x, y, 5, 42);
    CHECK(rep.method == "permutation");
    CHECK_FALSE(rep.degenerate);
    // the depth-1 tree splits on feature 0 only; shuffling feature 1 leaves
    // every prediction unchanged, so its raw degradation is exactly zero
    CHECK(rep.importance[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.importance[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("permutation importance: single feature normalizes to one") {
    const Matrix x = random_matrix(60, 1, 6);
    Vector y(60);
    SeqRng noise(7);
    for (int i = 0; i < 60; ++i) y(i) = 2.0 * x(i, 0) + 0.01 * noise.normal();
    Pipeline pipe(FeatureTransform::None, 0, TargetTransform::None,
                  std::make_unique<RidgeRegressor>(0.0));
    pipe.fit(x, y);
    const auto rep = permutation_importance(pipe, x, y, 3, 1);
    REQUIRE(rep.importance.size() == 1);
    CHECK(rep.importance[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("permutation importance ranks a strong signal above a weak one") {
    const Matrix x = random_matrix(200, 2, 8);
    Vector y(200);
    SeqRng noise(9);
    for (int i = 0; i < 200; ++i) y(i) = 10.0 * x(i, 0) + 0.1 * x(i, 1) + 0.01 * noise.normal();
    Pipeline pipe(FeatureTransform::Standardize, 0, TargetTransform::None,
                  std::make_unique<RidgeRegressor>(0.0));
    pipe.fit(x, y);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto rep = permutation_importance(pipe, x, y, 5, seed);
        CHECK(rep.importance[0] > rep.importance[1]);
    }
}

TEST_CASE("zero baseline error falls back to uniform importances with a flag") {
    Matrix x(4, 2);
    x << 1, 0, 2, 0, 3, 0, 4, 0;
    Vector y = Vector::Constant(4, 5.0);
    TreeConfig cfg;
    Pipeline pipe(FeatureTransform::None, 0, TargetTransform::None,
                  std::make_unique<DecisionTreeRegressor>(cfg));
    pipe.fit(x, y);  // constant target: tree predicts 5 everywhere, mse = 0
    const auto rep = permutation_importance(pipe, x, y, 2, 3);
    CHECK(rep.degenerate);
    CHECK(rep.importance[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.importance[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("importance reports always sum to one") {
    const Matrix x = random_matrix(80, 3, 10);
    Vector y(80);
    for (int i = 0; i < 80; ++i) y(i) = std::abs(x(i, 1));
    Pipeline knn(FeatureTransform::Standardize, 0, TargetTransform::None,
                 std::make_unique<KnnRegressor>(4));
    knn.fit(x, y);
    const auto rep = permutation_importance(knn, x, y, 4, 11);
    CHECK(total(rep.importance) == doctest::Approx(1.0).epsilon(1e-12));
}
