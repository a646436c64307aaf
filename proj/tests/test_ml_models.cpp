#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bermuda/ml/forest.hpp"
#include "bermuda/ml/gbrt.hpp"
#include "bermuda/ml/knn.hpp"
#include "bermuda/ml/preprocess.hpp"
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

}  // namespace

TEST_CASE("standardizer: two-point symmetry, constant column, random matrix") {
    Matrix x(2, 1);
    x << 0.0, 2.0;
    Standardizer s;
    const Matrix t = s.fit_transform(x);
    CHECK(t(0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(t(1, 0) == doctest::Approx(1.0).epsilon(1e-14));

    Matrix c(3, 2);
    c << 5.0, 1.0, 5.0, 2.0, 5.0, 3.0;
    Standardizer s2;
    const Matrix t2 = s2.fit_transform(c);
    CHECK(s2.zero_variance_columns() == std::vector<int>{0});
    for (int r = 0; r < 3; ++r) CHECK(t2(r, 0) == 0.0);
    // constant columns stay pinned to zero for unseen values too
    Matrix q(1, 2);
    q << 7.0, 2.0;
    CHECK(s2.transform(q)(0, 0) == 0.0);

    const Matrix big = random_matrix(100, 6, 33);
    Standardizer s3;
    const Matrix t3 = s3.fit_transform(big);
    for (int col = 0; col < 6; ++col) {
        CHECK(std::abs(t3.col(col).mean()) < 1e-12);
        const double var = (t3.col(col).array() - t3.col(col).mean()).square().mean();
        CHECK(var == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("polynomial expansion: enumeration order, counts, numeric spot check") {
    PolynomialExpander pe(2, 2);
    CHECK(pe.n_output() == 5);
    Matrix x(1, 2);
    x << 2.0, 3.0;
    const Matrix e = pe.expand(x);
    CHECK(e(0, 0) == 2.0);   // x
    CHECK(e(0, 1) == 3.0);   // y
    CHECK(e(0, 2) == 4.0);   // x^2
    CHECK(e(0, 3) == 6.0);   // xy
    CHECK(e(0, 4) == 9.0);   // y^2

    CHECK(PolynomialExpander::output_columns(6, 6) == 923);
    CHECK(PolynomialExpander(6, 6).n_output() == 923);
    CHECK_THROWS(PolynomialExpander(100, 6));  // > 1e5 columns
}

TEST_CASE("ridge at alpha zero equals ordinary least squares") {
    const Matrix x = random_matrix(40, 3, 5);
    Vector y(40);
    SeqRng noise(6);
    for (int i = 0; i < 40; ++i)
        y(i) = 1.5 + 2.0 * x(i, 0) - 0.7 * x(i, 1) + 0.1 * noise.normal();

    RidgeRegressor ridge(0.0);
    ridge.fit(x, y);

    // normal-equation oracle with an explicit intercept column
    Matrix a(40, 4);
    a.col(0).setOnes();
    a.rightCols(3) = x;
    const Vector beta = (a.transpose() * a).ldlt().solve(a.transpose() * y);
    CHECK(ridge.intercept() == doctest::Approx(beta(0)).epsilon(1e-8));
    for (int j = 0; j < 3; ++j)
        CHECK(ridge.weights()(j) == doctest::Approx(beta(j + 1)).epsilon(1e-8));
}

TEST_CASE("ridge limits: huge penalty shrinks to the mean, exact linear fit") {
    const Matrix x = random_matrix(30, 2, 7);
    Vector y(30);
    for (int i = 0; i < 30; ++i) y(i) = 3.0 + x(i, 0) - x(i, 1);

    RidgeRegressor big(1e12);
    big.fit(x, y);
    const Vector pred = big.predict(x);
    for (int i = 0; i < 30; ++i) CHECK(pred(i) == doctest::Approx(y.mean()).epsilon(1e-5));

    Matrix x1(3, 1);
    x1 << 0.0, 1.0, 2.0;
    Vector y1(3);
    y1 << 1.0, 3.0, 5.0;  // y = 2x + 1
    RidgeRegressor exact(0.0);
    exact.fit(x1, y1);
    CHECK(exact.weights()(0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(exact.intercept() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("knn: identity, midpoint tie, brute-force oracle") {
    Matrix x(4, 1);
    x << 0.0, 1.0, 2.0, 3.0;
    Vector y(4);
    y << 5.0, 10.0, 20.0, 40.0;

    KnnRegressor k1(1);
    k1.fit(x, y);
    Matrix q(1, 1);
    q << 2.0;
    CHECK(k1.predict(q)(0) == 20.0);

    // query equidistant from the rows holding 10 and 20
    KnnRegressor k2(2);
    k2.fit(x, y);
    q << 1.5;
    CHECK(k2.predict(q)(0) == doctest::Approx(15.0).epsilon(1e-14));

    const Matrix xt = random_matrix(50, 4, 11);
    Vector yt(50);
    for (int i = 0; i < 50; ++i) yt(i) = xt.row(i).sum();
    KnnRegressor k4(4);
    k4.fit(xt, yt);
    const Matrix queries = random_matrix(20, 4, 12);
    const Vector got = k4.predict(queries);
    for (int qi = 0; qi < 20; ++qi) {
        std::vector<std::pair<double, int>> d(50);
        for (int i = 0; i < 50; ++i)
            d[i] = {(xt.row(i) - queries.row(qi)).squaredNorm(), i};
        std::sort(d.begin(), d.end());
        const double expect = (yt(d[0].second) + yt(d[1].second) + yt(d[2].second) +
                               yt(d[3].second)) /
                              4.0;
        CHECK(got(qi) == doctest::Approx(expect).epsilon(1e-12));
    }

    CHECK_THROWS(KnnRegressor(10).fit(x, y));  // k > n
}

TEST_CASE("tree: pure node, step data, leaf-size degeneration") {
    Matrix x(5, 1);
    x << 1, 2, 3, 4, 5;
    Vector constant = Vector::Constant(5, 7.0);
    DecisionTreeRegressor pure{TreeConfig{}};
    pure.fit(x, constant);
    REQUIRE(pure.nodes().size() == 1);
    CHECK(pure.nodes()[0].value == 7.0);

    // one-feature step target, depth 1: the split lands in the gap
    Matrix xs(6, 1);
    xs << -3.0, -2.0, -1.0, 1.0, 2.0, 3.0;
    Vector ys(6);
    ys << 0, 0, 0, 1, 1, 1;
    TreeConfig depth1;
    depth1.max_depth = 1;
    DecisionTreeRegressor step(depth1);
    step.fit(xs, ys);
    REQUIRE(step.nodes().size() == 3);
    CHECK(step.nodes()[0].threshold == doctest::Approx(0.0).epsilon(1e-14));
    const Vector fit = step.predict(xs);
    for (int i = 0; i < 6; ++i) CHECK(fit(i) == ys(i));

    // exhaustive split-search oracle: best midpoint by direct SSE scan
    {
        const Matrix xr = random_matrix(40, 1, 17);
        Vector yr(40);
        for (int i = 0; i < 40; ++i) yr(i) = xr(i, 0) > 0.3 ? 2.0 + xr(i, 0) : -1.0;
        DecisionTreeRegressor t(depth1);
        t.fit(xr, yr);

        std::vector<double> vals(xr.data(), xr.data() + 40);
        std::sort(vals.begin(), vals.end());
        double best_red = -1.0, best_thr = 0.0;
        double total_sum = yr.sum(), total_sq = yr.squaredNorm();
        const double sse_all = total_sq - total_sum * total_sum / 40.0;
        for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
            if (vals[i] == vals[i + 1]) continue;
            const double thr = 0.5 * (vals[i] + vals[i + 1]);
            double ls = 0, lq = 0, ln = 0;
            for (int r = 0; r < 40; ++r)
                if (xr(r, 0) <= thr) {
                    ls += yr(r);
                    lq += yr(r) * yr(r);
                    ln += 1;
                }
            const double rs = total_sum - ls, rq = total_sq - lq, rn = 40 - ln;
            const double red =
                sse_all - (lq - ls * ls / ln) - (rq - rs * rs / rn);
            if (red > best_red) {
                best_red = red;
                best_thr = thr;
            }
        }
        CHECK(t.nodes()[0].threshold == doctest::Approx(best_thr).epsilon(1e-12));
        CHECK(t.nodes()[0].impurity_decrease == doctest::Approx(best_red).epsilon(1e-9));
    }

    // a leaf floor above half the data forbids any split
    TreeConfig fat;
    fat.min_samples_leaf_fraction = 0.6;
    DecisionTreeRegressor root_only(fat);
    Vector yv(5);
    yv << 1, 2, 3, 4, 5;
    root_only.fit(x, yv);
    CHECK(root_only.nodes().size() == 1);
    CHECK(root_only.nodes()[0].value == doctest::Approx(3.0));
}

TEST_CASE("forest: collapse case, ensemble mean, variance reduction") {
    const Matrix x = random_matrix(80, 2, 21);
    Vector y(80);
    SeqRng noise(22);
    for (int i = 0; i < 80; ++i)
        y(i) = x(i, 0) * x(i, 0) + 0.5 * x(i, 1) + 0.3 * noise.normal();

    // single tree, no bootstrap, all features: identical to the plain tree
    ForestConfig collapse;
    collapse.n_estimators = 1;
    collapse.bootstrap = false;
    collapse.max_features = MaxFeatures::All;
    collapse.max_depth = 4;
    RandomForestRegressor f1(collapse);
    f1.fit(x, y);
    TreeConfig tc;
    tc.max_depth = 4;
    DecisionTreeRegressor plain(tc);
    plain.fit(x, y);
    const Vector fp = f1.predict(x);
    const Vector tp = plain.predict(x);
    for (int i = 0; i < 80; ++i) CHECK(fp(i) == tp(i));

    // ensemble prediction is the arithmetic mean of the member trees
    ForestConfig small;
    small.n_estimators = 7;
    small.max_depth = 5;
    small.seed = 3;
    RandomForestRegressor forest(small);
    forest.fit(x, y);
    const Vector pred = forest.predict(x);
    for (int i = 0; i < 80; i += 13) {
        double mean = 0.0;
        for (const auto& t : forest.trees()) mean += t.predict_row(x, i);
        mean /= static_cast<double>(forest.trees().size());
        CHECK(pred(i) == doctest::Approx(mean).epsilon(1e-14));
    }

    // held-out noisy quadratic: bagged deep trees beat the single deep tree
    Vector y_noisy(80);
    SeqRng loud(25);
    for (int i = 0; i < 80; ++i)
        y_noisy(i) = x(i, 0) * x(i, 0) + 0.5 * x(i, 1) + 1.0 * loud.normal();
    const Matrix x_test = random_matrix(200, 2, 23);
    Vector y_test(200);
    for (int i = 0; i < 200; ++i) y_test(i) = x_test(i, 0) * x_test(i, 0) + 0.5 * x_test(i, 1);
    ForestConfig big;
    big.n_estimators = 200;
    big.max_depth = -1;
    big.max_features = MaxFeatures::All;  // isolate the bagging effect
    big.seed = 4;
    RandomForestRegressor rf(big);
    rf.fit(x, y_noisy);
    TreeConfig deep;
    DecisionTreeRegressor lone(deep);
    lone.fit(x, y_noisy);
    const double mse_rf = (rf.predict(x_test) - y_test).squaredNorm();
    const double mse_tree = (lone.predict(x_test) - y_test).squaredNorm();
    CHECK(mse_rf <= mse_tree);
}

TEST_CASE("gbrt: interpolation, structural identity, monotone training loss") {
    Matrix x1(1, 1);
    x1 << 1.0;
    Vector y1(1);
    y1 << 42.0;
    GbrtConfig one;
    one.learning_rate = 1.0;
    one.n_estimators = 1;
    one.max_features = MaxFeatures::All;
    GbrtRegressor g1(one);
    g1.fit(x1, y1);
    CHECK(g1.predict(x1)(0) == doctest::Approx(42.0).epsilon(1e-14));

    const Matrix x = random_matrix(60, 3, 31);
    Vector y(60);
    SeqRng noise(32);
    for (int i = 0; i < 60; ++i) y(i) = std::sin(x(i, 0)) + 0.2 * x(i, 1) + 0.1 * noise.normal();

    GbrtConfig cfg;
    cfg.n_estimators = 100;
    cfg.max_depth = 3;
    cfg.seed = 5;
    GbrtRegressor g(cfg);
    g.fit(x, y);

    // prediction = init + lr * sum of stage trees
    const Vector pred = g.predict(x);
    for (int i = 0; i < 60; i += 17) {
        double acc = g.init_value();
        for (const auto& t : g.trees()) acc += cfg.learning_rate * t.predict_row(x, i);
        CHECK(pred(i) == doctest::Approx(acc).epsilon(1e-12));
    }

    REQUIRE(g.training_loss().size() == 100);
    for (std::size_t s = 1; s < g.training_loss().size(); ++s)
        CHECK(g.training_loss()[s] <= g.training_loss()[s - 1] + 1e-12);
}

TEST_CASE("fits are deterministic and refuse to run twice") {
    const Matrix x = random_matrix(50, 3, 41);
    Vector y(50);
    for (int i = 0; i < 50; ++i) y(i) = x(i, 0) - x(i, 2);

    ForestConfig cfg;
    cfg.n_estimators = 20;
    cfg.max_depth = 6;
    cfg.seed = 9;
    RandomForestRegressor a(cfg), b(cfg);
    a.fit(x, y);
    b.fit(x, y);
    CHECK(a.to_json().dump() == b.to_json().dump());
    CHECK_THROWS(a.fit(x, y));

    GbrtConfig gc;
    gc.n_estimators = 30;
    gc.seed = 10;
    GbrtRegressor ga(gc), gb(gc);
    ga.fit(x, y);
    gb.fit(x, y);
    CHECK(ga.to_json().dump() == gb.to_json().dump());
}

TEST_CASE("serialized models reload to identical predictions") {
    const Matrix x = random_matrix(40, 3, 51);
    Vector y(40);
    for (int i = 0; i < 40; ++i) y(i) = 2.0 * x(i, 1) + x(i, 0) * x(i, 2);
    const Matrix q = random_matrix(10, 3, 52);

    ForestConfig fc;
    fc.n_estimators = 10;
    fc.max_depth = 5;
    RandomForestRegressor forest(fc);
    forest.fit(x, y);
    const auto reloaded = regressor_from_json(forest.to_json());
    const Vector p1 = forest.predict(q);
    const Vector p2 = reloaded->predict(q);
    for (int i = 0; i < 10; ++i) CHECK(p1(i) == p2(i));

    RidgeRegressor ridge(0.5);
    ridge.fit(x, y);
    const auto r2 = regressor_from_json(ridge.to_json());
    const Vector rp1 = ridge.predict(q);
    const Vector rp2 = r2->predict(q);
    for (int i = 0; i < 10; ++i) CHECK(rp1(i) == rp2(i));

    KnnRegressor knn(3);
    knn.fit(x, y);
    const auto k2 = regressor_from_json(knn.to_json());
    const Vector kp1 = knn.predict(q);
    const Vector kp2 = k2->predict(q);
    for (int i = 0; i < 10; ++i) CHECK(kp1(i) == kp2(i));
}

TEST_CASE("every model rejects a feature-dimension mismatch") {
    const Matrix x = random_matrix(30, 3, 61);
    Vector y(30);
    for (int i = 0; i < 30; ++i) y(i) = x(i, 0);
    const Matrix bad = random_matrix(5, 4, 62);

    RidgeRegressor ridge(0.1);
    ridge.fit(x, y);
    CHECK_THROWS(ridge.predict(bad));

    KnnRegressor knn(2);
    knn.fit(x, y);
    CHECK_THROWS(knn.predict(bad));

    DecisionTreeRegressor tree{TreeConfig{}};
    tree.fit(x, y);
    CHECK_THROWS(tree.predict(bad));
}
