#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "bermuda/metrics.hpp"
#include "bermuda/rng.hpp"

using namespace bermuda;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

}  // namespace

TEST_CASE("perfect predictions zero every metric") {
    const auto y = vec({3.0, -1.0, 7.5});
    const auto m = compute_metrics(y, y);
    CHECK(m.mae == 0.0);
    CHECK(m.rmse == 0.0);
    CHECK(m.mape == 0.0);
    CHECK(m.wape == 0.0);
    CHECK(m.rmsre == 0.0);
    CHECK(m.rrmse == 0.0);
}

TEST_CASE("hand-computed two-sample example") {
    const auto y = vec({100.0, 200.0});
    const auto yhat = vec({110.0, 190.0});
    const auto m = compute_metrics(y, yhat);
    CHECK(m.mae == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(m.rmse == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(m.mape == doctest::Approx(0.075).epsilon(1e-12));
    CHECK(m.wape == doctest::Approx(1.0 / 15.0).epsilon(1e-12));
    CHECK(m.rmsre == doctest::Approx(std::sqrt(0.00625)).epsilon(1e-12));
    CHECK(m.rrmse == doctest::Approx(std::sqrt(200.0 / 50000.0)).epsilon(1e-12));
}

TEST_CASE("rmse equals mae on constant-magnitude errors") {
    const auto y = vec({1.0, -1.0});
    const auto yhat = vec({0.0, 0.0});
    const auto m = compute_metrics(y, yhat);
    CHECK(m.mae == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.rmse == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("rmse dominates mae and quadratic dominates absolute on fuzzed data") {
    SeqRng rng(2718);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng.index(20));
        Eigen::VectorXd y(n), yhat(n);
        for (int i = 0; i < n; ++i) {
            y(i) = 10.0 * rng.normal() + 1e-3;
            yhat(i) = y(i) + rng.normal();
        }
        const auto m = compute_metrics(y, yhat);
        CHECK(m.rmse >= m.mae - 1e-12);
        CHECK(m.rmsre >= m.mape - 1e-12);  // sqrt(mean r^2) >= mean |r|
    }
}

TEST_CASE("metric symmetries: permutation and scaling") {
    const auto y = vec({10.0, 40.0, -5.0, 2.0});
    const auto yhat = vec({12.0, 35.0, -4.0, 2.5});
    const auto m = compute_metrics(y, yhat);

    const auto yp = vec({40.0, 2.0, 10.0, -5.0});
    const auto yhp = vec({35.0, 2.5, 12.0, -4.0});
    const auto mp = compute_metrics(yp, yhp);
    CHECK(m.mae == doctest::Approx(mp.mae).epsilon(1e-14));
    CHECK(m.rrmse == doctest::Approx(mp.rrmse).epsilon(1e-14));

    const double c = 7.0;
    const auto ms = compute_metrics(c * y, c * yhat);
    CHECK(ms.mae == doctest::Approx(c * m.mae).epsilon(1e-12));
    CHECK(ms.rmse == doctest::Approx(c * m.rmse).epsilon(1e-12));
    CHECK(ms.mape == doctest::Approx(m.mape).epsilon(1e-12));
    CHECK(ms.wape == doctest::Approx(m.wape).epsilon(1e-12));
    CHECK(ms.rmsre == doctest::Approx(m.rmsre).epsilon(1e-12));
    CHECK(ms.rrmse == doctest::Approx(m.rrmse).epsilon(1e-12));
}

TEST_CASE("zero targets go through the epsilon guard instead of dividing by zero") {
    const auto y = vec({0.0, 100.0});
    const auto yhat = vec({0.0, 90.0});
    const auto m = compute_metrics(y, yhat);
    CHECK(std::isfinite(m.mape));
    CHECK(std::isfinite(m.rmsre));
    CHECK(m.wape == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("empty input is a domain error") {
    Eigen::VectorXd empty(0);
    CHECK_THROWS(compute_metrics(empty, empty));
    CHECK_THROWS(compute_metrics(vec({1.0}), vec({1.0, 2.0})));
}

TEST_CASE("error stats: degenerate and symmetric cases") {
    const auto y = vec({10.0, 20.0, 30.0});
    const auto s = error_stats(y, y);
    CHECK(s.mean == 0.0);
    CHECK(s.std == 0.0);

    // relative errors exactly (-0.1, +0.1)
    const auto y2 = vec({100.0, 100.0});
    const auto yh2 = vec({90.0, 110.0});
    const auto s2 = error_stats(y2, yh2);
    CHECK(s2.mean == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(s2.skew == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s2.min == doctest::Approx(-0.1).epsilon(1e-14));
    CHECK(s2.max == doctest::Approx(0.1).epsilon(1e-14));

    Eigen::VectorXd one(1);
    one << 1.0;
    CHECK_THROWS(error_stats(one, one));
}

TEST_CASE("error stats match a two-pass oracle on random data") {
    SeqRng rng(31415);
    const int n = 1000;
    Eigen::VectorXd y(n), yhat(n);
    for (int i = 0; i < n; ++i) {
        y(i) = 50.0 + 10.0 * rng.normal();
        yhat(i) = y(i) * (1.0 + 0.05 * rng.normal());
    }
    const auto s = error_stats(y, yhat);

    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = (yhat(i) - y(i)) / y(i);
    const double mean = std::accumulate(r.begin(), r.end(), 0.0) / n;
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : r) {
        m2 += std::pow(v - mean, 2);
        m3 += std::pow(v - mean, 3);
        m4 += std::pow(v - mean, 4);
    }
    const double std_oracle = std::sqrt(m2 / (n - 1));
    m2 /= n;
    m3 /= n;
    m4 /= n;
    CHECK(s.mean == doctest::Approx(mean).epsilon(1e-10));
    CHECK(s.std == doctest::Approx(std_oracle).epsilon(1e-10));
    CHECK(s.skew == doctest::Approx(m3 / std::pow(m2, 1.5)).epsilon(1e-10));
    CHECK(s.kurtosis == doctest::Approx(m4 / (m2 * m2)).epsilon(1e-10));

    std::sort(r.begin(), r.end());
    CHECK(s.min <= s.q25);
    CHECK(s.q25 <= s.q50);
    CHECK(s.q50 <= s.q75);
    CHECK(s.q75 <= s.max);
    CHECK(s.q50 == doctest::Approx(quantile_sorted(r, 0.5)).epsilon(1e-12));
}
