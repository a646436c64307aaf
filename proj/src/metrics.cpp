#include "bermuda/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bermuda {

namespace {

double guarded(double denom, double eps) {
    if (std::abs(denom) >= eps) return denom;
    return denom < 0.0 ? -eps : eps;
}

}  // namespace

MetricsReport compute_metrics(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat) {
    if (y.size() != yhat.size()) throw std::invalid_argument("compute_metrics: length mismatch");
    if (y.size() < 1) throw std::invalid_argument("compute_metrics: empty input");
    const auto n = static_cast<double>(y.size());
    const double eps = 1e-12 * y.cwiseAbs().mean();

    MetricsReport m;
    m.n = static_cast<std::size_t>(y.size());
    double abs_err = 0.0, sq_err = 0.0, abs_rel = 0.0, sq_rel = 0.0;
    double abs_y = 0.0, sq_y = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double e = y(i) - yhat(i);
        const double r = e / guarded(y(i), eps);
        abs_err += std::abs(e);
        sq_err += e * e;
        abs_rel += std::abs(r);
        sq_rel += r * r;
        abs_y += std::abs(y(i));
        sq_y += y(i) * y(i);
    }
    m.mae = abs_err / n;
    m.rmse = std::sqrt(sq_err / n);
    m.mape = abs_rel / n;
    m.wape = abs_err / guarded(abs_y, eps);
    m.rmsre = std::sqrt(sq_rel / n);
    m.rrmse = std::sqrt(sq_err / guarded(sq_y, eps * eps));
    return m;
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile: empty sample");
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

ErrorStats error_stats(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat) {
    if (y.size() != yhat.size()) throw std::invalid_argument("error_stats: length mismatch");
    if (y.size() < 2) throw std::invalid_argument("error_stats: need at least 2 samples");
    const auto n = static_cast<double>(y.size());
    const double eps = 1e-12 * y.cwiseAbs().mean();

    std::vector<double> rel(static_cast<std::size_t>(y.size()));
    for (Eigen::Index i = 0; i < y.size(); ++i)
        rel[static_cast<std::size_t>(i)] = (yhat(i) - y(i)) / guarded(y(i), eps);

    ErrorStats s;
    s.n = rel.size();
    double sum = 0.0;
    for (double r : rel) sum += r;
    s.mean = sum / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double r : rel) {
        const double d = r - s.mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    s.std = std::sqrt(m2 / (n - 1.0));
    m2 /= n;
    m3 /= n;
    m4 /= n;
    s.skew = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    s.kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;

    std::sort(rel.begin(), rel.end());
    s.min = rel.front();
    s.q25 = quantile_sorted(rel, 0.25);
    s.q50 = quantile_sorted(rel, 0.50);
    s.q75 = quantile_sorted(rel, 0.75);
    s.max = rel.back();
    return s;
}

}  // namespace bermuda
