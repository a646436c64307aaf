#include "bermuda/ml/cross_validation.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "bermuda/rng.hpp"

namespace bermuda::ml {

std::vector<std::vector<int>> kfold_indices(int n, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("kfold: k must be >= 2");
    if (n < k) throw std::invalid_argument("kfold: fewer rows than folds");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    SeqRng rng(seed);
    rng.shuffle(order);

    std::vector<std::vector<int>> folds(k);
    const int base = n / k, extra = n % k;
    int pos = 0;
    for (int f = 0; f < k; ++f) {
        const int len = base + (f < extra ? 1 : 0);
        folds[f].assign(order.begin() + pos, order.begin() + pos + len);
        pos += len;
    }
    return folds;
}

CvReport kfold_grid_search(const PipelineFactory& factory,
                           const std::vector<nlohmann::json>& grid, int k, const Matrix& x,
                           const Vector& y, std::uint64_t seed) {
    if (grid.empty()) throw std::invalid_argument("grid search: empty grid");
    const int n = static_cast<int>(x.rows());
    const auto folds = kfold_indices(n, k, seed);

    CvReport report;
    report.k = k;
    for (const auto& params : grid) {
        CvPoint point;
        point.params = params;
        point.complexity = factory(params).complexity_hint();
        for (int f = 0; f < k; ++f) {
            std::vector<int> train_rows;
            train_rows.reserve(n - folds[f].size());
            for (int g = 0; g < k; ++g)
                if (g != f) train_rows.insert(train_rows.end(), folds[g].begin(), folds[g].end());

            Matrix xt(train_rows.size(), x.cols());
            Vector yt(train_rows.size());
            for (std::size_t i = 0; i < train_rows.size(); ++i) {
                xt.row(i) = x.row(train_rows[i]);
                yt(i) = y(train_rows[i]);
            }
            Matrix xv(folds[f].size(), x.cols());
            Vector yv(folds[f].size());
            for (std::size_t i = 0; i < folds[f].size(); ++i) {
                xv.row(i) = x.row(folds[f][i]);
                yv(i) = y(folds[f][i]);
            }

            Pipeline pipe = factory(params);
            pipe.fit(xt, yt);
            const Vector pred = pipe.predict(xv);

            // MSE on the fold-train-standardized target scale.
            const double mean = yt.mean();
            const double var = (yt.array() - mean).square().mean();
            const double denom = var > 0.0 ? var : 1.0;
            point.fold_scores.push_back((pred - yv).squaredNorm() /
                                        static_cast<double>(yv.size()) / denom);
        }
        const double m =
            std::accumulate(point.fold_scores.begin(), point.fold_scores.end(), 0.0) / k;
        double s2 = 0.0;
        for (double v : point.fold_scores) s2 += (v - m) * (v - m);
        point.mean_score = m;
        point.std_score = std::sqrt(s2 / k);
        report.points.push_back(std::move(point));
    }

    report.best_index = 0;
    for (std::size_t i = 1; i < report.points.size(); ++i) {
        const auto& cand = report.points[i];
        const auto& best = report.points[report.best_index];
        if (cand.mean_score < best.mean_score ||
            (cand.mean_score == best.mean_score && cand.complexity < best.complexity))
            report.best_index = static_cast<int>(i);
    }
    return report;
}

nlohmann::json CvReport::to_json() const {
    nlohmann::json j;
    j["k"] = k;
    j["best_index"] = best_index;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points) {
        pts.push_back({{"params", p.params},
                       {"fold_scores", p.fold_scores},
                       {"mean_score", p.mean_score},
                       {"std_score", p.std_score},
                       {"complexity", p.complexity}});
    }
    j["points"] = std::move(pts);
    return j;
}

}  // namespace bermuda::ml
