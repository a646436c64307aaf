#include "bermuda/importance.hpp"

#include <numeric>
#include <stdexcept>

#include "bermuda/ml/forest.hpp"
#include "bermuda/ml/gbrt.hpp"
#include "bermuda/ml/tree.hpp"
#include "bermuda/rng.hpp"

namespace bermuda {

namespace {

double mse(const ml::Vector& y, const ml::Vector& yhat) {
    return (y - yhat).squaredNorm() / static_cast<double>(y.size());
}

ImportanceReport normalize(std::vector<double> raw, std::string method) {
    for (double& v : raw) v = std::max(v, 0.0);
    const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
    ImportanceReport rep;
    rep.method = std::move(method);
    if (total <= 0.0) {
        rep.degenerate = true;
        rep.importance.assign(raw.size(), 1.0 / static_cast<double>(raw.size()));
        return rep;
    }
    for (double& v : raw) v /= total;
    rep.importance = std::move(raw);
    return rep;
}

void accumulate_tree(const std::vector<ml::TreeNode>& nodes, std::vector<double>& sums) {
    for (const auto& node : nodes)
        if (node.feature >= 0) sums[static_cast<std::size_t>(node.feature)] += node.impurity_decrease;
}

}  // namespace

ImportanceReport permutation_importance(const ml::Pipeline& pipeline, const ml::Matrix& x,
                                        const ml::Vector& y, int n_repeats,
                                        std::uint64_t seed) {
    if (!pipeline.fitted()) throw std::logic_error("permutation_importance: unfitted pipeline");
    if (n_repeats < 1) throw std::invalid_argument("permutation_importance: n_repeats >= 1");
    const std::size_t n = static_cast<std::size_t>(x.rows());
    const std::size_t p = static_cast<std::size_t>(x.cols());

    const double baseline = mse(y, pipeline.predict(x));
    std::vector<double> degradation(p, 0.0);
    if (baseline == 0.0) {
        ImportanceReport rep = normalize(std::move(degradation), "permutation");
        rep.degenerate = true;
        return rep;
    }

    std::vector<std::size_t> perm(n);
    for (std::size_t f = 0; f < p; ++f) {
        double total = 0.0;
        for (int rep = 0; rep < n_repeats; ++rep) {
            std::iota(perm.begin(), perm.end(), 0);
            SeqRng rng(seed, f * static_cast<std::uint64_t>(n_repeats) + rep);
            rng.shuffle(perm);
            ml::Matrix xp = x;
            for (std::size_t i = 0; i < n; ++i)
                xp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(f)) =
                    x(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(f));
            total += mse(y, pipeline.predict(xp)) - baseline;
        }
        degradation[f] = total / n_repeats;
    }
    return normalize(std::move(degradation), "permutation");
}

ImportanceReport impurity_importance(const ml::Regressor& model) {
    if (!model.fitted()) throw std::logic_error("impurity_importance: unfitted model");
    const std::size_t p = static_cast<std::size_t>(model.n_features());
    std::vector<double> sums(p, 0.0);

    if (const auto* tree = dynamic_cast<const ml::DecisionTreeRegressor*>(&model)) {
        accumulate_tree(tree->nodes(), sums);
    } else if (const auto* forest = dynamic_cast<const ml::RandomForestRegressor*>(&model)) {
        for (const auto& t : forest->trees()) accumulate_tree(t.nodes(), sums);
    } else if (const auto* gbrt = dynamic_cast<const ml::GbrtRegressor*>(&model)) {
        for (const auto& t : gbrt->trees()) accumulate_tree(t.nodes(), sums);
    } else {
        throw std::invalid_argument("impurity_importance: '" + model.kind() +
                                    "' is not tree-based");
    }
    return normalize(std::move(sums), "impurity");
}

}  // namespace bermuda
