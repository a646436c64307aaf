#pragma once

#include <optional>
#include <vector>

#include "bermuda/ml/model.hpp"
#include "bermuda/rng.hpp"

namespace bermuda::ml {

enum class MaxFeatures { All, Log2 };

struct TreeConfig {
    int max_depth = -1;  // -1 = unbounded
    // Leaf-size floor, either as a fraction of the training size or absolute.
    double min_samples_leaf_fraction = 0.0;  // takes precedence when > 0
    int min_samples_leaf = 1;
    MaxFeatures max_features = MaxFeatures::All;
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;              // mean target of the node's samples
    double impurity_decrease = 0.0;  // SSE drop achieved by the split
    std::size_t n_samples = 0;
};

/// CART regression tree, exhaustive variance-reduction split search over the
/// midpoints of sorted distinct feature values. Ties prefer the lowest
/// feature index, then the lowest threshold, so growth is deterministic.
class DecisionTreeRegressor : public Regressor {
  public:
    explicit DecisionTreeRegressor(TreeConfig config);

    std::string kind() const override { return "tree"; }
    double complexity_hint() const override;
    nlohmann::json to_json() const override;
    std::unique_ptr<Regressor> clone_unfitted() const override;
    static std::unique_ptr<Regressor> from_json(const nlohmann::json& j);

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    const TreeConfig& config() const { return config_; }

    // Ensemble entry point: grows on the given sample rows (with repeats for
    // bootstraps); the rng drives per-split feature subsets and the leaf
    // floor resolves against n_total. Called by forests and boosting.
    void fit_rows(const Matrix& x, const Vector& y, const std::vector<int>& rows,
                  std::size_t n_total, SeqRng* rng);

    double predict_row(const Matrix& x, Eigen::Index row) const;

    // Deserialization entry point for ensemble members.
    void restore_nodes(std::vector<TreeNode> nodes) { nodes_ = std::move(nodes); }

    static nlohmann::json nodes_to_json(const std::vector<TreeNode>& nodes);
    static std::vector<TreeNode> nodes_from_json(const nlohmann::json& j);
    static nlohmann::json config_to_json(const TreeConfig& c);
    static TreeConfig config_from_json(const nlohmann::json& j);

  protected:
    void do_fit(const Matrix& x, const Vector& y) override;
    Vector do_predict(const Matrix& x) const override;

  private:
    struct BuildContext;
    int build_node(BuildContext& ctx, std::vector<int>& rows, int depth);

    TreeConfig config_;
    std::vector<TreeNode> nodes_;
};

}  // namespace bermuda::ml
