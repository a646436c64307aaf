#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bermuda/g1pp.hpp"
#include "bermuda/lsmc.hpp"
#include "bermuda/swaption.hpp"

namespace bermuda {

enum class SplitTag { Train, Test };

/// One supervised sample: six features and the LSMC target, with bookkeeping
/// of where it came from and which side of the split it landed on.
struct FeatureRow {
    std::size_t spec_id = 0;
    std::size_t scenario_id = 0;
    double tenor = 0.0;
    double strike_bp = 0.0;
    double side_payer = 0.0;  // 1 = payer, 0 = receiver
    double no_call = 0.0;
    double corr = 0.0;          // swap-rate correlation, in [-1, 1]
    double max_euro = 0.0;      // price of the best co-terminal European
    double target = 0.0;        // LSMC Bermudan price
    SplitTag split = SplitTag::Train;

    double lsmc_std_error = 0.0;  // kept in memory, not part of the CSV schema
};

struct CellFailure {
    std::size_t spec_id = 0;
    std::size_t scenario_id = 0;
    std::string error;
};

struct Dataset {
    std::vector<FeatureRow> rows;
    std::vector<CellFailure> failures;
};

// Fixed feature order used by every model and report.
const std::vector<std::string>& feature_names();
Eigen::MatrixXd feature_matrix(const std::vector<FeatureRow>& rows);
Eigen::VectorXd target_vector(const std::vector<FeatureRow>& rows);

// Names of features that never vary across the rows (degenerate encoding guard).
std::vector<std::string> constant_feature_columns(const std::vector<FeatureRow>& rows);

/// Basket definition: the admissible values per contract dimension. The
/// default-constructed config is the full cartesian product of the dataset
/// universe (5 tenors x 22 strikes x 2 sides x 9 no-call periods).
struct BasketConfig {
    std::vector<int> tenors = domains::tenors;
    std::vector<int> no_calls = domains::no_calls;
    std::vector<double> strike_offsets_bp = domains::strike_offsets_bp;
    std::vector<Side> sides = {Side::Payer, Side::Receiver};
    double notional = 10000.0;
};

// Cartesian product of the config values; every value must belong to the
// table domains or a config error is thrown.
std::vector<BermudanSpec> build_basket(const BasketConfig& config);

// Include-list file: header `side,no_call,tenor,strike_bp`, one spec per row.
std::vector<BermudanSpec> load_basket_csv(const std::string& path, double notional = 10000.0);
void save_basket_csv(const std::vector<BermudanSpec>& basket, const std::string& path);

/// Pearson correlation across paths between the co-terminal swap rate of the
/// longest-tenor European observed at the first exercise date and that of the
/// shortest-tenor European observed at the last. Throws when the schedule has
/// fewer than two dates; a near-deterministic factor (sigma ~ 0) returns 1
/// with `degenerate` set.
double swap_rate_correlation(const BermudanSpec& spec, const PathSet& paths,
                             const CurveSet& curves, bool* degenerate = nullptr);

/// Builds one row per (spec, scenario): max-European and correlation features
/// plus the LSMC target, all from a single PathSet per cell. Cells that fail
/// are excluded from the rows and reported. Rows come back ordered by
/// (spec_id, scenario_id) whatever the execution order.
Dataset generate(const std::vector<BermudanSpec>& basket, const ScenarioGrid& grid,
                 const CurveSet& curves, const LsmcConfig& lsmc_config);

struct SplitReport {
    std::vector<std::size_t> bin_sizes;
    std::vector<std::size_t> bin_test_counts;
    std::vector<std::string> warnings;
};

/// Stratified train/test split on quantile bins of max_euro. Hits the global
/// train fraction exactly (up to rounding to a whole row) while keeping every
/// bin represented on both sides.
SplitReport stratified_split(Dataset& dataset, double train_fraction, int n_bins,
                             std::uint64_t seed);

// Kolmogorov-Smirnov distance between two samples (split diagnostics).
double ks_distance(std::vector<double> a, std::vector<double> b);

// Dataset CSV, schema:
// spec_id,scenario_id,tenor,strike_bp,side_payer,no_call,corr,max_euro,target,split
void save_dataset_csv(const Dataset& dataset, const std::string& path);
Dataset load_dataset_csv(const std::string& path);

}  // namespace bermuda
