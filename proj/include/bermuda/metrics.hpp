#pragma once

#include <Eigen/Dense>
#include <vector>

namespace bermuda {

/// The six evaluation metrics. MAE/RMSE carry target units; the other four
/// are dimensionless. Zero targets in the per-sample relative errors are
/// guarded by an epsilon of 1e-12 times the mean absolute target.
struct MetricsReport {
    double mae = 0.0;
    double rmse = 0.0;
    double mape = 0.0;
    double wape = 0.0;
    double rmsre = 0.0;
    double rrmse = 0.0;
    std::size_t n = 0;
};

MetricsReport compute_metrics(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat);

/// Distribution statistics of the relative error (yhat - y) / y: sample
/// std, population skew, plain (non-excess) kurtosis, and type-7 quantiles.
struct ErrorStats {
    double mean = 0.0;
    double std = 0.0;
    double skew = 0.0;
    double kurtosis = 0.0;
    double min = 0.0;
    double q25 = 0.0;
    double q50 = 0.0;
    double q75 = 0.0;
    double max = 0.0;
    std::size_t n = 0;
};

ErrorStats error_stats(const Eigen::VectorXd& y, const Eigen::VectorXd& yhat);

// Linear-interpolation quantile of a sorted sample (type 7).
double quantile_sorted(const std::vector<double>& sorted, double p);

}  // namespace bermuda
