#pragma once

#include <cstdint>
#include <vector>

#include "bermuda/yield_curve.hpp"

namespace bermuda {

/// Hull-White one-factor parameters: dx = -a x dt + sigma dW, x(0) = 0,
/// short rate r(t) = x(t) + deterministic shift fitted to the input curve.
struct G1ppParams {
    double a = 0.0;      // speed of mean reversion, per annum (may be negative)
    double sigma = 0.0;  // volatility, per annum, > 0

    void validate() const;
};

// Admissible box used for dataset generation: a in [-2%, 30%], sigma in [0.1%, 9%].
bool within_parameter_box(const G1ppParams& p);

/// The 10 (a, sigma) market scenarios the dataset is generated under.
struct ScenarioGrid {
    std::vector<G1ppParams> scenarios;

    static ScenarioGrid default_grid();  // the fixed 10-pair set
    void validate() const;               // every entry inside the parameter box
};

namespace ou {

// B(tau) = (1 - e^{-a tau}) / a, with the series limit tau(1 - u/2 + ...) below
// |a*tau| = 1e-6 so a = 0 is exact rather than an error.
double mean_rev_integral(double a, double tau);

// Var(x(t+tau) | x(t)) = sigma^2 (1 - e^{-2 a tau}) / (2a).
double state_variance(double a, double sigma, double tau);

// Var(int_t^{t+tau} x ds | x(t)); the series branch below |a*tau| = 1e-2 keeps
// full precision where the closed form cancels to O((a tau)^2).
double integrated_variance(double a, double sigma, double tau);

// Cov(x(t+tau), int_t^{t+tau} x ds | x(t)) = sigma^2 B(tau)^2 / 2.
double state_integral_covariance(double a, double sigma, double tau);

}  // namespace ou

/// Simulated factor paths on a fixed time grid.
///
/// states[p*n_times + i] is the OU factor of path p at times[i];
/// numeraire_df is the path-wise stochastic discount factor from 0 to times[i]
/// (market curve times the integrated-factor adjustment, so the curve is
/// repriced in expectation). Immutable after simulate().
struct PathSet {
    std::vector<double> times;  // times[0] = 0
    std::size_t n_paths = 0;
    std::vector<double> states;        // n_paths x n_times, row-major
    std::vector<double> numeraire_df;  // n_paths x n_times, row-major
    std::uint64_t seed = 0;
    G1ppParams params;
    bool antithetic = false;

    std::size_t n_times() const { return times.size(); }
    double state(std::size_t path, std::size_t i) const { return states[path * times.size() + i]; }
    double df(std::size_t path, std::size_t i) const {
        return numeraire_df[path * times.size() + i];
    }
};

/// Exact-transition simulation of (x, int x ds) across the grid.
///
/// Each path owns a counter-based RNG stream addressed by its index, so the
/// result is bit-identical for any thread count or chunking. With antithetic
/// on, odd paths mirror the normals of the preceding even path.
/// Throws on a non-increasing grid, times[0] != 0, or n_paths < 2.
PathSet simulate(const G1ppParams& params, const std::vector<double>& times,
                 std::size_t n_paths, std::uint64_t seed, const YieldCurve& discount_curve,
                 bool antithetic = false);

/// Model zero-coupon bond P(t, T) seen from state x at time t, fitted to the
/// given curve: at t = 0, x = 0 it reproduces the market discount factor
/// exactly. Throws on T < t or t < 0.
double zcb_price(const G1ppParams& params, const YieldCurve& curve, double t, double T,
                 double x);

}  // namespace bermuda
