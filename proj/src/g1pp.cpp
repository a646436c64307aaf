#include "bermuda/g1pp.hpp"

#include <cmath>
#include <stdexcept>

#include "bermuda/rng.hpp"

namespace bermuda {

void G1ppParams::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("G1ppParams: sigma must be positive");
    if (!std::isfinite(a)) throw std::invalid_argument("G1ppParams: a must be finite");
}

bool within_parameter_box(const G1ppParams& p) {
    return p.a >= -0.02 && p.a <= 0.30 && p.sigma >= 0.001 && p.sigma <= 0.09;
}

ScenarioGrid ScenarioGrid::default_grid() {
    return ScenarioGrid{{{-0.02, 0.005},
                         {-0.01, 0.010},
                         {0.02, 0.050},
                         {0.03, 0.020},
                         {0.04, 0.015},
                         {0.05, 0.025},
                         {0.06, 0.030},
                         {0.09, 0.040},
                         {0.15, 0.070},
                         {0.30, 0.080}}};
}

void ScenarioGrid::validate() const {
    if (scenarios.empty()) throw std::invalid_argument("ScenarioGrid: empty");
    for (const auto& p : scenarios) {
        p.validate();
        if (!within_parameter_box(p))
            throw std::invalid_argument("ScenarioGrid: (a, sigma) outside admissible box");
    }
}

namespace ou {

double mean_rev_integral(double a, double tau) {
    const double u = a * tau;
    if (std::abs(u) < 1e-6) {
        // tau * (1 - u/2 + u^2/6 - u^3/24 + u^4/120)
        return tau * (1.0 + u * (-0.5 + u * (1.0 / 6.0 + u * (-1.0 / 24.0 + u / 120.0))));
    }
    return -std::expm1(-u) / a;
}

double state_variance(double a, double sigma, double tau) {
    const double u = a * tau;
    if (std::abs(u) < 1e-6) {
        const double v = 2.0 * u;
        // tau * (1 - v/2 + v^2/6 - v^3/24 + v^4/120)
        return sigma * sigma * tau *
               (1.0 + v * (-0.5 + v * (1.0 / 6.0 + v * (-1.0 / 24.0 + v / 120.0))));
    }
    return sigma * sigma * (-std::expm1(-2.0 * u)) / (2.0 * a);
}

double integrated_variance(double a, double sigma, double tau) {
    const double u = a * tau;
    if (std::abs(u) < 1e-2) {
        // sigma^2/a^2 (tau - 2B + (1-e^{-2u})/(2a)) cancels to O(u^2); expand:
        // sigma^2 tau^3 (1/3 - u/4 + 7u^2/60 - u^3/24 + 31u^4/2520)
        const double f =
            1.0 / 3.0 +
            u * (-0.25 + u * (7.0 / 60.0 + u * (-1.0 / 24.0 + u * (31.0 / 2520.0))));
        return sigma * sigma * tau * tau * tau * f;
    }
    const double b = mean_rev_integral(a, tau);
    const double g = -std::expm1(-2.0 * u) / (2.0 * a);
    return sigma * sigma / (a * a) * (tau - 2.0 * b + g);
}

double state_integral_covariance(double a, double sigma, double tau) {
    const double b = mean_rev_integral(a, tau);
    return 0.5 * sigma * sigma * b * b;
}

}  // namespace ou

namespace {

struct StepMoments {
    double decay;      // e^{-a dt}
    double mri;        // B(dt)
    double state_sd;   // sqrt Var(x step)
    double chol_10;    // Cov / state_sd (0 when state_sd = 0)
    double chol_11;    // sqrt(Var(I) - chol_10^2)
};

StepMoments step_moments(const G1ppParams& p, double dt) {
    StepMoments m;
    m.decay = std::exp(-p.a * dt);
    m.mri = ou::mean_rev_integral(p.a, dt);
    const double vx = ou::state_variance(p.a, p.sigma, dt);
    const double vi = ou::integrated_variance(p.a, p.sigma, dt);
    const double cov = ou::state_integral_covariance(p.a, p.sigma, dt);
    m.state_sd = std::sqrt(vx);
    m.chol_10 = m.state_sd > 0.0 ? cov / m.state_sd : 0.0;
    m.chol_11 = std::sqrt(std::max(vi - m.chol_10 * m.chol_10, 0.0));
    return m;
}

}  // namespace

PathSet simulate(const G1ppParams& params, const std::vector<double>& times,
                 std::size_t n_paths, std::uint64_t seed, const YieldCurve& discount_curve,
                 bool antithetic) {
    params.validate();
    if (times.empty() || times[0] != 0.0)
        throw std::invalid_argument("simulate: grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("simulate: grid not strictly increasing");
    if (n_paths < 2) throw std::invalid_argument("simulate: n_paths must be >= 2");
    if (antithetic && n_paths % 2 != 0)
        throw std::invalid_argument("simulate: antithetic requires an even path count");

    const std::size_t nt = times.size();
    PathSet ps;
    ps.times = times;
    ps.n_paths = n_paths;
    ps.seed = seed;
    ps.params = params;
    ps.antithetic = antithetic;
    ps.states.resize(n_paths * nt);
    ps.numeraire_df.resize(n_paths * nt);

    std::vector<StepMoments> steps(nt - 1);
    // exp(-1/2 Var int_0^t x ds) per grid time: the deterministic part of the
    // numeraire that makes E[df] match the market curve.
    std::vector<double> det_df(nt);
    det_df[0] = 1.0;
    for (std::size_t i = 1; i < nt; ++i) {
        steps[i - 1] = step_moments(params, times[i] - times[i - 1]);
        det_df[i] = discount_curve.discount_factor(times[i]) *
                    std::exp(-0.5 * ou::integrated_variance(params.a, params.sigma, times[i]));
    }

#pragma omp parallel for schedule(static)
    for (std::int64_t p = 0; p < static_cast<std::int64_t>(n_paths); ++p) {
        const std::size_t row = static_cast<std::size_t>(p) * nt;
        const std::uint64_t stream = antithetic ? static_cast<std::uint64_t>(p) / 2
                                                : static_cast<std::uint64_t>(p);
        const double flip = (antithetic && (p % 2 == 1)) ? -1.0 : 1.0;
        double x = 0.0;
        double integral = 0.0;  // int_0^t x ds along the path
        ps.states[row] = 0.0;
        ps.numeraire_df[row] = 1.0;
        for (std::size_t i = 1; i < nt; ++i) {
            const auto& m = steps[i - 1];
            const auto z = normal_pair(seed, stream, static_cast<std::uint32_t>(i - 1));
            const double z0 = flip * z[0];
            const double z1 = flip * z[1];
            const double step_integral = m.mri * x + m.chol_10 * z0 + m.chol_11 * z1;
            x = m.decay * x + m.state_sd * z0;
            integral += step_integral;
            ps.states[row + i] = x;
            ps.numeraire_df[row + i] = det_df[i] * std::exp(-integral);
        }
    }
    return ps;
}

double zcb_price(const G1ppParams& params, const YieldCurve& curve, double t, double T,
                 double x) {
    if (t < 0.0) throw std::invalid_argument("zcb_price: t < 0");
    if (T < t) throw std::invalid_argument("zcb_price: T < t");
    if (T == t) return 1.0;
    const double a = params.a;
    const double s = params.sigma;
    const double b = ou::mean_rev_integral(a, T - t);
    const double log_adj = 0.5 * (ou::integrated_variance(a, s, T - t) -
                                  ou::integrated_variance(a, s, T) +
                                  ou::integrated_variance(a, s, t));
    return curve.discount_factor(T) / curve.discount_factor(t) * std::exp(log_adj - b * x);
}

}  // namespace bermuda
