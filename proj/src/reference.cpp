#include "bermuda/reference.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bermuda/rng.hpp"

namespace bermuda::ref {

PathSet simulate_serial(const G1ppParams& params, const std::vector<double>& times,
                        std::size_t n_paths, std::uint64_t seed,
                        const YieldCurve& discount_curve, bool antithetic) {
    params.validate();
    if (times.empty() || times[0] != 0.0)
        throw std::invalid_argument("simulate_serial: grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("simulate_serial: grid not strictly increasing");
    if (n_paths < 2) throw std::invalid_argument("simulate_serial: n_paths must be >= 2");
    if (antithetic && n_paths % 2 != 0)
        throw std::invalid_argument("simulate_serial: antithetic requires even path count");

    const std::size_t nt = times.size();
    PathSet ps;
    ps.times = times;
    ps.n_paths = n_paths;
    ps.seed = seed;
    ps.params = params;
    ps.antithetic = antithetic;
    ps.states.resize(n_paths * nt);
    ps.numeraire_df.resize(n_paths * nt);

    std::vector<double> det_df(nt, 1.0);
    for (std::size_t i = 1; i < nt; ++i)
        det_df[i] = discount_curve.discount_factor(times[i]) *
                    std::exp(-0.5 * ou::integrated_variance(params.a, params.sigma, times[i]));

    for (std::size_t p = 0; p < n_paths; ++p) {
        const std::uint64_t stream = antithetic ? p / 2 : p;
        const double flip = (antithetic && p % 2 == 1) ? -1.0 : 1.0;
        double x = 0.0;
        double integral = 0.0;
        ps.states[p * nt] = 0.0;
        ps.numeraire_df[p * nt] = 1.0;
        for (std::size_t i = 1; i < nt; ++i) {
            const double dt = times[i] - times[i - 1];
            const double decay = std::exp(-params.a * dt);
            const double mri = ou::mean_rev_integral(params.a, dt);
            const double sd = std::sqrt(ou::state_variance(params.a, params.sigma, dt));
            const double cov = ou::state_integral_covariance(params.a, params.sigma, dt);
            const double c10 = sd > 0.0 ? cov / sd : 0.0;
            const double c11 = std::sqrt(std::max(
                ou::integrated_variance(params.a, params.sigma, dt) - c10 * c10, 0.0));
            const auto z = normal_pair(seed, stream, static_cast<std::uint32_t>(i - 1));
            const double z0 = flip * z[0];
            const double z1 = flip * z[1];
            integral += mri * x + c10 * z0 + c11 * z1;
            x = decay * x + sd * z0;
            ps.states[p * nt + i] = x;
            ps.numeraire_df[p * nt + i] = det_df[i] * std::exp(-integral);
        }
    }
    return ps;
}

LsmcResult price_bermudan_serial(const BermudanSpec& spec, const G1ppParams& params,
                                 const CurveSet& curves, const LsmcConfig& config) {
    spec.validate();
    params.validate();
    config.validate();

    const PathSet paths = simulate_serial(params, spec.grid_times(), config.n_paths,
                                          config.seed, curves.discount, config.antithetic);
    const std::size_t n = paths.n_paths;
    const int n_dates = spec.tenor;
    const double strike = atm_strike(spec, curves);

    std::vector<int> schedule(n_dates);
    for (int i = 0; i < n_dates; ++i) schedule[i] = i;
    if (!config.exercise_subset.empty()) schedule = config.exercise_subset;

    std::vector<SwapStateEval> evals(n_dates);
    for (int e : schedule)
        evals[e] = make_state_eval(
            swap_zcb_weights(curves, spec.side, spec.no_call + e,
                             spec.maturity() - spec.no_call - e, strike),
            params, curves, spec.notional);

    std::vector<double> cashflow(n, 0.0);
    std::vector<int> when(n, -1);

    const int last = schedule.back();
    for (std::size_t p = 0; p < n; ++p) {
        const double intr = evals[last](paths.state(p, last + 1));
        if (intr > 0.0) {
            cashflow[p] = intr * paths.df(p, last + 1);
            when[p] = last;
        }
    }

    const int dim = config.basis_degree + 1;
    for (int si = static_cast<int>(schedule.size()) - 2; si >= 0; --si) {
        const int date = schedule[si];
        std::vector<std::size_t> reg;
        std::vector<double> intr(n);
        for (std::size_t p = 0; p < n; ++p) {
            intr[p] = evals[date](paths.state(p, date + 1));
            if (!config.itm_only || intr[p] > 0.0) reg.push_back(p);
        }
        if (reg.empty()) continue;

        Eigen::MatrixXd A(reg.size(), dim);
        Eigen::VectorXd y(reg.size());
        for (std::size_t r = 0; r < reg.size(); ++r) {
            const double x = paths.state(reg[r], date + 1);
            double v = 1.0;
            for (int d = 0; d < dim; ++d) {
                A(r, d) = v;
                v *= x;
            }
            y(r) = cashflow[reg[r]] / paths.df(reg[r], date + 1);
        }
        const Eigen::VectorXd beta = A.colPivHouseholderQr().solve(y);

        for (std::size_t p = 0; p < n; ++p) {
            if (!(intr[p] > 0.0)) continue;
            double cont = 0.0, v = 1.0;
            for (int d = 0; d < dim; ++d) {
                cont += beta(d) * v;
                v *= paths.state(p, date + 1);
            }
            if (intr[p] > cont) {
                cashflow[p] = intr[p] * paths.df(p, date + 1);
                when[p] = date;
            }
        }
    }

    LsmcResult res;
    double sum = 0.0;
    for (double c : cashflow) sum += c;
    res.price = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double c : cashflow) ss += (c - res.price) * (c - res.price);
    res.std_error =
        std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    res.exercise_fractions.assign(n_dates, 0.0);
    for (std::size_t p = 0; p < n; ++p)
        if (when[p] >= 0) res.exercise_fractions[when[p]] += 1.0 / static_cast<double>(n);
    return res;
}

}  // namespace bermuda::ref
