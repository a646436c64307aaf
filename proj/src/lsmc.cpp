#include "bermuda/lsmc.hpp"

#include <omp.h>

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace bermuda {

namespace {

// Fixed reduction chunk: all cross-path sums are accumulated per chunk and
// combined in chunk order, so results do not depend on the thread count.
constexpr std::size_t kChunk = 8192;

std::size_t n_chunks(std::size_t n) { return (n + kChunk - 1) / kChunk; }

// Basis is monomials of the regression-set-normalized state; an affine
// reparametrization of the monomial basis in x, kept for conditioning.
struct BasisScale {
    double mean = 0.0;
    double inv_sd = 0.0;  // 0 flags a degenerate (constant-state) set
};

double chunked_sum(const std::vector<double>& v) {
    const std::size_t nc = n_chunks(v.size());
    std::vector<double> partial(nc, 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(nc); ++c) {
        const std::size_t b = static_cast<std::size_t>(c) * kChunk;
        const std::size_t e = std::min(b + kChunk, v.size());
        double s = 0.0;
        for (std::size_t i = b; i < e; ++i) s += v[i];
        partial[c] = s;
    }
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

}  // namespace

void LsmcConfig::validate() const {
    if (basis_degree < 1) throw std::invalid_argument("LsmcConfig: basis_degree must be >= 1");
    if (n_paths < 10 * static_cast<std::size_t>(basis_degree + 1))
        throw std::invalid_argument("LsmcConfig: n_paths must be >= 10*(degree+1)");
    for (int idx : exercise_subset)
        if (idx < 0) throw std::invalid_argument("LsmcConfig: negative exercise index");
}

LsmcResult price_bermudan_on_paths(const BermudanSpec& spec, const CurveSet& curves,
                                   const PathSet& paths, const LsmcConfig& config) {
    spec.validate();
    config.validate();
    const std::vector<double> grid = spec.grid_times();
    if (paths.times != grid)
        throw std::invalid_argument("price_bermudan_on_paths: PathSet grid does not match spec");
    if (paths.n_paths != config.n_paths)
        throw std::invalid_argument("price_bermudan_on_paths: path count mismatch");

    const int n_dates = spec.tenor;
    std::vector<int> schedule(n_dates);
    for (int i = 0; i < n_dates; ++i) schedule[i] = i;
    if (!config.exercise_subset.empty()) {
        schedule = config.exercise_subset;
        std::sort(schedule.begin(), schedule.end());
        schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());
        if (schedule.back() >= n_dates)
            throw std::invalid_argument("LsmcConfig: exercise index beyond schedule");
    }

    const double strike = atm_strike(spec, curves);
    const G1ppParams& params = paths.params;

    // Per exercise date: the co-terminal swap PV as a function of the factor.
    std::vector<SwapStateEval> intrinsic_eval(n_dates);
    for (int e : schedule) {
        const double start = spec.no_call + e;
        intrinsic_eval[e] = make_state_eval(
            swap_zcb_weights(curves, spec.side, start, spec.maturity() - spec.no_call - e,
                             strike),
            params, curves, spec.notional);
    }

    const std::size_t n = paths.n_paths;
    const std::size_t nt = paths.n_times();
    std::vector<double> cashflow(n, 0.0);  // discounted to time 0
    std::vector<int> exercise_at(n, -1);   // schedule index, -1 = never
    std::vector<double> intrinsic(n);

    LsmcResult res;
    res.exercise_fractions.assign(n_dates, 0.0);

    const auto eval_intrinsic = [&](int date) {
        const std::size_t gi = static_cast<std::size_t>(date) + 1;
        const auto& ev = intrinsic_eval[date];
#pragma omp parallel for schedule(static)
        for (std::int64_t p = 0; p < static_cast<std::int64_t>(n); ++p)
            intrinsic[static_cast<std::size_t>(p)] =
                ev(paths.states[static_cast<std::size_t>(p) * nt + gi]);
    };

    // Last exercisable date: cash flow is the positive part of the intrinsic.
    {
        const int date = schedule.back();
        const std::size_t gi = static_cast<std::size_t>(date) + 1;
        eval_intrinsic(date);
#pragma omp parallel for schedule(static)
        for (std::int64_t p = 0; p < static_cast<std::int64_t>(n); ++p) {
            const std::size_t i = static_cast<std::size_t>(p);
            if (intrinsic[i] > 0.0) {
                cashflow[i] = intrinsic[i] * paths.numeraire_df[i * nt + gi];
                exercise_at[i] = date;
            }
        }
    }

    const int max_deg = config.basis_degree;
    const int dim = max_deg + 1;

    // Backward over the remaining dates.
    for (int si = static_cast<int>(schedule.size()) - 2; si >= 0; --si) {
        const int date = schedule[si];
        const std::size_t gi = static_cast<std::size_t>(date) + 1;
        eval_intrinsic(date);

        // Pass 1: moments of the state over the regression set, chunk-ordered.
        const std::size_t nc = n_chunks(n);
        std::vector<std::array<double, 3>> mom(nc, {0.0, 0.0, 0.0});
#pragma omp parallel for schedule(static)
        for (std::int64_t c = 0; c < static_cast<std::int64_t>(nc); ++c) {
            const std::size_t b = static_cast<std::size_t>(c) * kChunk;
            const std::size_t e = std::min(b + kChunk, n);
            auto& m = mom[static_cast<std::size_t>(c)];
            for (std::size_t i = b; i < e; ++i) {
                if (config.itm_only && !(intrinsic[i] > 0.0)) continue;
                const double x = paths.states[i * nt + gi];
                m[0] += 1.0;
                m[1] += x;
                m[2] += x * x;
            }
        }
        double cnt = 0.0, sx = 0.0, sxx = 0.0;
        for (const auto& m : mom) {
            cnt += m[0];
            sx += m[1];
            sxx += m[2];
        }
        if (cnt == 0.0) continue;  // nobody in the money: continuation rolls forward

        BasisScale bs;
        bs.mean = sx / cnt;
        const double var = std::max(sxx / cnt - bs.mean * bs.mean, 0.0);
        bs.inv_sd = var > 1e-24 ? 1.0 / std::sqrt(var) : 0.0;
        const int deg_cap = bs.inv_sd == 0.0 ? 0 : max_deg;

        // Pass 2: normal equations, chunk-ordered accumulation.
        std::vector<Eigen::MatrixXd> gram_part(nc, Eigen::MatrixXd::Zero(dim, dim));
        std::vector<Eigen::VectorXd> rhs_part(nc, Eigen::VectorXd::Zero(dim));
#pragma omp parallel for schedule(static)
        for (std::int64_t c = 0; c < static_cast<std::int64_t>(nc); ++c) {
            const std::size_t b = static_cast<std::size_t>(c) * kChunk;
            const std::size_t e = std::min(b + kChunk, n);
            Eigen::MatrixXd& G = gram_part[static_cast<std::size_t>(c)];
            Eigen::VectorXd& r = rhs_part[static_cast<std::size_t>(c)];
            Eigen::VectorXd phi(dim);
            for (std::size_t i = b; i < e; ++i) {
                if (config.itm_only && !(intrinsic[i] > 0.0)) continue;
                const double z =
                    (paths.states[i * nt + gi] - bs.mean) * (bs.inv_sd == 0.0 ? 0.0 : bs.inv_sd);
                phi(0) = 1.0;
                for (int d = 1; d < dim; ++d) phi(d) = phi(d - 1) * z;
                const double y = cashflow[i] / paths.numeraire_df[i * nt + gi];
                G.selfadjointView<Eigen::Lower>().rankUpdate(phi);
                r += y * phi;
            }
        }
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(dim, dim);
        Eigen::VectorXd r = Eigen::VectorXd::Zero(dim);
        for (std::size_t c = 0; c < nc; ++c) {
            G += gram_part[c];
            r += rhs_part[c];
        }
        G = G.selfadjointView<Eigen::Lower>();

        // Solve at the highest degree that yields a finite solution; the Gram
        // matrix of a lower degree is the leading principal block.
        Eigen::VectorXd beta;
        int deg_used = -1;
        for (int d = deg_cap; d >= 0; --d) {
            const int k = d + 1;
            Eigen::MatrixXd Gd = G.topLeftCorner(k, k);
            Eigen::LDLT<Eigen::MatrixXd> ldlt(Gd);
            Eigen::VectorXd sol;
            if (ldlt.info() == Eigen::Success) {
                sol = ldlt.solve(r.head(k));
                if (sol.allFinite()) {
                    beta = sol;
                    deg_used = d;
                    break;
                }
            }
            Gd.diagonal().array() += 1e-10 * Gd.trace() / k;
            Eigen::LDLT<Eigen::MatrixXd> ldlt2(Gd);
            if (ldlt2.info() == Eigen::Success) {
                sol = ldlt2.solve(r.head(k));
                if (sol.allFinite()) {
                    beta = sol;
                    deg_used = d;
                    break;
                }
            }
        }
        if (deg_used < 0) continue;  // untrainable regression: hold everywhere
        if (deg_used < max_deg)
            res.warnings.push_back("regression at t=" + std::to_string(grid[gi]) +
                                   " fell back to degree " + std::to_string(deg_used));

        const int kdim = deg_used + 1;
#pragma omp parallel for schedule(static)
        for (std::int64_t p = 0; p < static_cast<std::int64_t>(n); ++p) {
            const std::size_t i = static_cast<std::size_t>(p);
            if (!(intrinsic[i] > 0.0)) continue;
            const double z =
                (paths.states[i * nt + gi] - bs.mean) * (bs.inv_sd == 0.0 ? 0.0 : bs.inv_sd);
            double cont = 0.0, zp = 1.0;
            for (int d = 0; d < kdim; ++d) {
                cont += beta(d) * zp;
                zp *= z;
            }
            if (intrinsic[i] > cont) {
                cashflow[i] = intrinsic[i] * paths.numeraire_df[i * nt + gi];
                exercise_at[i] = date;
            }
        }
    }

    // Price and (pairing-aware) standard error.
    if (paths.antithetic) {
        const std::size_t half = n / 2;
        std::vector<double> pair_mean(half);
#pragma omp parallel for schedule(static)
        for (std::int64_t q = 0; q < static_cast<std::int64_t>(half); ++q)
            pair_mean[static_cast<std::size_t>(q)] =
                0.5 * (cashflow[2 * static_cast<std::size_t>(q)] +
                       cashflow[2 * static_cast<std::size_t>(q) + 1]);
        const double mean = chunked_sum(pair_mean) / static_cast<double>(half);
        std::vector<double> sq(half);
#pragma omp parallel for schedule(static)
        for (std::int64_t q = 0; q < static_cast<std::int64_t>(half); ++q) {
            const double d = pair_mean[static_cast<std::size_t>(q)] - mean;
            sq[static_cast<std::size_t>(q)] = d * d;
        }
        res.price = mean;
        res.std_error = std::sqrt(chunked_sum(sq) / static_cast<double>(half - 1) /
                                  static_cast<double>(half));
    } else {
        const double mean = chunked_sum(cashflow) / static_cast<double>(n);
        std::vector<double> sq(n);
#pragma omp parallel for schedule(static)
        for (std::int64_t p = 0; p < static_cast<std::int64_t>(n); ++p) {
            const double d = cashflow[static_cast<std::size_t>(p)] - mean;
            sq[static_cast<std::size_t>(p)] = d * d;
        }
        res.price = mean;
        res.std_error = std::sqrt(chunked_sum(sq) / static_cast<double>(n - 1) /
                                  static_cast<double>(n));
    }

    std::vector<std::size_t> counts(n_dates, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (exercise_at[i] >= 0) ++counts[static_cast<std::size_t>(exercise_at[i])];
    for (int e = 0; e < n_dates; ++e)
        res.exercise_fractions[e] = static_cast<double>(counts[e]) / static_cast<double>(n);
    return res;
}

LsmcResult price_bermudan(const BermudanSpec& spec, const G1ppParams& params,
                          const CurveSet& curves, const LsmcConfig& config) {
    spec.validate();
    params.validate();
    config.validate();
    const PathSet paths = simulate(params, spec.grid_times(), config.n_paths, config.seed,
                                   curves.discount, config.antithetic);
    return price_bermudan_on_paths(spec, curves, paths, config);
}

std::vector<BasketCellResult> price_basket(const std::vector<BermudanSpec>& specs,
                                           const ScenarioGrid& grid, const CurveSet& curves,
                                           const LsmcConfig& config) {
    if (specs.empty()) throw std::invalid_argument("price_basket: empty basket");
    if (grid.scenarios.empty()) throw std::invalid_argument("price_basket: empty grid");
    const std::size_t n_cells = specs.size() * grid.scenarios.size();
    std::vector<BasketCellResult> cells(n_cells);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(n_cells); ++idx) {
        const std::size_t i = static_cast<std::size_t>(idx);
        const std::size_t s = i / grid.scenarios.size();
        const std::size_t c = i % grid.scenarios.size();
        BasketCellResult& cell = cells[i];
        cell.spec_index = s;
        cell.scenario_index = c;
        LsmcConfig cell_cfg = config;
        cell_cfg.seed = config.seed + i;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cell.result = price_bermudan(specs[s], grid.scenarios[c], curves, cell_cfg);
            cell.ok = true;
        } catch (const std::exception& ex) {
            cell.ok = false;
            cell.error = ex.what();
        }
        cell.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
    }
    return cells;
}

}  // namespace bermuda
