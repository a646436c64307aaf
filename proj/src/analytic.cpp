#include "bermuda/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bermuda/errors.hpp"
#include "bermuda/rng.hpp"

namespace bermuda {

namespace {

// Lognormal bond-option pieces (Gaussian short rate): sigma_p is the
// volatility of P(T,S) at expiry T.
double bond_option_sigma(const G1ppParams& p, double expiry, double bond_maturity) {
    const double var_x = ou::state_variance(p.a, p.sigma, expiry);
    return std::sqrt(var_x) * ou::mean_rev_integral(p.a, bond_maturity - expiry);
}

}  // namespace

double zcb_call(const G1ppParams& params, const CurveSet& curves, double expiry,
                double bond_maturity, double strike) {
    const double pT = curves.discount.discount_factor(expiry);
    const double pS = curves.discount.discount_factor(bond_maturity);
    const double sp = bond_option_sigma(params, expiry, bond_maturity);
    if (sp <= 0.0) return std::max(pS - strike * pT, 0.0);
    const double h = std::log(pS / (pT * strike)) / sp + 0.5 * sp;
    return pS * normal_cdf(h) - strike * pT * normal_cdf(h - sp);
}

double zcb_put(const G1ppParams& params, const CurveSet& curves, double expiry,
               double bond_maturity, double strike) {
    const double pT = curves.discount.discount_factor(expiry);
    const double pS = curves.discount.discount_factor(bond_maturity);
    const double sp = bond_option_sigma(params, expiry, bond_maturity);
    if (sp <= 0.0) return std::max(strike * pT - pS, 0.0);
    const double h = std::log(pS / (pT * strike)) / sp + 0.5 * sp;
    return strike * pT * normal_cdf(-h + sp) - pS * normal_cdf(-h);
}

double forward_swap_pv(const EuropeanSpec& spec, const CurveSet& curves) {
    spec.validate();
    const double sign = spec.side == Side::Payer ? 1.0 : -1.0;
    const double pv = float_leg_pv(curves, spec.expiry, spec.tenor) -
                      spec.strike * fixed_annuity(curves.discount, spec.expiry, spec.tenor);
    return spec.notional * sign * pv;
}

double european_price_g1pp(const EuropeanSpec& spec, const G1ppParams& params,
                           const CurveSet& curves) {
    spec.validate();
    params.validate();

    // Work with payer weights: g(x) is increasing in the factor, which the
    // bracket search below requires. The receiver is priced off the same
    // critical value through bond calls instead of puts.
    const SwapZcbWeights w =
        swap_zcb_weights(curves, Side::Payer, spec.expiry, spec.tenor, spec.strike);
    const SwapStateEval g = make_state_eval(w, params, curves, 1.0);

    // Critical factor value x*: the swap prices at par. The bracket widens
    // geometrically but stays inside the exp() range of the bond evaluator;
    // if the swap never crosses par within that range the option degenerates
    // to the forward swap (or to zero) to double precision.
    double max_decay = 0.0;
    for (std::size_t k = 0; k < w.pay_times.size(); ++k)
        max_decay = std::max(max_decay,
                             ou::mean_rev_integral(params.a, w.pay_times[k] - spec.expiry));
    const double x_bound = max_decay > 0.0 ? 690.0 / max_decay : 1e12;

    const double sd = std::sqrt(ou::state_variance(params.a, params.sigma, spec.expiry));
    double lo = sd > 0.0 ? -10.0 * sd : -1.0;
    double hi = sd > 0.0 ? 10.0 * sd : 1.0;
    int widen = 0;
    while (g(lo) > 0.0 && -lo < x_bound && widen < 200) {
        lo *= 2.0;
        ++widen;
    }
    while (g(hi) < 0.0 && hi < x_bound && widen < 200) {
        hi *= 2.0;
        ++widen;
    }
    if (g(lo) > 0.0)  // above par for every reachable state
        return spec.side == Side::Payer ? forward_swap_pv(spec, curves) : 0.0;
    if (g(hi) < 0.0)  // below par for every reachable state
        return spec.side == Side::Receiver ? forward_swap_pv(spec, curves) : 0.0;
    if (!std::isfinite(g(lo)) || !std::isfinite(g(hi)))
        throw numerical_error(
            "european_price_g1pp: root bracket exhausted after 200 widenings (expiry " +
            std::to_string(spec.expiry) + ", strike " + std::to_string(spec.strike) + ")");
    // Bisect to interval convergence; the residual in g lands orders of
    // magnitude inside the 1e-12 coupon-bond tolerance.
    double xs = 0.5 * (lo + hi);
    for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + std::abs(xs)); ++it) {
        xs = 0.5 * (lo + hi);
        if (g(xs) < 0.0)
            lo = xs;
        else
            hi = xs;
    }

    // Decompose the positive part into bond options struck at the bond prices
    // seen from x*: (g(x))^+ = sum_k (-c_k) (K_k - P_k(x))^+ for the payer.
    const double vt = ou::integrated_variance(params.a, params.sigma, spec.expiry);
    const double df_expiry = curves.discount.discount_factor(spec.expiry);
    double price = 0.0;
    for (std::size_t k = 0; k < w.pay_times.size(); ++k) {
        if (w.coeff[k] == 0.0) continue;
        const double T = w.pay_times[k];
        const double log_adj =
            0.5 * (ou::integrated_variance(params.a, params.sigma, T - spec.expiry) -
                   ou::integrated_variance(params.a, params.sigma, T) + vt);
        const double decay = ou::mean_rev_integral(params.a, T - spec.expiry);
        const double crit_bond =
            curves.discount.discount_factor(T) / df_expiry * std::exp(log_adj - decay * xs);
        const double piece = spec.side == Side::Payer
                                 ? zcb_put(params, curves, spec.expiry, T, crit_bond)
                                 : zcb_call(params, curves, spec.expiry, T, crit_bond);
        price += -w.coeff[k] * piece;
    }
    return spec.notional * price;
}

std::vector<double> co_terminal_prices(const BermudanSpec& spec, const G1ppParams& params,
                                       const CurveSet& curves) {
    const double strike = atm_strike(spec, curves);
    std::vector<double> prices;
    for (const auto& euro : co_terminal_europeans(spec, strike))
        prices.push_back(european_price_g1pp(euro, params, curves));
    return prices;
}

double max_european(const BermudanSpec& spec, const G1ppParams& params,
                    const CurveSet& curves) {
    const auto prices = co_terminal_prices(spec, params, curves);
    return *std::max_element(prices.begin(), prices.end());
}

}  // namespace bermuda
