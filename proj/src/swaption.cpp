#include "bermuda/swaption.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bermuda {

std::string to_string(Side s) { return s == Side::Payer ? "payer" : "receiver"; }

Side side_from_string(const std::string& s) {
    if (s == "payer") return Side::Payer;
    if (s == "receiver") return Side::Receiver;
    throw std::invalid_argument("side must be 'payer' or 'receiver', got '" + s + "'");
}

std::vector<double> BermudanSpec::exercise_times() const {
    std::vector<double> t(tenor);
    for (int i = 0; i < tenor; ++i) t[i] = no_call + i;
    return t;
}

std::vector<double> BermudanSpec::grid_times() const {
    std::vector<double> t;
    t.reserve(tenor + 1);
    t.push_back(0.0);
    for (double e : exercise_times()) t.push_back(e);
    return t;
}

void BermudanSpec::validate() const {
    if (no_call < 1) throw std::invalid_argument("BermudanSpec: no_call must be >= 1");
    if (tenor < 1) throw std::invalid_argument("BermudanSpec: tenor must be >= 1");
    if (!(notional > 0.0)) throw std::invalid_argument("BermudanSpec: notional must be > 0");
    if (!std::isfinite(strike_offset_bp))
        throw std::invalid_argument("BermudanSpec: non-finite strike offset");
}

void EuropeanSpec::validate() const {
    if (!(expiry > 0.0)) throw std::invalid_argument("EuropeanSpec: expiry must be > 0");
    if (tenor < 1) throw std::invalid_argument("EuropeanSpec: tenor must be >= 1");
    if (!(notional > 0.0)) throw std::invalid_argument("EuropeanSpec: notional must be > 0");
    if (!std::isfinite(strike)) throw std::invalid_argument("EuropeanSpec: non-finite strike");
}

namespace domains {
const std::vector<int> tenors = {2, 5, 10, 15, 20};
const std::vector<int> no_calls = {1, 2, 3, 4, 5, 7, 10, 15, 20};
const std::vector<double> strike_offsets_bp = {-100, -75, -60, -50, -40, -30, -25, -20,
                                               -15,  -10, -7,  -5,  -2,  0,   20,  25,
                                               30,   50,  100, 200, 300, 400};
}  // namespace domains

bool in_table_domains(const BermudanSpec& spec) {
    const auto has = [](const auto& v, auto x) {
        return std::find(v.begin(), v.end(), x) != v.end();
    };
    return has(domains::tenors, spec.tenor) && has(domains::no_calls, spec.no_call) &&
           has(domains::strike_offsets_bp, spec.strike_offset_bp);
}

std::string table_domains_text() {
    std::ostringstream os;
    os << "tenor in {";
    for (size_t i = 0; i < domains::tenors.size(); ++i)
        os << (i ? "," : "") << domains::tenors[i];
    os << "}, no_call in {";
    for (size_t i = 0; i < domains::no_calls.size(); ++i)
        os << (i ? "," : "") << domains::no_calls[i];
    os << "}, strike offset (bp) in {";
    for (size_t i = 0; i < domains::strike_offsets_bp.size(); ++i)
        os << (i ? "," : "") << domains::strike_offsets_bp[i];
    os << "}, side in {payer,receiver}";
    return os.str();
}

double atm_strike(const BermudanSpec& spec, const CurveSet& curves) {
    spec.validate();
    return forward_swap_rate(curves, spec.no_call, spec.tenor) + spec.strike_offset_bp * 1e-4;
}

std::vector<EuropeanSpec> co_terminal_europeans(const BermudanSpec& spec, double strike) {
    spec.validate();
    std::vector<EuropeanSpec> out;
    out.reserve(spec.tenor);
    for (int i = 0; i < spec.tenor; ++i)
        out.push_back(EuropeanSpec{spec.side, static_cast<double>(spec.no_call + i),
                                   spec.maturity() - spec.no_call - i, strike, spec.notional});
    return out;
}

SwapZcbWeights swap_zcb_weights(const CurveSet& curves, Side side, double start, int tenor,
                                double strike) {
    if (tenor < 1) throw std::invalid_argument("swap_zcb_weights: tenor must be >= 1");
    if (start < 0.0) throw std::invalid_argument("swap_zcb_weights: start < 0");

    // Per-period multiplicative spread between forwarding and discount curves,
    // read off the time-0 market curves; it is preserved under the model.
    std::map<double, double> coeff;  // pay time -> coefficient, payer sign
    const int n_float = 2 * tenor;
    for (int j = 1; j <= n_float; ++j) {
        const double t0 = start + swap_conv::float_step * (j - 1);
        const double t1 = start + swap_conv::float_step * j;
        const double kappa =
            (curves.forwarding.discount_factor(t0) / curves.forwarding.discount_factor(t1)) /
            (curves.discount.discount_factor(t0) / curves.discount.discount_factor(t1));
        coeff[t0] += kappa;
        coeff[t1] -= 1.0;
    }
    for (int i = 1; i <= tenor; ++i)
        coeff[start + i] -= strike * swap_conv::fixed_accrual;

    const double sign = side == Side::Payer ? 1.0 : -1.0;
    SwapZcbWeights w;
    w.valuation_time = start;
    for (const auto& [t, c] : coeff) {
        if (t == start) {
            w.constant = sign * c;
        } else {
            w.pay_times.push_back(t);
            w.coeff.push_back(sign * c);
        }
    }
    return w;
}

double SwapStateEval::operator()(double x) const {
    double v = constant;
    for (std::size_t k = 0; k < weight.size(); ++k) v += weight[k] * std::exp(-decay[k] * x);
    return scale * v;
}

SwapStateEval make_state_eval(const SwapZcbWeights& weights, const G1ppParams& params,
                              const CurveSet& curves, double scale) {
    SwapStateEval ev;
    ev.scale = scale;
    ev.constant = weights.constant;
    const double t = weights.valuation_time;
    const double vt = ou::integrated_variance(params.a, params.sigma, t);
    ev.weight.resize(weights.pay_times.size());
    ev.decay.resize(weights.pay_times.size());
    for (std::size_t k = 0; k < weights.pay_times.size(); ++k) {
        const double T = weights.pay_times[k];
        const double log_adj = 0.5 * (ou::integrated_variance(params.a, params.sigma, T - t) -
                                      ou::integrated_variance(params.a, params.sigma, T) + vt);
        const double a_part = curves.discount.discount_factor(T) /
                              curves.discount.discount_factor(t) * std::exp(log_adj);
        ev.weight[k] = weights.coeff[k] * a_part;
        ev.decay[k] = ou::mean_rev_integral(params.a, T - t);
    }
    return ev;
}

SwapRateEval make_swap_rate_eval(const CurveSet& curves, const G1ppParams& params,
                                 double start, int tenor) {
    // Float leg: payer weights of a zero-strike swap. Annuity: minus the fixed
    // leg of a unit-strike zero-float swap, assembled directly here.
    SwapZcbWeights float_w = swap_zcb_weights(curves, Side::Payer, start, tenor, 0.0);

    SwapZcbWeights ann_w;
    ann_w.valuation_time = start;
    for (int i = 1; i <= tenor; ++i) {
        ann_w.pay_times.push_back(start + i);
        ann_w.coeff.push_back(swap_conv::fixed_accrual);
    }

    SwapRateEval ev;
    ev.float_leg = make_state_eval(float_w, params, curves, 1.0);
    ev.annuity = make_state_eval(ann_w, params, curves, 1.0);
    return ev;
}

}  // namespace bermuda
