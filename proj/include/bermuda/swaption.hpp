#pragma once

#include <string>
#include <vector>

#include "bermuda/g1pp.hpp"
#include "bermuda/yield_curve.hpp"

namespace bermuda {

enum class Side { Payer, Receiver };

std::string to_string(Side s);
Side side_from_string(const std::string& s);

/// Bermudan swaption with annual co-terminal exercise: exercising at T enters
/// the swap running from T to the fixed final maturity no_call + tenor.
/// The strike is quoted as a basis-point offset from the ATM forward rate of
/// the first underlying swap and stays fixed across exercise dates.
struct BermudanSpec {
    Side side = Side::Payer;
    int no_call = 1;             // years to first exercise
    int tenor = 2;               // years of underlying swap at first exercise
    double strike_offset_bp = 0.0;
    double notional = 10000.0;

    int maturity() const { return no_call + tenor; }

    // {no_call, no_call+1, ..., no_call+tenor-1}
    std::vector<double> exercise_times() const;

    // Simulation grid: time 0 followed by the exercise dates.
    std::vector<double> grid_times() const;

    void validate() const;  // structural constraints only
};

struct EuropeanSpec {
    Side side = Side::Payer;
    double expiry = 1.0;
    int tenor = 1;
    double strike = 0.0;  // absolute decimal rate
    double notional = 10000.0;

    void validate() const;
};

// Contract domains of the dataset universe.
namespace domains {
extern const std::vector<int> tenors;
extern const std::vector<int> no_calls;
extern const std::vector<double> strike_offsets_bp;
}  // namespace domains

bool in_table_domains(const BermudanSpec& spec);
std::string table_domains_text();

// ATM forward rate of the first underlying swap plus the quoted offset.
double atm_strike(const BermudanSpec& spec, const CurveSet& curves);

// The co-terminal European family {(T_i, maturity - T_i)} at a fixed strike.
std::vector<EuropeanSpec> co_terminal_europeans(const BermudanSpec& spec, double strike);

/// A forward swap written as a portfolio of discount-curve zero-coupon bonds
/// observed at the valuation time (the multi-curve spread is deterministic
/// under the model, so floating cash flows reduce to scaled discount bonds).
/// Sign convention follows the requested side; value = constant + sum of
/// coeff[k] * P(valuation_time, pay_time[k]).
struct SwapZcbWeights {
    double valuation_time = 0.0;
    double constant = 0.0;
    std::vector<double> pay_times;
    std::vector<double> coeff;
};

SwapZcbWeights swap_zcb_weights(const CurveSet& curves, Side side, double start, int tenor,
                                double strike);

/// Fast per-path evaluator of a swap PV at its valuation time:
/// value(x) = scale * (constant + sum weight[k] * exp(-decay[k] * x)).
struct SwapStateEval {
    double scale = 1.0;
    double constant = 0.0;
    std::vector<double> weight;
    std::vector<double> decay;

    double operator()(double x) const;
};

SwapStateEval make_state_eval(const SwapZcbWeights& weights, const G1ppParams& params,
                              const CurveSet& curves, double scale);

/// Model-implied swap rate at a future date as a function of the factor.
struct SwapRateEval {
    SwapStateEval float_leg;
    SwapStateEval annuity;

    double operator()(double x) const { return float_leg(x) / annuity(x); }
};

SwapRateEval make_swap_rate_eval(const CurveSet& curves, const G1ppParams& params,
                                 double start, int tenor);

}  // namespace bermuda
