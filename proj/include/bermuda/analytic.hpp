#pragma once

#include "bermuda/g1pp.hpp"
#include "bermuda/swaption.hpp"
#include "bermuda/yield_curve.hpp"

namespace bermuda {

/// European option on a zero-coupon bond under the one-factor Gaussian model.
/// expiry = option expiry T, bond_maturity = S > T, strike in bond-price terms.
double zcb_call(const G1ppParams& params, const CurveSet& curves, double expiry,
                double bond_maturity, double strike);
double zcb_put(const G1ppParams& params, const CurveSet& curves, double expiry,
               double bond_maturity, double strike);

/// Closed-form European swaption price: the swap is decomposed into a zero-
/// coupon bond portfolio, the critical factor value where it prices at par is
/// located by bracketed bisection, and each piece is priced as a bond option.
/// Throws numerical_error if the root bracket cannot be established.
double european_price_g1pp(const EuropeanSpec& spec, const G1ppParams& params,
                           const CurveSet& curves);

/// Time-0 PV of the forward swap underlying the spec (model-free given the
/// curves; used by the put-call parity checks).
double forward_swap_pv(const EuropeanSpec& spec, const CurveSet& curves);

/// Price of every co-terminal European under the Bermudan's absolute strike,
/// ordered by exercise date.
std::vector<double> co_terminal_prices(const BermudanSpec& spec, const G1ppParams& params,
                                       const CurveSet& curves);

/// The Bermudan's lower bound: max over the co-terminal European family.
double max_european(const BermudanSpec& spec, const G1ppParams& params,
                    const CurveSet& curves);

}  // namespace bermuda
