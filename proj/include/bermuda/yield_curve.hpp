#pragma once

#include <string>
#include <vector>

#include "bermuda/dates.hpp"

namespace bermuda {

/// Dated zero-rate term structure, continuously compounded, act/365.
///
/// Pillars hold the quoted rate in percent (as printed in market files);
/// all pricing goes through the decimal `rate`. Zero rates are linearly
/// interpolated in the act/365 year fraction, flat beyond the last pillar.
/// Immutable after construction and safe to share across threads.
class YieldCurve {
  public:
    struct Pillar {
        Date date;
        double rate_pct;  // quoted, percent per annum
        double rate;      // decimal fraction per annum
        double time;      // act/365 from anchor
    };

    YieldCurve(Date anchor, std::vector<std::pair<Date, double>> date_rate_pct,
               std::string label);

    const Date& anchor() const { return anchor_; }
    const std::string& label() const { return label_; }
    const std::vector<Pillar>& pillars() const { return pillars_; }
    double max_time() const { return pillars_.back().time; }

    // Interpolated continuously compounded zero rate at year fraction t >= 0.
    double zero_rate(double t) const;

    // exp(-z(t) * t); exactly 1 at t = 0. Throws on t < 0.
    double discount_factor(double t) const;

    void save_csv(const std::string& path) const;

  private:
    Date anchor_;
    std::string label_;
    std::vector<Pillar> pillars_;
};

// Reads the documented curve CSV (header `date,zero_rate_pct`, dates dd/mm/yy,
// rates in percent). Percent-to-decimal conversion happens here, once.
YieldCurve load_curve(const std::string& path, const std::string& label,
                      const Date& anchor = Date{2019, 10, 31});

struct CurveSet {
    YieldCurve discount;    // OIS, used for all discounting
    YieldCurve forwarding;  // EURIBOR 6M, source of floating-leg forwards
};

// Swap leg conventions used throughout: fixed leg annual 30/360 (accrual
// exactly 1 per period on the synthetic year grid), floating leg semiannual
// act/360 (accrual 365/720 per period), both discounted on the OIS curve.
namespace swap_conv {
inline constexpr double fixed_accrual = 1.0;
inline constexpr double float_accrual = 365.0 / 720.0;
inline constexpr double float_step = 0.5;
}  // namespace swap_conv

// Fixed-leg annuity of a swap running [start, start+tenor], unit coupon.
double fixed_annuity(const YieldCurve& discount, double start, int tenor_years);

// PV of the floating leg: semiannual forwards read off the forwarding curve,
// discounted on the discount curve.
double float_leg_pv(const CurveSet& curves, double start, int tenor_years);

// Fair fixed rate of the forward-starting swap: float PV / fixed annuity.
// Throws std::invalid_argument on start < 0 or tenor < 1.
double forward_swap_rate(const CurveSet& curves, double start, int tenor_years);

}  // namespace bermuda
