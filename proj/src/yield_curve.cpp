#include "bermuda/yield_curve.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "bermuda/io_util.hpp"

namespace bermuda {

YieldCurve::YieldCurve(Date anchor, std::vector<std::pair<Date, double>> quotes,
                       std::string label)
    : anchor_(anchor), label_(std::move(label)) {
    if (quotes.size() < 2)
        throw std::invalid_argument("curve '" + label_ + "': need at least 2 pillars");
    pillars_.reserve(quotes.size());
    for (const auto& [date, pct] : quotes) {
        if (!std::isfinite(pct))
            throw std::invalid_argument("curve '" + label_ + "': non-finite rate");
        if (date < anchor_)
            throw std::invalid_argument("curve '" + label_ + "': pillar before anchor " +
                                        date.to_ddmmyy());
        if (!pillars_.empty() && !(pillars_.back().date < date))
            throw std::runtime_error("curve '" + label_ +
                                     "': pillar dates not strictly increasing at " +
                                     date.to_ddmmyy());
        pillars_.push_back(Pillar{date, pct, pct / 100.0,
                                  year_fraction(anchor_, date, DayCount::Act365)});
    }
}

double YieldCurve::zero_rate(double t) const {
    if (t < 0.0) throw std::invalid_argument("zero_rate: t < 0");
    if (t <= pillars_.front().time) return pillars_.front().rate;
    if (t >= pillars_.back().time) return pillars_.back().rate;
    // binary search for the bracketing pillars
    size_t lo = 0, hi = pillars_.size() - 1;
    while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        if (pillars_[mid].time <= t)
            lo = mid;
        else
            hi = mid;
    }
    const auto& a = pillars_[lo];
    const auto& b = pillars_[hi];
    if (t == a.time) return a.rate;
    const double w = (t - a.time) / (b.time - a.time);
    return a.rate + w * (b.rate - a.rate);
}

double YieldCurve::discount_factor(double t) const {
    if (t < 0.0) throw std::invalid_argument("discount_factor: t < 0");
    if (t == 0.0) return 1.0;
    return std::exp(-zero_rate(t) * t);
}

void YieldCurve::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write curve file '" + path + "'");
    out << "date,zero_rate_pct\n";
    for (const auto& p : pillars_) out << p.date.to_ddmmyy() << "," << fmt_double(p.rate_pct) << "\n";
}

YieldCurve load_curve(const std::string& path, const std::string& label, const Date& anchor) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open curve file '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("curve file '" + path + "': empty");
    auto header = split_csv_line(line);
    if (header.size() != 2 || header[0] != "date" || header[1] != "zero_rate_pct")
        throw std::runtime_error("curve file '" + path +
                                 "': expected header 'date,zero_rate_pct'");
    std::vector<std::pair<Date, double>> quotes;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto cols = split_csv_line(line);
        if (cols.size() != 2)
            throw std::runtime_error("curve file '" + path + "' line " +
                                     std::to_string(lineno) + ": expected 2 columns");
        quotes.emplace_back(Date::parse_ddmmyy(cols[0]),
                            parse_double(cols[1], "curve file '" + path + "'"));
    }
    return YieldCurve(anchor, std::move(quotes), label);
}

double fixed_annuity(const YieldCurve& discount, double start, int tenor_years) {
    double a = 0.0;
    for (int i = 1; i <= tenor_years; ++i)
        a += swap_conv::fixed_accrual * discount.discount_factor(start + i);
    return a;
}

double float_leg_pv(const CurveSet& curves, double start, int tenor_years) {
    // Forward accrual and payment accrual share the act/360 convention, so the
    // per-period PV collapses to (Pf(S_{j-1})/Pf(S_j) - 1) * Pd(S_j).
    double pv = 0.0;
    const int n = 2 * tenor_years;
    for (int j = 1; j <= n; ++j) {
        const double t0 = start + swap_conv::float_step * (j - 1);
        const double t1 = start + swap_conv::float_step * j;
        const double fwd_ratio =
            curves.forwarding.discount_factor(t0) / curves.forwarding.discount_factor(t1);
        pv += (fwd_ratio - 1.0) * curves.discount.discount_factor(t1);
    }
    return pv;
}

double forward_swap_rate(const CurveSet& curves, double start, int tenor_years) {
    if (start < 0.0) throw std::invalid_argument("forward_swap_rate: start < 0");
    if (tenor_years < 1)
        throw std::invalid_argument("forward_swap_rate: tenor shorter than one fixed period");
    return float_leg_pv(curves, start, tenor_years) / fixed_annuity(curves.discount, start, tenor_years);
}

}  // namespace bermuda
