#include "bermuda/dataset.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "bermuda/analytic.hpp"
#include "bermuda/io_util.hpp"
#include "bermuda/rng.hpp"

namespace bermuda {

const std::vector<std::string>& feature_names() {
    static const std::vector<std::string> names{"tenor",   "strike_bp", "side_payer",
                                                "no_call", "corr",      "max_euro"};
    return names;
}

Eigen::MatrixXd feature_matrix(const std::vector<FeatureRow>& rows) {
    Eigen::MatrixXd x(rows.size(), 6);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        x(i, 0) = rows[i].tenor;
        x(i, 1) = rows[i].strike_bp;
        x(i, 2) = rows[i].side_payer;
        x(i, 3) = rows[i].no_call;
        x(i, 4) = rows[i].corr;
        x(i, 5) = rows[i].max_euro;
    }
    return x;
}

Eigen::VectorXd target_vector(const std::vector<FeatureRow>& rows) {
    Eigen::VectorXd y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) y(i) = rows[i].target;
    return y;
}

std::vector<std::string> constant_feature_columns(const std::vector<FeatureRow>& rows) {
    std::vector<std::string> out;
    if (rows.empty()) return feature_names();
    const Eigen::MatrixXd x = feature_matrix(rows);
    for (int c = 0; c < x.cols(); ++c)
        if ((x.col(c).array() == x(0, c)).all()) out.push_back(feature_names()[c]);
    return out;
}

std::vector<BermudanSpec> build_basket(const BasketConfig& config) {
    const auto check = [](const auto& values, const auto& domain, const char* what) {
        for (const auto& v : values)
            if (std::find(domain.begin(), domain.end(), v) == domain.end())
                throw std::invalid_argument(std::string("build_basket: ") + what +
                                            " outside the dataset universe; " +
                                            table_domains_text());
    };
    check(config.tenors, domains::tenors, "tenor");
    check(config.no_calls, domains::no_calls, "no_call");
    check(config.strike_offsets_bp, domains::strike_offsets_bp, "strike offset");
    if (config.tenors.empty() || config.no_calls.empty() || config.strike_offsets_bp.empty() ||
        config.sides.empty())
        throw std::invalid_argument("build_basket: empty dimension");

    std::vector<BermudanSpec> basket;
    basket.reserve(config.tenors.size() * config.no_calls.size() *
                   config.strike_offsets_bp.size() * config.sides.size());
    for (int tenor : config.tenors)
        for (int no_call : config.no_calls)
            for (Side side : config.sides)
                for (double off : config.strike_offsets_bp)
                    basket.push_back(BermudanSpec{side, no_call, tenor, off, config.notional});
    return basket;
}

std::vector<BermudanSpec> load_basket_csv(const std::string& path, double notional) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open basket file '" + path + "'");
    std::string line;
    if (!std::getline(in, line) ||
        split_csv_line(line) != std::vector<std::string>{"side", "no_call", "tenor", "strike_bp"})
        throw std::runtime_error("basket file '" + path +
                                 "': expected header 'side,no_call,tenor,strike_bp'");
    std::vector<BermudanSpec> basket;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cols = split_csv_line(line);
        if (cols.size() != 4)
            throw std::runtime_error("basket file '" + path + "' line " +
                                     std::to_string(lineno) + ": expected 4 columns");
        BermudanSpec spec;
        spec.side = side_from_string(cols[0]);
        spec.no_call = static_cast<int>(parse_double(cols[1], "basket no_call"));
        spec.tenor = static_cast<int>(parse_double(cols[2], "basket tenor"));
        spec.strike_offset_bp = parse_double(cols[3], "basket strike_bp");
        spec.notional = notional;
        if (!in_table_domains(spec))
            throw std::invalid_argument("basket file '" + path + "' line " +
                                        std::to_string(lineno) + ": " + table_domains_text());
        basket.push_back(spec);
    }
    return basket;
}

void save_basket_csv(const std::vector<BermudanSpec>& basket, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write basket file '" + path + "'");
    out << "side,no_call,tenor,strike_bp\n";
    for (const auto& s : basket)
        out << to_string(s.side) << "," << s.no_call << "," << s.tenor << ","
            << fmt_double(s.strike_offset_bp) << "\n";
}

double swap_rate_correlation(const BermudanSpec& spec, const PathSet& paths,
                             const CurveSet& curves, bool* degenerate) {
    spec.validate();
    if (degenerate) *degenerate = false;
    if (spec.tenor < 2)
        throw std::invalid_argument(
            "swap_rate_correlation: schedule has a single date, no rate pair exists");
    if (paths.times != spec.grid_times())
        throw std::invalid_argument("swap_rate_correlation: PathSet grid does not match spec");

    // Longest-tenor co-terminal at the first exercise date, shortest at the last.
    const auto long_eval =
        make_swap_rate_eval(curves, paths.params, spec.no_call, spec.tenor);
    const auto short_eval =
        make_swap_rate_eval(curves, paths.params, spec.maturity() - 1.0, 1);

    const std::size_t n = paths.n_paths;
    const std::size_t nt = paths.n_times();
    const std::size_t first = 1, last = nt - 1;
    double s1 = 0, s2 = 0, s11 = 0, s22 = 0, s12 = 0;
    for (std::size_t p = 0; p < n; ++p) {
        const double r1 = long_eval(paths.states[p * nt + first]);
        const double r2 = short_eval(paths.states[p * nt + last]);
        s1 += r1;
        s2 += r2;
        s11 += r1 * r1;
        s22 += r2 * r2;
        s12 += r1 * r2;
    }
    const double dn = static_cast<double>(n);
    const double v1 = s11 / dn - (s1 / dn) * (s1 / dn);
    const double v2 = s22 / dn - (s2 / dn) * (s2 / dn);
    const double scale = std::max({std::abs(s1 / dn), std::abs(s2 / dn), 1e-8});
    if (v1 <= 1e-24 * scale * scale || v2 <= 1e-24 * scale * scale) {
        if (degenerate) *degenerate = true;
        return 1.0;
    }
    const double corr = (s12 / dn - (s1 / dn) * (s2 / dn)) / std::sqrt(v1 * v2);
    return std::clamp(corr, -1.0, 1.0);
}

Dataset generate(const std::vector<BermudanSpec>& basket, const ScenarioGrid& grid,
                 const CurveSet& curves, const LsmcConfig& lsmc_config) {
    if (basket.empty()) throw std::invalid_argument("generate: empty basket");
    grid.validate();
    lsmc_config.validate();

    const std::size_t n_cells = basket.size() * grid.scenarios.size();
    std::vector<std::optional<FeatureRow>> slots(n_cells);
    std::vector<std::optional<CellFailure>> fails(n_cells);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(n_cells); ++idx) {
        const std::size_t i = static_cast<std::size_t>(idx);
        const std::size_t s = i / grid.scenarios.size();
        const std::size_t c = i % grid.scenarios.size();
        const BermudanSpec& spec = basket[s];
        const G1ppParams& params = grid.scenarios[c];
        LsmcConfig cfg = lsmc_config;
        cfg.seed = lsmc_config.seed + i;
        try {
            const PathSet paths = simulate(params, spec.grid_times(), cfg.n_paths, cfg.seed,
                                           curves.discount, cfg.antithetic);
            const LsmcResult priced = price_bermudan_on_paths(spec, curves, paths, cfg);
            FeatureRow row;
            row.spec_id = s;
            row.scenario_id = c;
            row.tenor = spec.tenor;
            row.strike_bp = spec.strike_offset_bp;
            row.side_payer = spec.side == Side::Payer ? 1.0 : 0.0;
            row.no_call = spec.no_call;
            row.corr = swap_rate_correlation(spec, paths, curves);
            row.max_euro = max_european(spec, params, curves);
            row.target = priced.price;
            row.lsmc_std_error = priced.std_error;
            slots[i] = row;
        } catch (const std::exception& ex) {
            fails[i] = CellFailure{s, c, ex.what()};
        }
    }

    Dataset ds;
    ds.rows.reserve(n_cells);
    for (std::size_t i = 0; i < n_cells; ++i) {
        if (slots[i]) ds.rows.push_back(*slots[i]);
        if (fails[i]) ds.failures.push_back(*fails[i]);
    }
    return ds;
}

SplitReport stratified_split(Dataset& dataset, double train_fraction, int n_bins,
                             std::uint64_t seed) {
    if (n_bins < 2) throw std::invalid_argument("stratified_split: n_bins must be >= 2");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("stratified_split: train fraction must be in (0,1)");
    const std::size_t n = dataset.rows.size();
    if (n < 2 * static_cast<std::size_t>(n_bins) && n < 4)
        throw std::invalid_argument("stratified_split: too few rows");

    SplitReport report;

    // Quantile bins: rows sorted by the stratification variable, cut into
    // near-equal contiguous groups.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dataset.rows[a].max_euro != dataset.rows[b].max_euro)
            return dataset.rows[a].max_euro < dataset.rows[b].max_euro;
        return a < b;
    });

    std::vector<std::vector<std::size_t>> bins;
    const std::size_t base = n / n_bins, extra = n % n_bins;
    std::size_t pos = 0;
    for (int b = 0; b < n_bins; ++b) {
        const std::size_t len = base + (static_cast<std::size_t>(b) < extra ? 1 : 0);
        bins.emplace_back(order.begin() + pos, order.begin() + pos + len);
        pos += len;
    }
    // Merge undersized bins into their left neighbour.
    for (std::size_t b = bins.size(); b-- > 0;) {
        if (bins[b].size() >= 2 || bins.size() == 1) continue;
        const std::size_t dst = b > 0 ? b - 1 : 1;
        bins[dst].insert(bins[dst].end(), bins[b].begin(), bins[b].end());
        bins.erase(bins.begin() + static_cast<std::ptrdiff_t>(b));
        report.warnings.push_back("merged undersized stratification bin");
    }

    // Per-bin test counts: floor of the test share, remainders to the bins
    // with the largest fractional part, at least one test and one train row
    // per bin, exact global counts.
    const double test_fraction = 1.0 - train_fraction;
    const std::size_t n_test_target =
        n - static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
    std::vector<std::size_t> t(bins.size());
    std::vector<double> frac(bins.size());
    std::size_t assigned = 0;
    for (std::size_t b = 0; b < bins.size(); ++b) {
        const double want = test_fraction * static_cast<double>(bins[b].size());
        t[b] = std::min(bins[b].size() - 1,
                        std::max<std::size_t>(1, static_cast<std::size_t>(want)));
        frac[b] = want - std::floor(want);
        assigned += t[b];
    }
    std::vector<std::size_t> by_frac(bins.size());
    std::iota(by_frac.begin(), by_frac.end(), 0);
    std::sort(by_frac.begin(), by_frac.end(), [&](std::size_t a, std::size_t b) {
        if (frac[a] != frac[b]) return frac[a] > frac[b];
        return a < b;
    });
    std::size_t guard = 0;
    while (assigned < n_test_target && guard < 10 * bins.size()) {
        for (std::size_t b : by_frac) {
            if (assigned == n_test_target) break;
            if (t[b] < bins[b].size() - 1) {
                ++t[b];
                ++assigned;
            }
        }
        ++guard;
    }
    guard = 0;
    while (assigned > n_test_target && guard < 10 * bins.size()) {
        for (auto it = by_frac.rbegin(); it != by_frac.rend(); ++it) {
            if (assigned == n_test_target) break;
            if (t[*it] > 1) {
                --t[*it];
                --assigned;
            }
        }
        ++guard;
    }
    if (assigned != n_test_target)
        throw std::invalid_argument("stratified_split: cannot satisfy bin constraints");

    for (std::size_t b = 0; b < bins.size(); ++b) {
        SeqRng rng(seed, b);
        rng.shuffle(bins[b]);
        for (std::size_t i = 0; i < bins[b].size(); ++i)
            dataset.rows[bins[b][i]].split = i < t[b] ? SplitTag::Test : SplitTag::Train;
        report.bin_sizes.push_back(bins[b].size());
        report.bin_test_counts.push_back(t[b]);
    }
    return report;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

void save_dataset_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write dataset file '" + path + "'");
    out << "spec_id,scenario_id,tenor,strike_bp,side_payer,no_call,corr,max_euro,target,split\n";
    for (const auto& r : dataset.rows) {
        out << r.spec_id << "," << r.scenario_id << "," << fmt_double(r.tenor) << ","
            << fmt_double(r.strike_bp) << "," << fmt_double(r.side_payer) << ","
            << fmt_double(r.no_call) << "," << fmt_double(r.corr) << ","
            << fmt_double(r.max_euro) << "," << fmt_double(r.target) << ","
            << (r.split == SplitTag::Train ? "train" : "test") << "\n";
    }
}

Dataset load_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file '" + path + "'");
    std::string line;
    if (!std::getline(in, line) ||
        line !=
            "spec_id,scenario_id,tenor,strike_bp,side_payer,no_call,corr,max_euro,target,split")
        throw std::runtime_error("dataset file '" + path + "': unexpected header");
    Dataset ds;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cols = split_csv_line(line);
        if (cols.size() != 10)
            throw std::runtime_error("dataset file '" + path + "' line " +
                                     std::to_string(lineno) + ": expected 10 columns");
        FeatureRow r;
        r.spec_id = static_cast<std::size_t>(parse_double(cols[0], "spec_id"));
        r.scenario_id = static_cast<std::size_t>(parse_double(cols[1], "scenario_id"));
        r.tenor = parse_double(cols[2], "tenor");
        r.strike_bp = parse_double(cols[3], "strike_bp");
        r.side_payer = parse_double(cols[4], "side_payer");
        r.no_call = parse_double(cols[5], "no_call");
        r.corr = parse_double(cols[6], "corr");
        r.max_euro = parse_double(cols[7], "max_euro");
        r.target = parse_double(cols[8], "target");
        if (cols[9] == "train")
            r.split = SplitTag::Train;
        else if (cols[9] == "test")
            r.split = SplitTag::Test;
        else
            throw std::runtime_error("dataset file '" + path + "' line " +
                                     std::to_string(lineno) + ": bad split tag");
        ds.rows.push_back(r);
    }
    return ds;
}

}  // namespace bermuda
