#include "bermuda/benchmarking.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

#include "bermuda/errors.hpp"
#include "bermuda/io_util.hpp"

namespace bermuda {

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<TimingRow> timing_benchmark(
    const std::vector<std::pair<std::string, nlohmann::json>>& models,
    const ml::Matrix& x_train, const ml::Vector& y_train, const ml::Matrix& x_all,
    const std::vector<BermudanSpec>& basket, const ScenarioGrid& grid,
    const CurveSet& curves, const LsmcConfig& lsmc_config, std::uint64_t seed) {
    std::vector<TimingRow> rows;
    for (const auto& [kind, hyper] : models) {
        TimingRow row;
        row.name = kind;
        ml::Pipeline pipe = ml::make_pipeline(kind, hyper, seed);
        auto t0 = std::chrono::steady_clock::now();
        pipe.fit(x_train, y_train);
        row.train_s = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const ml::Vector pred = pipe.predict(x_all);
        row.pricing_s = seconds_since(t0);
        if (pred.size() != x_all.rows())
            throw std::logic_error("timing_benchmark: prediction size mismatch");
        rows.push_back(row);
    }

    TimingRow lsmc_row;
    lsmc_row.name = "lsmc";
    const auto t0 = std::chrono::steady_clock::now();
    const auto cells = price_basket(basket, grid, curves, lsmc_config);
    lsmc_row.pricing_s = seconds_since(t0);
    for (const auto& c : cells)
        if (!c.ok)
            throw numerical_error("timing_benchmark: lsmc cell failed: " + c.error);
    rows.push_back(lsmc_row);
    return rows;
}

void save_timing_csv(const std::vector<TimingRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write timing file '" + path + "'");
    out << "name,train_time_s,pricing_time_s\n";
    for (const auto& r : rows)
        out << r.name << "," << fmt_double(r.train_s) << "," << fmt_double(r.pricing_s)
            << "\n";
}

}  // namespace bermuda
