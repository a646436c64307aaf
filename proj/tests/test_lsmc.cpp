#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <vector>

#include "bermuda/analytic.hpp"
#include "bermuda/lsmc.hpp"
#include "bermuda/reference.hpp"

using namespace bermuda;

namespace {

const std::string kData = BERMUDA_DATA_DIR;

CurveSet market_curves() {
    return CurveSet{load_curve(kData + "/eonia_ois.csv", "discount"),
                    load_curve(kData + "/euribor_6m.csv", "forwarding")};
}

}  // namespace

TEST_CASE("config validation") {
    LsmcConfig cfg;
    cfg.basis_degree = 3;
    cfg.n_paths = 39;
    CHECK_THROWS(cfg.validate());
    cfg.n_paths = 40;
    CHECK_NOTHROW(cfg.validate());
    cfg.basis_degree = 0;
    CHECK_THROWS(cfg.validate());
}

TEST_CASE("single exercise date reproduces the closed-form european") {
    const auto curves = market_curves();
    struct Case {
        G1ppParams params;
        BermudanSpec spec;
    };
    const std::vector<Case> cases{
        {{0.03, 0.02}, {Side::Payer, 5, 5, 0.0, 10000.0}},
        {{-0.02, 0.005}, {Side::Receiver, 10, 5, 0.0, 10000.0}},
        {{0.30, 0.08}, {Side::Payer, 2, 2, 50.0, 10000.0}},
    };
    for (const auto& c : cases) {
        LsmcConfig cfg;
        cfg.n_paths = 50000;
        cfg.seed = 99;
        cfg.exercise_subset = {0};
        const auto res = price_bermudan(c.spec, c.params, curves, cfg);
        const EuropeanSpec euro{c.spec.side, static_cast<double>(c.spec.no_call), c.spec.tenor,
                                atm_strike(c.spec, curves), c.spec.notional};
        const double closed = european_price_g1pp(euro, c.params, curves);
        CHECK(std::abs(res.price - closed) < 3.0 * res.std_error);
    }
}

TEST_CASE("degenerate volatility collapses to the best discounted intrinsic") {
    const auto curves = market_curves();
    const G1ppParams p{0.03, 1e-12};
    const BermudanSpec spec{Side::Payer, 5, 5, -50.0, 10000.0};
    LsmcConfig cfg;
    cfg.n_paths = 1000;

    const auto res = price_bermudan(spec, p, curves, cfg);

    const double strike = atm_strike(spec, curves);
    double best = 0.0;
    for (int e = 0; e < spec.tenor; ++e) {
        const auto eval = make_state_eval(
            swap_zcb_weights(curves, spec.side, spec.no_call + e,
                             spec.maturity() - spec.no_call - e, strike),
            p, curves, spec.notional);
        const double intrinsic = std::max(eval(0.0), 0.0);
        best = std::max(best, intrinsic * curves.discount.discount_factor(spec.no_call + e));
    }
    CHECK(res.price == doctest::Approx(best).epsilon(1e-6));
    CHECK(res.std_error < 1e-6 * spec.notional);
}

TEST_CASE("price dominates the maximum european lower bound") {
    const auto curves = market_curves();
    const std::vector<G1ppParams> scenarios{{-0.01, 0.01}, {0.03, 0.02}, {0.15, 0.07}};
    const std::vector<BermudanSpec> specs{
        {Side::Payer, 5, 5, 0.0, 10000.0},
        {Side::Receiver, 10, 5, -50.0, 10000.0},
        {Side::Payer, 1, 10, 100.0, 10000.0},
    };
    LsmcConfig cfg;
    cfg.n_paths = 20000;
    for (const auto& p : scenarios) {
        for (const auto& s : specs) {
            const auto res = price_bermudan(s, p, curves, cfg);
            const double bound = max_european(s, p, curves);
            CHECK(res.price + 3.0 * res.std_error >= bound);
        }
    }
}

TEST_CASE("adding exercise dates never loses value (crn, nested schedules)") {
    const auto curves = market_curves();
    const G1ppParams p{0.05, 0.025};
    const BermudanSpec spec{Side::Payer, 5, 5, 0.0, 10000.0};
    const auto paths = simulate(p, spec.grid_times(), 20000, 7, curves.discount);

    LsmcConfig cfg;
    cfg.n_paths = 20000;
    cfg.exercise_subset = {4};
    const auto single = price_bermudan_on_paths(spec, curves, paths, cfg);
    cfg.exercise_subset = {2, 3, 4};
    const auto mid = price_bermudan_on_paths(spec, curves, paths, cfg);
    cfg.exercise_subset.clear();
    const auto full = price_bermudan_on_paths(spec, curves, paths, cfg);

    const auto tol = [](const LsmcResult& a, const LsmcResult& b) {
        return 3.0 * std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
    };
    CHECK(mid.price >= single.price - tol(mid, single));
    CHECK(full.price >= mid.price - tol(full, mid));
}

TEST_CASE("standard error scales like one over root n") {
    const auto curves = market_curves();
    const G1ppParams p{0.03, 0.02};
    const BermudanSpec spec{Side::Payer, 5, 2, 0.0, 10000.0};
    LsmcConfig cfg;
    double se[3];
    const std::size_t sizes[3] = {1000, 10000, 100000};
    for (int i = 0; i < 3; ++i) {
        cfg.n_paths = sizes[i];
        cfg.seed = 1000 + i;
        se[i] = price_bermudan(spec, p, curves, cfg).std_error;
    }
    const double r10 = std::sqrt(10.0);
    CHECK(se[0] / se[1] > 0.8 * r10);
    CHECK(se[0] / se[1] < 1.2 * r10);
    CHECK(se[1] / se[2] > 0.8 * r10);
    CHECK(se[1] / se[2] < 1.2 * r10);
}

TEST_CASE("dates with no itm paths are skipped without error") {
    const auto curves = market_curves();
    const G1ppParams p{0.03, 0.001};
    const BermudanSpec spec{Side::Payer, 1, 2, 400.0, 10000.0};  // far otm, tiny vol
    LsmcConfig cfg;
    cfg.n_paths = 2000;
    const auto res = price_bermudan(spec, p, curves, cfg);
    CHECK(res.price == 0.0);
    for (double f : res.exercise_fractions) CHECK(f == 0.0);
}

TEST_CASE("exercise fractions lie in [0,1] and need not sum to 1") {
    const auto curves = market_curves();
    const auto res =
        price_bermudan({Side::Payer, 5, 5, 0.0, 10000.0}, {0.03, 0.02}, curves, LsmcConfig{});
    REQUIRE(res.exercise_fractions.size() == 5);
    double total = 0.0;
    for (double f : res.exercise_fractions) {
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
        total += f;
    }
    CHECK(total <= 1.0 + 1e-15);
    CHECK(total > 0.0);
}

TEST_CASE("basket of one equals the single pricer and failures are isolated") {
    const auto curves = market_curves();
    LsmcConfig cfg;
    cfg.n_paths = 5000;
    cfg.seed = 77;

    const std::vector<BermudanSpec> one{{Side::Payer, 5, 2, 0.0, 10000.0}};
    const ScenarioGrid grid1{{{0.03, 0.02}}};
    const auto cells = price_basket(one, grid1, curves, cfg);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].ok);
    const auto direct = price_bermudan(one[0], grid1.scenarios[0], curves, cfg);
    CHECK(cells[0].result.price == direct.price);
    CHECK(cells[0].result.std_error == direct.std_error);

    std::vector<BermudanSpec> mixed = one;
    mixed.push_back({Side::Payer, 0, 2, 0.0, 10000.0});  // invalid: no_call = 0
    const auto cells2 = price_basket(mixed, grid1, curves, cfg);
    REQUIRE(cells2.size() == 2);
    CHECK(cells2[0].ok);
    CHECK_FALSE(cells2[1].ok);
    CHECK(!cells2[1].error.empty());
}

TEST_CASE("batch pricing is identical for any worker count") {
    const auto curves = market_curves();
    LsmcConfig cfg;
    cfg.n_paths = 4000;
    const std::vector<BermudanSpec> basket{{Side::Payer, 2, 2, 0.0, 10000.0},
                                           {Side::Receiver, 5, 2, -25.0, 10000.0},
                                           {Side::Payer, 3, 5, 30.0, 10000.0}};
    const ScenarioGrid grid{{{0.03, 0.02}, {0.15, 0.07}}};

    omp_set_num_threads(1);
    const auto a = price_basket(basket, grid, curves, cfg);
    omp_set_num_threads(8);
    const auto b = price_basket(basket, grid, curves, cfg);
    omp_set_num_threads(omp_get_num_procs());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].result.price == b[i].result.price);
        CHECK(a[i].result.std_error == b[i].result.std_error);
    }
}

TEST_CASE("serial reference pricer agrees with the chunked kernel") {
    const auto curves = market_curves();
    const G1ppParams p{0.05, 0.025};
    const BermudanSpec spec{Side::Payer, 3, 5, 0.0, 10000.0};
    LsmcConfig cfg;
    cfg.n_paths = 20000;
    cfg.seed = 2025;
    const auto kernel = price_bermudan(spec, p, curves, cfg);
    const auto serial = ref::price_bermudan_serial(spec, p, curves, cfg);
    CHECK(kernel.price == doctest::Approx(serial.price).epsilon(1e-8));
}

TEST_CASE("antithetic pricing pairs the error estimate") {
    const auto curves = market_curves();
    const G1ppParams p{0.03, 0.02};
    const BermudanSpec spec{Side::Payer, 5, 2, 0.0, 10000.0};
    LsmcConfig cfg;
    cfg.n_paths = 20000;
    cfg.antithetic = true;
    const auto res = price_bermudan(spec, p, curves, cfg);
    CHECK(res.price > 0.0);
    CHECK(res.std_error > 0.0);
    const double closed = max_european(spec, p, curves);
    CHECK(res.price + 3.0 * res.std_error >= closed);
}
