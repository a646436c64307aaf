#pragma once

#include "bermuda/lsmc.hpp"

namespace bermuda::ref {

// Single-threaded reference implementations, written independently of the
// OpenMP kernels and kept as test oracles and benchmark baselines.
//
// simulate_serial shares the per-path RNG contract with the parallel kernel,
// so the two must agree bit for bit. The serial pricer accumulates its
// regression in plain path order and solves by QR, so it agrees with the
// chunked kernel only to rounding; tests compare at 1e-8 relative.

PathSet simulate_serial(const G1ppParams& params, const std::vector<double>& times,
                        std::size_t n_paths, std::uint64_t seed,
                        const YieldCurve& discount_curve, bool antithetic = false);

LsmcResult price_bermudan_serial(const BermudanSpec& spec, const G1ppParams& params,
                                 const CurveSet& curves, const LsmcConfig& config);

}  // namespace bermuda::ref
