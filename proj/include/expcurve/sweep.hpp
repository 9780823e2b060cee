#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "expcurve/boundlab.hpp"
#include "expcurve/curvecount.hpp"
#include "expcurve/prodcount.hpp"
#include "expcurve/rational.hpp"

namespace expcurve {

// Window per prime: a fixed rectangle or U = floor(p^alpha), V = floor(p^beta).
struct WindowRule {
    enum class Kind { fixed, exponents };
    Kind kind = Kind::fixed;
    double U = 0;
    double V = 0;
    Rational alpha;
    Rational beta;

    static WindowRule fixed(double U, double V);
    static WindowRule exponents(const Rational& alpha, const Rational& beta);
    Window window_for(const Prime& p) const;
};

struct SweepConfig {
    u64 prime_lo = 0;
    u64 prime_hi = 0;
    std::size_t prime_sample_count = 0;
    std::size_t curve_samples_per_prime = 20;
    WindowRule window_rule;
    double min_order_fraction = 0.0; // extra floor on t as a fraction of p-1
    u64 rng_seed = 1;
    std::vector<BoundId> bound_ids = {kAllBounds.begin(), kAllBounds.end()};
    std::string output_csv;
    std::string output_jsonl;
    unsigned workers = 1;
    u64 step_budget = 1'000'000'000; // cap on the sum of floor(U) over records
};

struct BoundCell {
    double value = 0;
    bool valid = false;
    std::optional<double> ratio; // abs_err / value, present only when valid
};

struct SweepRecord {
    int schema_version = 1;
    u64 p = 0;
    u64 a = 0;
    u64 g = 0;
    u64 t = 0;
    double U = 0;
    double V = 0;
    u64 M = 0;
    u64 N = 0;
    double main = 0;
    double abs_err = 0;
    std::vector<std::pair<BoundId, BoundCell>> bounds;
    std::string status = "ok"; // "ok" or a per-record failure tag
    double elapsed_us = 0;     // in-memory only, never serialized
};

// Uniform (a, g) with ord(g) >= min_order, by seeded rejection sampling.
// Deterministic for a fixed seed; throws sampling_error after 10^4 * count
// failed attempts (e.g. min_order larger than every order mod p).
std::vector<CurveParams> sample_curves(const Prime& p, std::size_t count, u64 min_order,
                                       u64 seed);

// One measured (curve, window) row: exact M and N in a single pass, the main
// term, and each requested bound with its error ratio.
SweepRecord measure_curve(const CurveParams& curve, const Window& window,
                          std::span<const BoundId> bound_ids);

// Full experiment: log-spaced primes, seeded curves, parallel measurement.
// Records come back sorted by (p, a, g) regardless of worker count and are
// written to the configured CSV/JSONL paths.
std::vector<SweepRecord> run_error_sweep(const SweepConfig& cfg);

struct RegressionResult {
    double slope = 0;
    double intercept = 0;
    double residual_norm = 0;
    std::size_t point_count = 0;
    bool slope_defined = false;
};

enum class ErrStatistic { max_abs_err, mean_abs_err };

// Least squares of log(statistic of abs_err per prime) against log p.
// Needs records from at least 5 distinct primes; an all-zero statistic
// yields slope_defined = false.
RegressionResult regress_exponent(std::span<const SweepRecord> records, ErrStatistic statistic);

// Plain least squares on (x, y) pairs; exposed for synthetic power-law tests.
RegressionResult least_squares(std::span<const std::pair<double, double>> points);

struct FractionRow {
    double C = 0;
    double fraction = 0;
};

struct AlmostAllResult {
    std::vector<FractionRow> fractions; // one row per C in the grid
    std::vector<PrimeRatio> rows;       // full per-prime ratio distribution
};

AlmostAllResult run_almost_all_experiment(u64 T, u64 h, unsigned nu, ShiftRule s_rule,
                                          std::span<const double> C_grid,
                                          std::size_t max_primes = 100,
                                          PrimeRangeRule range = PrimeRangeRule::t_to_2t,
                                          u64 work_budget = 100'000'000);

// count distinct primes in [lo, hi], geometrically spaced targets snapped to
// the next prime. May return fewer when targets collide.
std::vector<u64> log_spaced_primes(u64 lo, u64 hi, std::size_t count);

// Deterministic 64-bit mixer used to derive per-prime RNG streams.
u64 mix_seed(u64 seed, u64 salt);

} // namespace expcurve
