#include "expcurve/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

#include "expcurve/sweep_io.hpp"

namespace expcurve {

WindowRule WindowRule::fixed(double U, double V) {
    if (U < 0 || V < 0) throw std::invalid_argument("WindowRule: need U, V >= 0");
    WindowRule r;
    r.kind = Kind::fixed;
    r.U = U;
    r.V = V;
    return r;
}

WindowRule WindowRule::exponents(const Rational& alpha, const Rational& beta) {
    if (alpha <= Rational(0) || alpha > Rational(1) || beta <= Rational(0) ||
        beta > Rational(1))
        throw std::invalid_argument("WindowRule: need exponents in (0, 1]");
    WindowRule r;
    r.kind = Kind::exponents;
    r.alpha = alpha;
    r.beta = beta;
    return r;
}

Window WindowRule::window_for(const Prime& p) const {
    if (kind == Kind::fixed) return Window{U, V};
    const double pv = static_cast<double>(p.value());
    return Window{std::floor(std::pow(pv, alpha.to_double())),
                  std::floor(std::pow(pv, beta.to_double()))};
}

u64 mix_seed(u64 seed, u64 salt) {
    // splitmix64 finalizer over the combined words.
    u64 z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

namespace {

// Unbiased bounded draw; avoids std::uniform_int_distribution, whose output
// is implementation-defined and would break cross-toolchain determinism.
u64 uniform_below(std::mt19937_64& rng, u64 n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n must be > 0");
    const u64 limit = std::numeric_limits<u64>::max() - std::numeric_limits<u64>::max() % n;
    for (;;) {
        const u64 r = rng();
        if (r < limit) return r % n;
    }
}

} // namespace

std::vector<CurveParams> sample_curves(const Prime& p, std::size_t count, u64 min_order,
                                       u64 seed) {
    const u64 pv = p.value();
    if (min_order > pv - 1)
        throw std::invalid_argument("sample_curves: min_order exceeds p - 1");
    const Factorization fact = factorize(pv - 1);
    std::mt19937_64 rng(seed);
    std::vector<CurveParams> out;
    out.reserve(count);
    const u64 max_attempts = 10'000 * static_cast<u64>(std::max<std::size_t>(count, 1));
    u64 attempts = 0;
    while (out.size() < count) {
        if (++attempts > max_attempts)
            throw sampling_error("sample_curves: no (a, g) with order >= " +
                                 std::to_string(min_order) + " found mod " + std::to_string(pv) +
                                 " after " + std::to_string(max_attempts) + " attempts");
        const u64 a = 1 + uniform_below(rng, pv - 1);
        const u64 g = 1 + uniform_below(rng, pv - 1);
        const u64 t = multiplicative_order(g, p, fact);
        if (t < min_order) continue;
        out.push_back(CurveParams::make(a, g, p, t));
    }
    return out;
}

SweepRecord measure_curve(const CurveParams& curve, const Window& window,
                          std::span<const BoundId> bound_ids) {
    const auto start = std::chrono::steady_clock::now();
    SweepRecord rec;
    rec.p = curve.p.value();
    rec.a = curve.a;
    rec.g = curve.g;
    rec.t = curve.order;
    rec.U = window.U;
    rec.V = window.V;
    const WindowCounts counts = count_window(curve, window);
    rec.M = counts.m;
    rec.N = counts.n;
    rec.main = main_term(window.U, window.V, curve.p);
    rec.abs_err = std::abs(static_cast<double>(rec.N) - rec.main);
    for (BoundId id : bound_ids) {
        const BoundEvaluation ev = bound_value(id, std::max(window.U, 1.0),
                                               std::max(window.V, 1.0), curve.p);
        BoundCell cell;
        cell.value = ev.value;
        cell.valid = ev.valid;
        if (ev.valid && ev.value > 0) cell.ratio = rec.abs_err / ev.value;
        rec.bounds.emplace_back(id, cell);
    }
    rec.elapsed_us = std::chrono::duration<double, std::micro>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return rec;
}

std::vector<u64> log_spaced_primes(u64 lo, u64 hi, std::size_t count) {
    std::vector<u64> primes;
    if (count == 0 || lo > hi) return primes;
    lo = std::max<u64>(lo, 2);
    for (std::size_t i = 0; i < count; ++i) {
        double target;
        if (count == 1) {
            target = static_cast<double>(lo);
        } else {
            const double f = static_cast<double>(i) / static_cast<double>(count - 1);
            target = static_cast<double>(lo) *
                     std::pow(static_cast<double>(hi) / static_cast<double>(lo), f);
        }
        u64 t = static_cast<u64>(std::llround(target));
        t = std::clamp<u64>(t, lo, hi);
        u64 p = next_prime(t);
        if (p == 0 || p > hi) {
            // Walk down instead when the snap-up leaves the range.
            u64 q = std::min<u64>(t, hi);
            while (q >= lo && q >= 2 && !is_prime_u64(q)) --q;
            if (q < lo || q < 2) continue;
            p = q;
        }
        primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    return primes;
}

std::vector<SweepRecord> run_error_sweep(const SweepConfig& cfg) {
    const std::vector<u64> primes =
        log_spaced_primes(std::max<u64>(cfg.prime_lo, 3), cfg.prime_hi, cfg.prime_sample_count);

    struct WorkItem {
        Prime p;
        Window window;
        CurveParams curve;
    };

    // Sampling happens up front and single-threaded so the record set is a
    // pure function of the config, not of the worker count.
    std::vector<WorkItem> items;
    std::vector<SweepRecord> error_rows;
    u64 total_steps = 0;
    for (u64 pv : primes) {
        const Prime p(pv);
        const Window window = cfg.window_rule.window_for(p);
        const u64 min_order_from_fraction =
            static_cast<u64>(std::ceil(cfg.min_order_fraction * static_cast<double>(pv - 1)));
        const u64 min_order =
            std::max({window.x_max(), window.y_max(), min_order_from_fraction});
        total_steps += window.x_max() * cfg.curve_samples_per_prime;
        if (total_steps > cfg.step_budget)
            throw budget_error("run_error_sweep: step budget " + std::to_string(cfg.step_budget) +
                               " exceeded at p = " + std::to_string(pv));
        try {
            for (CurveParams& c : sample_curves(p, cfg.curve_samples_per_prime, min_order,
                                                mix_seed(cfg.rng_seed, pv)))
                items.push_back(WorkItem{p, window, c});
        } catch (const sampling_error& e) {
            SweepRecord rec;
            rec.p = pv;
            rec.U = window.U;
            rec.V = window.V;
            rec.status = "sampling_exhausted";
            error_rows.push_back(std::move(rec));
        }
    }

    std::vector<SweepRecord> records(items.size());
    const unsigned workers = std::max(1u, cfg.workers);
    if (workers == 1) {
        for (std::size_t i = 0; i < items.size(); ++i)
            records[i] = measure_curve(items[i].curve, items[i].window, cfg.bound_ids);
    } else {
        std::atomic<std::size_t> next{0};
        auto run = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= items.size()) return;
                records[i] = measure_curve(items[i].curve, items[i].window, cfg.bound_ids);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
        for (std::thread& th : pool) th.join();
    }

    records.insert(records.end(), error_rows.begin(), error_rows.end());
    std::sort(records.begin(), records.end(), [](const SweepRecord& x, const SweepRecord& y) {
        return std::tie(x.p, x.a, x.g) < std::tie(y.p, y.a, y.g);
    });

    if (!cfg.output_csv.empty()) write_file(cfg.output_csv, to_csv(records, cfg.bound_ids));
    if (!cfg.output_jsonl.empty()) write_file(cfg.output_jsonl, to_jsonl(records, cfg.bound_ids));
    return records;
}

RegressionResult least_squares(std::span<const std::pair<double, double>> points) {
    RegressionResult res;
    res.point_count = points.size();
    if (points.size() < 2) return res;
    double mean_x = 0, mean_y = 0;
    for (const auto& [x, y] : points) {
        mean_x += x;
        mean_y += y;
    }
    mean_x /= static_cast<double>(points.size());
    mean_y /= static_cast<double>(points.size());
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if (sxx == 0) return res;
    res.slope = sxy / sxx;
    res.intercept = mean_y - res.slope * mean_x;
    double rss = 0;
    for (const auto& [x, y] : points) {
        const double r = y - (res.slope * x + res.intercept);
        rss += r * r;
    }
    res.residual_norm = std::sqrt(rss);
    res.slope_defined = true;
    return res;
}

RegressionResult regress_exponent(std::span<const SweepRecord> records, ErrStatistic statistic) {
    std::map<u64, std::pair<double, std::size_t>> by_prime; // p -> (stat accum, count)
    for (const SweepRecord& rec : records) {
        if (rec.status != "ok") continue;
        auto& [acc, n] = by_prime[rec.p];
        if (statistic == ErrStatistic::max_abs_err)
            acc = std::max(acc, rec.abs_err);
        else
            acc += rec.abs_err;
        ++n;
    }
    if (by_prime.size() < 5)
        throw std::invalid_argument("regress_exponent: need records from >= 5 distinct primes");

    std::vector<std::pair<double, double>> points;
    for (const auto& [p, stat] : by_prime) {
        const double value = statistic == ErrStatistic::max_abs_err
                                 ? stat.first
                                 : stat.first / static_cast<double>(stat.second);
        if (value <= 0) continue; // log undefined; degenerate rows are dropped
        points.emplace_back(std::log(static_cast<double>(p)), std::log(value));
    }
    RegressionResult res = least_squares(points);
    if (points.size() < 2) res.point_count = points.size();
    return res;
}

AlmostAllResult run_almost_all_experiment(u64 T, u64 h, unsigned nu, ShiftRule s_rule,
                                          std::span<const double> C_grid, std::size_t max_primes,
                                          PrimeRangeRule range, u64 work_budget) {
    AlmostAllResult result;
    result.rows = knu_ratio_sweep(T, h, nu, s_rule, max_primes, range, work_budget);
    for (double C : C_grid) {
        std::size_t exceptional = 0;
        for (const PrimeRatio& row : result.rows)
            if (row.ratio > C) ++exceptional;
        const double fraction = result.rows.empty()
                                    ? 0.0
                                    : static_cast<double>(exceptional) /
                                          static_cast<double>(result.rows.size());
        result.fractions.push_back(FractionRow{C, fraction});
    }
    return result;
}

} // namespace expcurve
