#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "expcurve/modarith.hpp"

namespace expcurve {

// Instance of the shifted-product collision count K_nu(p, h, s): pairs of
// nu-tuples over [1,h] whose products of shifted factors (x_i + s) agree and
// are nonzero mod p.
struct KnuInstance {
    Prime p;
    u64 h;
    unsigned nu;
    u64 s;

    static KnuInstance make(const Prime& p, u64 h, unsigned nu, u64 s);
};

// Single pass over [1,h]^nu tallying products in a multiset keyed by residue;
// K = sum of squared multiplicities. Work is h^nu, checked against the budget.
u64 count_K_fast(const KnuInstance& inst, u64 work_budget = 100'000'000);

// Literal double loop over [1,h]^{2 nu} applying the defining congruence.
// Work is h^{2 nu}; independent oracle for count_K_fast.
u64 count_K_bruteforce(const KnuInstance& inst, u64 work_budget = 100'000'000);

struct KphsBound {
    double value = 0;
    bool in_lemma_range = false; // the lemma wants T > h >= 3
};

// h^nu + h^(2 nu - 1/2) / sqrt(T), the collision bound with its exp(...)
// factor taken as 1. T may be +infinity (second term vanishes).
KphsBound kphs_bound(double T, u64 h, unsigned nu);

// Shift choices sampled in sweeps; the full s range is p-fold work.
enum class ShiftRule { zero, one, half_p, p_minus_h_minus_1 };

u64 resolve_shift(ShiftRule rule, const Prime& p, u64 h);
std::string_view to_string(ShiftRule rule);
std::optional<ShiftRule> shift_rule_from_string(std::string_view name);

// Which primes stand in for "primes p <= T": the sweep default draws from
// [T, 2T]; the literal reading draws from [2, T].
enum class PrimeRangeRule { t_to_2t, up_to_t };

struct PrimeRatio {
    u64 p = 0;
    u64 s = 0;
    u64 K = 0;
    double bound = 0; // kphs bound evaluated at this prime
    double ratio = 0; // K / bound
};

struct ExceptionalReport {
    double fraction = 0; // share of tested primes with ratio > C
    std::vector<PrimeRatio> rows;
};

// Per-prime collision ratios over the selected prime range. max_primes = 0
// tests every prime; otherwise an evenly strided deterministic subsample.
std::vector<PrimeRatio> knu_ratio_sweep(u64 T, u64 h, unsigned nu, ShiftRule s_rule,
                                        std::size_t max_primes = 0,
                                        PrimeRangeRule range = PrimeRangeRule::t_to_2t,
                                        u64 work_budget = 100'000'000);

ExceptionalReport exceptional_fraction(u64 T, u64 h, unsigned nu, ShiftRule s_rule, double C,
                                       std::size_t max_primes = 0,
                                       PrimeRangeRule range = PrimeRangeRule::t_to_2t,
                                       u64 work_budget = 100'000'000);

} // namespace expcurve
