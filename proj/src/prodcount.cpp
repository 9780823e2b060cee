#include "expcurve/prodcount.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace expcurve {

KnuInstance KnuInstance::make(const Prime& p, u64 h, unsigned nu, u64 s) {
    if (h < 1) throw std::invalid_argument("KnuInstance: h must be >= 1");
    if (nu < 1) throw std::invalid_argument("KnuInstance: nu must be >= 1");
    if (s >= p.value()) throw std::invalid_argument("KnuInstance: s must lie in [0, p)");
    return KnuInstance{p, h, nu, s};
}

namespace {

// h^e with overflow saturation, for budget checks.
u64 saturating_pow(u64 h, unsigned e) {
    u64 r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (h != 0 && r > std::numeric_limits<u64>::max() / h)
            return std::numeric_limits<u64>::max();
        r *= h;
    }
    return r;
}

// Shifted factors (x + s) mod p for x = 1..h, zeros dropped. Multiplicity of
// repeated residues is preserved.
std::vector<u64> nonzero_factors(const KnuInstance& inst) {
    const u64 p = inst.p.value();
    std::vector<u64> f;
    f.reserve(inst.h);
    for (u64 x = 1; x <= inst.h; ++x) {
        const u64 r = (x % p + inst.s) % p;
        if (r != 0) f.push_back(r);
    }
    return f;
}

template <typename Tally>
void tally_products(const std::vector<u64>& factors, unsigned nu, u64 p, Tally&& tally) {
    // Odometer over factors^nu with running partial products per level.
    if (factors.empty()) return;
    std::vector<std::size_t> idx(nu, 0);
    std::vector<u64> partial(nu + 1, 1);
    for (unsigned l = 0; l < nu; ++l) partial[l + 1] = mul_mod(partial[l], factors[0], p);
    for (;;) {
        tally(partial[nu]);
        unsigned l = nu;
        while (l > 0 && idx[l - 1] + 1 == factors.size()) {
            idx[l - 1] = 0;
            --l;
        }
        if (l == 0) break;
        ++idx[l - 1];
        for (unsigned k = l - 1; k < nu; ++k)
            partial[k + 1] = mul_mod(partial[k], factors[idx[k]], p);
    }
}

} // namespace

u64 count_K_fast(const KnuInstance& inst, u64 work_budget) {
    const u64 work = saturating_pow(inst.h, inst.nu);
    if (work > work_budget)
        throw budget_error("count_K_fast: h^nu = " + std::to_string(work) + " exceeds budget " +
                           std::to_string(work_budget));
    const u64 p = inst.p.value();
    const std::vector<u64> factors = nonzero_factors(inst);

    u64 K = 0;
    if (p <= (u64(1) << 22)) {
        std::vector<u64> counts(p, 0);
        tally_products(factors, inst.nu, p, [&](u64 r) { ++counts[r]; });
        for (u64 c : counts) K += c * c;
    } else {
        std::unordered_map<u64, u64> counts;
        counts.reserve(std::min<u64>(work, u64(1) << 20));
        tally_products(factors, inst.nu, p, [&](u64 r) { ++counts[r]; });
        for (const auto& [r, c] : counts) K += c * c;
    }
    return K;
}

u64 count_K_bruteforce(const KnuInstance& inst, u64 work_budget) {
    const u64 work = saturating_pow(inst.h, 2 * inst.nu);
    if (work > work_budget)
        throw budget_error("count_K_bruteforce: h^(2 nu) = " + std::to_string(work) +
                           " exceeds budget " + std::to_string(work_budget));
    const u64 p = inst.p.value();
    const unsigned nu = inst.nu;

    // The defining congruence applied literally: every (x, y) tuple pair,
    // products recomputed from scratch, zero products excluded on both sides.
    std::vector<u64> x(nu, 1), y(nu, 1);
    auto product = [&](const std::vector<u64>& t) -> u64 {
        u64 r = 1;
        for (u64 v : t) r = mul_mod(r, (v + inst.s) % p, p);
        return r;
    };
    auto advance = [&](std::vector<u64>& t) -> bool {
        for (unsigned l = nu; l-- > 0;) {
            if (t[l] < inst.h) {
                ++t[l];
                for (unsigned k = l + 1; k < nu; ++k) t[k] = 1;
                return true;
            }
        }
        return false;
    };

    u64 K = 0;
    do {
        const u64 px = product(x);
        if (px == 0) continue;
        std::fill(y.begin(), y.end(), 1);
        do {
            const u64 py = product(y);
            if (py == 0) continue;
            if (px == py) ++K;
        } while (advance(y));
    } while (advance(x));
    return K;
}

KphsBound kphs_bound(double T, u64 h, unsigned nu) {
    if (h < 1 || nu < 1) throw std::invalid_argument("kphs_bound: need h >= 1, nu >= 1");
    KphsBound b;
    b.in_lemma_range = h >= 3 && T > static_cast<double>(h);
    const double hd = static_cast<double>(h);
    b.value = std::pow(hd, static_cast<double>(nu)) +
              std::pow(hd, 2.0 * nu - 0.5) / std::sqrt(T);
    return b;
}

u64 resolve_shift(ShiftRule rule, const Prime& p, u64 h) {
    switch (rule) {
        case ShiftRule::zero: return 0;
        case ShiftRule::one: return 1;
        case ShiftRule::half_p: return p.value() / 2;
        case ShiftRule::p_minus_h_minus_1:
            return h + 1 >= p.value() ? 0 : p.value() - h - 1;
    }
    throw std::invalid_argument("resolve_shift: unknown rule");
}

std::string_view to_string(ShiftRule rule) {
    switch (rule) {
        case ShiftRule::zero: return "zero";
        case ShiftRule::one: return "one";
        case ShiftRule::half_p: return "half-p";
        case ShiftRule::p_minus_h_minus_1: return "p-minus-h-1";
    }
    return "?";
}

std::optional<ShiftRule> shift_rule_from_string(std::string_view name) {
    for (ShiftRule r : {ShiftRule::zero, ShiftRule::one, ShiftRule::half_p,
                        ShiftRule::p_minus_h_minus_1})
        if (name == to_string(r)) return r;
    return std::nullopt;
}

std::vector<PrimeRatio> knu_ratio_sweep(u64 T, u64 h, unsigned nu, ShiftRule s_rule,
                                        std::size_t max_primes, PrimeRangeRule range,
                                        u64 work_budget) {
    if (h < 3) throw std::invalid_argument("knu_ratio_sweep: lemma range needs h >= 3");
    if (T <= h) throw std::invalid_argument("knu_ratio_sweep: lemma range needs T > h");
    const u64 lo = range == PrimeRangeRule::t_to_2t ? T : 2;
    const u64 hi = range == PrimeRangeRule::t_to_2t ? 2 * T : T;
    std::vector<u64> primes = primes_in(std::max<u64>(lo, 3), hi);

    // Evenly strided subsample keeps the selection deterministic.
    if (max_primes > 0 && primes.size() > max_primes) {
        std::vector<u64> picked;
        picked.reserve(max_primes);
        if (max_primes == 1) {
            picked.push_back(primes.front());
        } else {
            for (std::size_t i = 0; i < max_primes; ++i)
                picked.push_back(primes[i * (primes.size() - 1) / (max_primes - 1)]);
            picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
        }
        primes = std::move(picked);
    }

    std::vector<PrimeRatio> rows;
    rows.reserve(primes.size());
    for (u64 pv : primes) {
        const Prime p(pv);
        const u64 s = resolve_shift(s_rule, p, h);
        const KnuInstance inst = KnuInstance::make(p, h, nu, s);
        PrimeRatio row;
        row.p = pv;
        row.s = s;
        row.K = count_K_fast(inst, work_budget);
        row.bound = kphs_bound(static_cast<double>(pv), h, nu).value;
        row.ratio = static_cast<double>(row.K) / row.bound;
        rows.push_back(row);
    }
    return rows;
}

ExceptionalReport exceptional_fraction(u64 T, u64 h, unsigned nu, ShiftRule s_rule, double C,
                                       std::size_t max_primes, PrimeRangeRule range,
                                       u64 work_budget) {
    ExceptionalReport report;
    report.rows = knu_ratio_sweep(T, h, nu, s_rule, max_primes, range, work_budget);
    if (report.rows.empty()) return report;
    std::size_t exceptional = 0;
    for (const PrimeRatio& row : report.rows)
        if (row.ratio > C) ++exceptional;
    report.fraction = static_cast<double>(exceptional) / static_cast<double>(report.rows.size());
    return report;
}

} // namespace expcurve
