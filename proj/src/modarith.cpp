#include "expcurve/modarith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace expcurve {

u64 pow_mod(u64 g, u64 e, u64 m) {
    if (m == 0) throw std::invalid_argument("pow_mod: zero modulus");
    if (m == 1) return 0;
    u64 base = g % m;
    u64 r = 1;
    while (e > 0) {
        if (e & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return r;
}

u64 gcd_u64(u64 a, u64 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    const int shift = std::countr_zero(a | b);
    a >>= std::countr_zero(a);
    for (;;) {
        b >>= std::countr_zero(b);
        if (a > b) std::swap(a, b);
        b -= a;
        if (b == 0) return a << shift;
    }
}

u64 inv_mod(u64 d, u64 m) {
    if (m < 2) throw std::invalid_argument("inv_mod: modulus must be >= 2");
    d %= m;
    if (d == 0) throw std::invalid_argument("inv_mod: argument divisible by modulus");
    // Extended Euclid on (d, m); signed intermediates stay below m <= 2^62.
    std::int64_t r0 = static_cast<std::int64_t>(d), r1 = static_cast<std::int64_t>(m);
    std::int64_t s0 = 1, s1 = 0;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw std::invalid_argument("inv_mod: argument not coprime to modulus");
    if (s0 < 0) s0 += static_cast<std::int64_t>(m);
    return static_cast<u64>(s0);
}

namespace {

bool strong_probable_prime(u64 n, u64 base, u64 d, int r) {
    u64 x = pow_mod(base % n, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    u64 d = n - 1;
    int r = std::countr_zero(d);
    d >>= r;
    // This base set is exact for every n < 2^64.
    for (u64 base : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (!strong_probable_prime(n, base, d, r)) return false;
    return true;
}

Prime::Prime(u64 p) : p_(p) {
    if (p <= 2 || p >= kMaxModulus)
        throw std::invalid_argument("Prime: need 2 < p < 2^62, got " + std::to_string(p));
    if (!is_prime_u64(p)) throw std::invalid_argument("Prime: " + std::to_string(p) + " is composite");
}

u64 Factorization::reconstruct() const {
    u64 n = 1;
    for (const auto& [q, e] : factors)
        for (unsigned i = 0; i < e; ++i) n *= q;
    return n;
}

bool Factorization::divides(u64 q) const {
    for (const auto& [f, e] : factors)
        if (f == q) return true;
    return false;
}

namespace {

u64 pollard_brent(u64 n, u64 c) {
    // Brent's cycle variant of Pollard rho with f(x) = x^2 + c.
    u64 x = 2, y = 2, d = 1, q = 1, ys = 0;
    const u64 m = 128;
    u64 r = 1;
    while (d == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = (mul_mod(y, y, n) + c) % n;
        u64 k = 0;
        while (k < r && d == 1) {
            ys = y;
            const u64 lim = std::min(m, r - k);
            for (u64 i = 0; i < lim; ++i) {
                y = (mul_mod(y, y, n) + c) % n;
                q = mul_mod(q, x > y ? x - y : y - x, n);
            }
            d = gcd_u64(q, n);
            k += m;
        }
        r <<= 1;
    }
    if (d == n) {
        do {
            ys = (mul_mod(ys, ys, n) + c) % n;
            d = gcd_u64(x > ys ? x - ys : ys - x, n);
        } while (d == 1);
    }
    return d;
}

void factor_rec(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    u64 d = n;
    for (u64 c = 1; d == n; ++c) d = pollard_brent(n, c);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace

Factorization factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
    std::vector<u64> primes;
    for (u64 q = 2; q <= 1'000'000 && q * q <= n; q += (q == 2 ? 1 : 2)) {
        while (n % q == 0) {
            primes.push_back(q);
            n /= q;
        }
    }
    factor_rec(n, primes);
    std::sort(primes.begin(), primes.end());
    Factorization f;
    for (u64 q : primes) {
        if (!f.factors.empty() && f.factors.back().first == q)
            ++f.factors.back().second;
        else
            f.factors.push_back({q, 1});
    }
    return f;
}

u64 multiplicative_order(u64 g, const Prime& p) {
    return multiplicative_order(g, p, factorize(p.value() - 1));
}

u64 multiplicative_order(u64 g, const Prime& p, const Factorization& p_minus_1) {
    const u64 pv = p.value();
    g %= pv;
    if (g == 0) throw std::invalid_argument("multiplicative_order: g divisible by p");
    u64 t = pv - 1;
    for (const auto& [q, e] : p_minus_1.factors) {
        for (unsigned i = 0; i < e; ++i) {
            if (t % q != 0) break;
            if (pow_mod(g, t / q, pv) != 1) break;
            t /= q;
        }
    }
    return t;
}

MoebiusTable moebius_sieve(u64 n_max, u64 n_budget) {
    if (n_max < 1) throw std::invalid_argument("moebius_sieve: n_max must be >= 1");
    if (n_max > n_budget)
        throw budget_error("moebius_sieve: n_max " + std::to_string(n_max) +
                           " exceeds budget " + std::to_string(n_budget));
    std::vector<std::int8_t> mu(n_max + 1, 0);
    std::vector<bool> composite(n_max + 1, false);
    std::vector<u64> primes;
    mu[1] = 1;
    for (u64 i = 2; i <= n_max; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (u64 q : primes) {
            if (i * q > n_max) break;
            composite[i * q] = true;
            if (i % q == 0) {
                mu[i * q] = 0;
                break;
            }
            mu[i * q] = -mu[i];
        }
    }
    return MoebiusTable(std::move(mu));
}

namespace {

std::vector<u64> small_primes_up_to(u64 n) {
    std::vector<bool> composite(n + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

} // namespace

std::vector<u64> primes_in(u64 lo, u64 hi) {
    if (lo < 2) throw std::invalid_argument("primes_in: lo must be >= 2");
    if (lo > hi) throw std::invalid_argument("primes_in: lo > hi");
    if (hi > u64(4'000'000) * u64(4'000'000))
        throw budget_error("primes_in: range end too large for the segmented sieve");
    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi)));
    while (root * root > hi) --root;
    while ((root + 1) * (root + 1) <= hi) ++root;
    const std::vector<u64> base = small_primes_up_to(std::max<u64>(root, 2));

    std::vector<u64> out;
    constexpr u64 kSegment = 1u << 20;
    for (u64 seg_lo = lo; seg_lo <= hi; seg_lo += kSegment) {
        const u64 seg_hi = std::min(hi, seg_lo + kSegment - 1);
        std::vector<bool> composite(seg_hi - seg_lo + 1, false);
        for (u64 q : base) {
            if (q * q > seg_hi) break;
            u64 start = std::max(q * q, ((seg_lo + q - 1) / q) * q);
            for (u64 j = start; j <= seg_hi; j += q) composite[j - seg_lo] = true;
        }
        for (u64 n = seg_lo; n <= seg_hi; ++n)
            if (n >= 2 && !composite[n - seg_lo]) out.push_back(n);
    }
    return out;
}

u64 next_prime(u64 n) {
    if (n <= 2) return 2;
    if (n % 2 == 0) ++n;
    for (; n < kMaxModulus; n += 2)
        if (is_prime_u64(n)) return n;
    return 0;
}

} // namespace expcurve
