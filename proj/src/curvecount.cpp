#include "expcurve/curvecount.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace expcurve {

CurveParams CurveParams::make(u64 a, u64 g, const Prime& p) {
    return make(a, g, p, multiplicative_order(g, p));
}

CurveParams CurveParams::make(u64 a, u64 g, const Prime& p, u64 order) {
    const u64 pv = p.value();
    a %= pv;
    g %= pv;
    if (a == 0) throw std::invalid_argument("CurveParams: a divisible by p");
    if (g == 0) throw std::invalid_argument("CurveParams: g divisible by p");
    return CurveParams{a, g, p, order};
}

IntervalPair IntervalPair::closed(u64 lo1, u64 hi1, u64 lo2, u64 hi2) {
    if (lo1 < 1 || lo2 < 1) throw std::invalid_argument("IntervalPair: intervals start at 1");
    IntervalPair iv;
    iv.start1 = lo1 - 1;
    iv.len1 = hi1 >= lo1 ? hi1 - lo1 + 1 : 0;
    iv.start2 = lo2 - 1;
    iv.len2 = hi2 >= lo2 ? hi2 - lo2 + 1 : 0;
    return iv;
}

std::vector<std::pair<u64, u64>> enumerate_points(const CurveParams& curve, const Window& window) {
    std::vector<std::pair<u64, u64>> pts;
    for_each_point(curve, window, [&](u64 x, u64 y) { pts.emplace_back(x, y); });
    return pts;
}

u64 count_M(const CurveParams& curve, const Window& window) {
    u64 m = 0;
    for_each_point(curve, window, [&](u64, u64) { ++m; });
    return m;
}

u64 count_M_interval(const CurveParams& curve, const IntervalPair& iv) {
    if (iv.len1 == 0 || iv.len2 == 0) return 0;
    const u64 p = curve.p.value();
    const u64 x_lo = iv.start1 + 1;
    const u64 x_hi = iv.start1 + iv.len1;
    u64 count = 0;
    u64 y = mul_mod(curve.a % p, pow_mod(curve.g, x_lo, p), p);
    for (u64 x = x_lo;; ++x) {
        if (y > iv.start2 && y <= iv.start2 + iv.len2) ++count;
        if (x == x_hi) break;
        y = mul_mod(y, curve.g, p);
    }
    return count;
}

u64 count_N(const CurveParams& curve, const Window& window) {
    u64 n = 0;
    for_each_point(curve, window, [&](u64 x, u64 y) {
        if (gcd_u64(x, y) == 1) ++n;
    });
    return n;
}

WindowCounts count_window(const CurveParams& curve, const Window& window) {
    WindowCounts c;
    for_each_point(curve, window, [&](u64 x, u64 y) {
        ++c.m;
        if (gcd_u64(x, y) == 1) ++c.n;
    });
    return c;
}

std::vector<std::int64_t> moebius_terms(const CurveParams& curve, const Window& window) {
    const u64 d_max = std::min(window.x_max(), window.y_max());
    return moebius_terms(curve, window, moebius_sieve(std::max<u64>(d_max, 1)));
}

std::vector<std::int64_t> moebius_terms(const CurveParams& curve, const Window& window,
                                        const MoebiusTable& mu) {
    const u64 p = curve.p.value();
    const u64 xmax = window.x_max();
    const u64 ymax = window.y_max();
    const u64 d_max = std::min(xmax, ymax);
    if (d_max >= p)
        throw std::invalid_argument("moebius_terms: need min(U, V) < p");
    if (d_max > mu.n_max())
        throw std::invalid_argument("moebius_terms: Moebius table too small");
    std::vector<std::int64_t> terms(d_max, 0);
    for (u64 d = 1; d <= d_max; ++d) {
        const int mu_d = mu(d);
        if (mu_d == 0) continue;
        // Points with d | x and d | y biject onto the curve (a*inv(d), g^d)
        // inside the divided window.
        const CurveParams divided{mul_mod(curve.a % p, inv_mod(d, p), p), pow_mod(curve.g, d, p),
                                  curve.p, 0};
        const Window w{static_cast<double>(xmax / d), static_cast<double>(ymax / d)};
        terms[d - 1] =
            static_cast<std::int64_t>(mu_d) * static_cast<std::int64_t>(count_M(divided, w));
    }
    return terms;
}

std::int64_t count_N_moebius(const CurveParams& curve, const Window& window) {
    std::int64_t sum = 0;
    for (std::int64_t t : moebius_terms(curve, window)) sum += t;
    return sum;
}

std::int64_t count_N_moebius(const CurveParams& curve, const Window& window,
                             const MoebiusTable& mu) {
    std::int64_t sum = 0;
    for (std::int64_t t : moebius_terms(curve, window, mu)) sum += t;
    return sum;
}

SigmaSplit sigma_split_terms(std::span<const std::int64_t> terms, double delta, double Delta) {
    if (delta < 1 || delta > Delta)
        throw std::invalid_argument("sigma split: need 1 <= delta <= Delta");
    SigmaSplit s;
    s.delta = delta;
    s.Delta = Delta;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const double d = static_cast<double>(i + 1);
        if (d <= delta)
            s.sigma1 += terms[i];
        else if (d <= Delta)
            s.sigma2 += terms[i];
        else
            s.sigma3 += terms[i];
    }
    return s;
}

SigmaSplit sigma_decomposition(const CurveParams& curve, const Window& window, double delta,
                               double Delta) {
    if (delta < 1 || delta > Delta)
        throw std::invalid_argument("sigma_decomposition: need 1 <= delta <= Delta");
    return sigma_split_terms(moebius_terms(curve, window), delta, Delta);
}

u64 count_R(const CurveParams& curve, u64 K, u64 D) {
    const u64 p = curve.p.value();
    if (D == 0) return 0;
    if (K + D < K) throw std::invalid_argument("count_R: K + D overflows");
    u64 count = 0;
    u64 lhs = mul_mod(curve.a % p, (K + 1) % p, p);
    u64 rhs = pow_mod(curve.g, K + 1, p);
    const u64 a = curve.a % p;
    for (u64 d = K + 1;; ++d) {
        if (lhs == rhs) ++count;
        if (d == K + D) break;
        lhs += a;
        if (lhs >= p) lhs -= p;
        rhs = mul_mod(rhs, curve.g, p);
    }
    return count;
}

} // namespace expcurve
