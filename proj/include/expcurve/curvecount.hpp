#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "expcurve/modarith.hpp"

namespace expcurve {

// One exponential curve y = a*g^x mod p with the order of g cached.
struct CurveParams {
    u64 a;
    u64 g;
    Prime p;
    u64 order;

    static CurveParams make(u64 a, u64 g, const Prime& p);
    static CurveParams make(u64 a, u64 g, const Prime& p, u64 order);
};

// Counting rectangle [1,U] x [1,V]; only the integer part matters.
struct Window {
    double U = 0;
    double V = 0;

    u64 x_max() const { return U < 1 ? 0 : static_cast<u64>(std::floor(U)); }
    u64 y_max() const { return V < 1 ? 0 : static_cast<u64>(std::floor(V)); }
};

// Two runs of consecutive integers, each stored as (start, start+len].
struct IntervalPair {
    u64 start1 = 0;
    u64 len1 = 0;
    u64 start2 = 0;
    u64 len2 = 0;

    // Closed intervals [lo1,hi1] x [lo2,hi2] with lo >= 1.
    static IntervalPair closed(u64 lo1, u64 hi1, u64 lo2, u64 hi2);
};

struct SigmaSplit {
    double delta = 1;
    double Delta = 1;
    std::int64_t sigma1 = 0;
    std::int64_t sigma2 = 0;
    std::int64_t sigma3 = 0;

    std::int64_t total() const { return sigma1 + sigma2 + sigma3; }
};

// Walks x = 1..floor(U) with one modular multiplication per step and calls
// fn(x, y) for every point with 1 <= y <= floor(V). y is the least positive
// residue of a*g^x; it is never 0 since gcd(ag, p) = 1.
template <typename Fn>
void for_each_point(const CurveParams& curve, const Window& window, Fn&& fn) {
    const u64 p = curve.p.value();
    const u64 xmax = window.x_max();
    const u64 ymax = window.y_max();
    if (xmax == 0 || ymax == 0) return;
    u64 y = curve.a % p;
    for (u64 x = 1; x <= xmax; ++x) {
        y = mul_mod(y, curve.g, p);
        if (y <= ymax) fn(x, y);
    }
}

std::vector<std::pair<u64, u64>> enumerate_points(const CurveParams& curve, const Window& window);

u64 count_M(const CurveParams& curve, const Window& window);
u64 count_M_interval(const CurveParams& curve, const IntervalPair& iv);
u64 count_N(const CurveParams& curve, const Window& window);

struct WindowCounts {
    u64 m = 0;
    u64 n = 0;
};

// M and N in a single pass; the sweep hot path.
WindowCounts count_window(const CurveParams& curve, const Window& window);

// Signed Moebius terms mu(d) * M_{a*inv(d), g^d, p}(floor(U/d), floor(V/d))
// for d = 1..min(floor(U), floor(V)). Requires min(floor(U), floor(V)) < p so
// every d is invertible mod p.
std::vector<std::int64_t> moebius_terms(const CurveParams& curve, const Window& window);
std::vector<std::int64_t> moebius_terms(const CurveParams& curve, const Window& window,
                                        const MoebiusTable& mu);

std::int64_t count_N_moebius(const CurveParams& curve, const Window& window);
std::int64_t count_N_moebius(const CurveParams& curve, const Window& window,
                             const MoebiusTable& mu);

// Splits the Moebius sum at d <= delta | delta < d <= Delta | d > Delta.
SigmaSplit sigma_decomposition(const CurveParams& curve, const Window& window, double delta,
                               double Delta);
SigmaSplit sigma_split_terms(std::span<const std::int64_t> terms, double delta, double Delta);

// Number of d in (K, K+D] with a*d = g^d mod p.
u64 count_R(const CurveParams& curve, u64 K, u64 D);

} // namespace expcurve
