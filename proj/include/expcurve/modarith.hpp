#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "expcurve/errors.hpp"

namespace expcurve {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Largest modulus accepted anywhere: products fit 128-bit intermediates.
inline constexpr u64 kMaxModulus = u64(1) << 62;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 pow_mod(u64 g, u64 e, u64 m);

// Binary gcd; gcd(0, n) = n.
u64 gcd_u64(u64 a, u64 b);

// Modular inverse by extended Euclid. Works for any modulus m >= 2; throws
// std::invalid_argument when gcd(d, m) != 1 (in particular d = 0).
u64 inv_mod(u64 d, u64 m);

// Deterministic Miller-Rabin, exact for all n < 2^64.
bool is_prime_u64(u64 n);

// Certified odd prime in (2, 2^62). Construction runs the primality test.
class Prime {
  public:
    explicit Prime(u64 p);
    u64 value() const { return p_; }
    friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }

  private:
    u64 p_;
};

struct Factorization {
    // (prime, exponent) pairs, primes strictly increasing, exponents >= 1.
    std::vector<std::pair<u64, unsigned>> factors;

    u64 reconstruct() const;
    bool divides(u64 q) const;
};

// Complete factorization of n >= 1 (empty for n = 1). Trial division up to
// 10^6, then Brent-Pollard splitting of the remaining cofactor.
Factorization factorize(u64 n);

// Least t >= 1 with g^t = 1 mod p. Throws when g = 0 mod p.
u64 multiplicative_order(u64 g, const Prime& p);
u64 multiplicative_order(u64 g, const Prime& p, const Factorization& p_minus_1);

class MoebiusTable {
  public:
    explicit MoebiusTable(std::vector<std::int8_t> mu) : mu_(std::move(mu)) {}
    u64 n_max() const { return mu_.size() - 1; }
    int operator()(u64 n) const { return mu_[n]; }

  private:
    std::vector<std::int8_t> mu_; // mu_[0] unused
};

// Linear sieve of the Moebius function for 1..n_max.
MoebiusTable moebius_sieve(u64 n_max, u64 n_budget = 100'000'000);

// All primes in [lo, hi], increasing (segmented sieve). Plain integers, not
// Prime: the range may include 2.
std::vector<u64> primes_in(u64 lo, u64 hi);

// First prime >= n, or 0 when none exists below 2^62.
u64 next_prime(u64 n);

} // namespace expcurve
