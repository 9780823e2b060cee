#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expcurve/modarith.hpp"
#include "expcurve/rational.hpp"

namespace expcurve {

// Error bounds on |N - (6/pi^2) UV/p|, in declaration (tie-break) order.
enum class BoundId { THM1, THM2, THM3_ALMOST_ALL, CHSP, TRIVIAL };

inline constexpr std::array<BoundId, 5> kAllBounds = {
    BoundId::THM1, BoundId::THM2, BoundId::THM3_ALMOST_ALL, BoundId::CHSP, BoundId::TRIVIAL};

std::string_view to_string(BoundId id);
std::optional<BoundId> bound_from_string(std::string_view name);

// Bounds that hold only outside an exceptional set of primes.
bool almost_all_only(BoundId id);

struct BoundEvaluation {
    BoundId id;
    double value = 0;
    bool valid = false;
    std::string validity_condition;
    std::vector<double> terms; // individual summands (min(U,V) for TRIVIAL)
};

// (6/pi^2) * U * V / p.
double main_term(double U, double V, const Prime& p);

// Formula value with every implied constant and p^o(1) factor taken as 1.
// `valid` reflects only the printed region inequality in (U, V, p); the
// hypotheses U, V <= t are enforced where curves are measured, not here.
BoundEvaluation bound_value(BoundId id, double U, double V, const Prime& p);

struct DecompositionParams {
    BoundId id;
    double delta = 1;
    double Delta = 1;
    bool delta_clamped = false;
    bool Delta_clamped = false;
    bool delta_exceeds_Delta = false; // raw delta > raw Delta before clamping
};

// The theorem's balancing choices for the sigma split, clamped into
// [1, min(U, V)]. Only THM1 / THM2 / THM3_ALMOST_ALL carry them.
DecompositionParams decomposition_params(BoundId id, double U, double V, const Prime& p);

// ---- exact-rational exponent plane: U = p^alpha, V = p^beta ----

// Exponent e with bound = p^e (max over the formula's terms), exact.
Rational exponent_at(BoundId id, const Rational& alpha, const Rational& beta);

// The printed validity region, decided in exact rationals.
bool region_holds(BoundId id, const Rational& alpha, const Rational& beta);

struct DecompositionExponents {
    Rational delta_exp;
    Rational Delta_exp;
};
DecompositionExponents decomposition_exponents(BoundId id, const Rational& alpha,
                                               const Rational& beta);

struct BoundExponent {
    BoundId id;
    bool valid = false;      // region inequality holds at (alpha, beta)
    Rational exponent;       // always computed, even off-region
    bool nontrivial = false; // exponent strictly below min(alpha, beta)
};

struct ExponentProfile {
    Rational alpha;
    Rational beta;
    std::vector<BoundExponent> bounds; // all five, declaration order
    BoundId argmin = BoundId::TRIVIAL;
};

// Least valid exponent at (alpha, beta); ties go to declaration order.
// THM3_ALMOST_ALL competes only when include_almost_all is set.
ExponentProfile strongest_bound(const Rational& alpha, const Rational& beta,
                                bool include_almost_all);

enum class IntervalLemma { L21, L22, L26 };

// Interval-count bounds with o(1) exponents set to 0. n is the L26 tuning
// parameter (>= 2), ignored by L21/L22.
double interval_bound(IntervalLemma variant, double h1, double h2, const Prime& p, int n = 2);

} // namespace expcurve
