#include "expcurve/boundlab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace expcurve {

std::string_view to_string(BoundId id) {
    switch (id) {
        case BoundId::THM1: return "THM1";
        case BoundId::THM2: return "THM2";
        case BoundId::THM3_ALMOST_ALL: return "THM3_ALMOST_ALL";
        case BoundId::CHSP: return "CHSP";
        case BoundId::TRIVIAL: return "TRIVIAL";
    }
    return "?";
}

std::optional<BoundId> bound_from_string(std::string_view name) {
    for (BoundId id : kAllBounds)
        if (name == to_string(id)) return id;
    return std::nullopt;
}

bool almost_all_only(BoundId id) { return id == BoundId::THM3_ALMOST_ALL; }

double main_term(double U, double V, const Prime& p) {
    return 6.0 / (std::numbers::pi * std::numbers::pi) * U * V / static_cast<double>(p.value());
}

namespace {

struct Term {
    // exponent of the term at (U, V, p) = (p^a, p^b, p): ca*a + cb*b + cp
    Rational ca, cb, cp;

    double eval(double U, double V, double p) const {
        return std::pow(U, ca.to_double()) * std::pow(V, cb.to_double()) *
               std::pow(p, cp.to_double());
    }
    Rational exponent(const Rational& a, const Rational& b) const {
        return ca * a + cb * b + cp;
    }
};

// Region inequality U^ru * V^rv >= p^rhs.
struct Region {
    Rational ru, rv, rhs;
};

const std::vector<Term>& terms_of(BoundId id) {
    static const std::vector<Term> thm1 = {{{3, 4}, {1, 4}, {-1, 8}}, {{1, 4}, {5, 8}, 0}};
    static const std::vector<Term> thm2 = {{{6, 7}, {1, 7}, {-1, 28}}, {{3, 13}, {7, 13}, 0}};
    static const std::vector<Term> thm3 = {{{2, 13}, {11, 13}, {-1, 26}}, {{7, 22}, {13, 22}, 0}};
    static const std::vector<Term> chsp = {
        {{1, 2}, {1, 2}, {-1, 4}}, {1, {-1, 35}, 0}, {{-1, 35}, 1, 0}};
    switch (id) {
        case BoundId::THM1: return thm1;
        case BoundId::THM2: return thm2;
        case BoundId::THM3_ALMOST_ALL: return thm3;
        case BoundId::CHSP: return chsp;
        default: throw std::invalid_argument("no term list for TRIVIAL bound");
    }
}

Region region_of(BoundId id) {
    switch (id) {
        case BoundId::THM1: return {3, 1, {5, 2}};
        case BoundId::THM2: return {6, 1, {15, 4}};
        case BoundId::THM3_ALMOST_ALL: return {2, 11, 7};
        case BoundId::CHSP: return {1, 1, {3, 2}};
        default: return {0, 0, 0}; // TRIVIAL: 1 >= 1, always true
    }
}

std::string region_text(BoundId id) {
    switch (id) {
        case BoundId::THM1: return "U^3*V >= p^(5/2)";
        case BoundId::THM2: return "U^6*V >= p^(15/4)";
        case BoundId::THM3_ALMOST_ALL: return "U^2*V^11 >= p^7 (almost all primes)";
        case BoundId::CHSP: return "U*V >= p^(3/2)";
        case BoundId::TRIVIAL: return "always";
    }
    return "?";
}

bool region_holds_real(BoundId id, double U, double V, double p) {
    const Region r = region_of(id);
    // Compare in log space; exact boundary cases belong to the rational path.
    return r.ru.to_double() * std::log(U) + r.rv.to_double() * std::log(V) >=
           r.rhs.to_double() * std::log(p) - 1e-12;
}

// delta and Delta as exponent triples (coefficients of alpha, beta, 1).
struct DecompositionRule {
    Term delta, Delta;
};

DecompositionRule decomposition_rule(BoundId id) {
    switch (id) {
        case BoundId::THM1:
            return {{{3, 4}, {1, 4}, {-5, 8}}, {{1, 2}, {1, 4}, 0}};
        case BoundId::THM2:
            return {{{6, 7}, {1, 7}, {-15, 28}}, {{6, 13}, {4, 13}, 0}};
        case BoundId::THM3_ALMOST_ALL:
            return {{{2, 13}, {11, 13}, {-7, 13}}, {{5, 11}, {3, 11}, 0}};
        default:
            throw std::invalid_argument("decomposition_params: no delta/Delta for bound " +
                                        std::string(to_string(id)));
    }
}

} // namespace

BoundEvaluation bound_value(BoundId id, double U, double V, const Prime& p) {
    if (!(U > 0) || !(V > 0)) throw std::invalid_argument("bound_value: need U, V > 0");
    BoundEvaluation ev;
    ev.id = id;
    ev.validity_condition = region_text(id);
    const double pv = static_cast<double>(p.value());
    if (id == BoundId::TRIVIAL) {
        ev.value = std::min(U, V);
        ev.terms = {ev.value};
        ev.valid = true;
        return ev;
    }
    for (const Term& t : terms_of(id)) ev.terms.push_back(t.eval(U, V, pv));
    ev.value = 0;
    for (double t : ev.terms) ev.value += t;
    ev.valid = region_holds_real(id, U, V, pv);
    return ev;
}

DecompositionParams decomposition_params(BoundId id, double U, double V, const Prime& p) {
    if (!(U > 0) || !(V > 0)) throw std::invalid_argument("decomposition_params: need U, V > 0");
    const DecompositionRule rule = decomposition_rule(id);
    const double pv = static_cast<double>(p.value());
    DecompositionParams out;
    out.id = id;
    const double raw_delta = rule.delta.eval(U, V, pv);
    const double raw_Delta = rule.Delta.eval(U, V, pv);
    out.delta_exceeds_Delta = raw_delta > raw_Delta;
    const double hi = std::max(1.0, std::min(U, V));
    out.delta = std::clamp(raw_delta, 1.0, hi);
    out.Delta = std::clamp(raw_Delta, 1.0, hi);
    out.delta_clamped = out.delta != raw_delta;
    out.Delta_clamped = out.Delta != raw_Delta;
    if (out.delta > out.Delta) out.Delta = out.delta;
    return out;
}

Rational exponent_at(BoundId id, const Rational& alpha, const Rational& beta) {
    if (alpha <= Rational(0) || alpha > Rational(1) || beta <= Rational(0) || beta > Rational(1))
        throw std::invalid_argument("exponent_at: need alpha, beta in (0, 1]");
    if (id == BoundId::TRIVIAL) return min(alpha, beta);
    const std::vector<Term>& ts = terms_of(id);
    Rational e = ts.front().exponent(alpha, beta);
    for (std::size_t i = 1; i < ts.size(); ++i) e = max(e, ts[i].exponent(alpha, beta));
    return e;
}

bool region_holds(BoundId id, const Rational& alpha, const Rational& beta) {
    const Region r = region_of(id);
    return r.ru * alpha + r.rv * beta >= r.rhs;
}

DecompositionExponents decomposition_exponents(BoundId id, const Rational& alpha,
                                               const Rational& beta) {
    const DecompositionRule rule = decomposition_rule(id);
    return {rule.delta.exponent(alpha, beta), rule.Delta.exponent(alpha, beta)};
}

ExponentProfile strongest_bound(const Rational& alpha, const Rational& beta,
                                bool include_almost_all) {
    ExponentProfile profile;
    profile.alpha = alpha;
    profile.beta = beta;
    const Rational trivial_exp = min(alpha, beta);
    bool have_winner = false;
    Rational best;
    for (BoundId id : kAllBounds) {
        BoundExponent be;
        be.id = id;
        be.exponent = exponent_at(id, alpha, beta);
        be.valid = region_holds(id, alpha, beta);
        be.nontrivial = be.exponent < trivial_exp;
        profile.bounds.push_back(be);
        if (!be.valid) continue;
        if (almost_all_only(id) && !include_almost_all) continue;
        if (!have_winner || be.exponent < best) {
            have_winner = true;
            best = be.exponent;
            profile.argmin = id;
        }
    }
    return profile;
}

double interval_bound(IntervalLemma variant, double h1, double h2, const Prime& p, int n) {
    if (!(h1 > 0) || !(h2 > 0)) throw std::invalid_argument("interval_bound: need h1, h2 > 0");
    const double pv = static_cast<double>(p.value());
    switch (variant) {
        case IntervalLemma::L21:
            return (h1 / (std::pow(pv, 1.0 / 3) * std::pow(h2, 1.0 / 6)) + 1) * std::sqrt(h2);
        case IntervalLemma::L22:
            return (h1 / (std::pow(pv, 1.0 / 8) * std::pow(h2, 1.0 / 6)) + 1) *
                   std::pow(h2, 1.0 / 3);
        case IntervalLemma::L26: {
            if (n < 2) throw std::invalid_argument("interval_bound: L26 needs n >= 2");
            const double inv2n = 1.0 / (2.0 * n);
            const double inv4n = 1.0 / (4.0 * n);
            return std::pow(n, inv2n) * std::pow(h1, inv2n) *
                   (std::sqrt(h2) + std::pow(h2, 1.0 - inv4n) * std::pow(pv, -inv4n));
        }
    }
    throw std::invalid_argument("interval_bound: unknown variant");
}

} // namespace expcurve
