#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace expcurve {

// Exact rational on int64 with 128-bit cross products. Always normalized:
// den > 0, gcd(|num|, den) = 1. Intended for small exponent arithmetic;
// construction and every operation reduce, so denominators stay tiny.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num(n), den(1) {}
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rational operator+(const Rational& x, const Rational& y) {
        return Rational(x.num * y.den + y.num * x.den, x.den * y.den);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        return Rational(x.num * y.den - y.num * x.den, x.den * y.den);
    }
    friend Rational operator-(const Rational& x) { return Rational(-x.num, x.den); }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return Rational(x.num * y.num, x.den * y.den);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num == 0) throw std::invalid_argument("Rational: division by zero");
        return Rational(x.num * y.den, x.den * y.num);
    }

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num == y.num && x.den == y.den;
    }
    friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
    friend bool operator<(const Rational& x, const Rational& y) {
        return static_cast<__int128>(x.num) * y.den < static_cast<__int128>(y.num) * x.den;
    }
    friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
    friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
    friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }
};

inline Rational min(const Rational& x, const Rational& y) { return x < y ? x : y; }
inline Rational max(const Rational& x, const Rational& y) { return x < y ? y : x; }

// Parses "n", "n/d" or a decimal. Decimals are snapped to the nearest
// rational with denominator 10^4, then reduced.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty input");
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            std::size_t na = 0, nb = 0;
            const std::int64_t n = std::stoll(text.substr(0, slash), &na);
            const std::int64_t d = std::stoll(text.substr(slash + 1), &nb);
            if (na != slash || nb != text.size() - slash - 1)
                throw std::invalid_argument("trailing characters");
            return Rational(n, d);
        }
        if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
            text.find('E') != std::string::npos) {
            std::size_t n = 0;
            const double x = std::stod(text, &n);
            if (n != text.size()) throw std::invalid_argument("trailing characters");
            const double scaled = x * 10000.0;
            if (scaled > 9.2e18 || scaled < -9.2e18)
                throw std::invalid_argument("value out of range");
            return Rational(static_cast<std::int64_t>(std::llround(scaled)), 10000);
        }
        std::size_t n = 0;
        const std::int64_t v = std::stoll(text, &n);
        if (n != text.size()) throw std::invalid_argument("trailing characters");
        return Rational(v);
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("parse_rational: value out of range: " + text);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("parse_rational: bad fraction: " + text);
    }
}

} // namespace expcurve
