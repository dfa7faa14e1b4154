#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace gvar {

/// Exact rational number. Risk levels are carried as rationals so that the
/// equality branch of the window-adjustment rule is decidable: comparing a
/// violation count v out of t observations against alpha = num/den is done
/// as v * den <=> num * t in integer arithmetic, never in floating point.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1; // always > 0, gcd(num, den) == 1

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d); // normalizes; throws DomainError if d == 0

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    /// Three-way compare of the exact ratio a/b against this rational.
    /// Returns <0, 0, >0. b must be > 0.
    int compare_ratio(std::int64_t a, std::int64_t b) const;

    bool operator==(const Rational&) const = default;

    std::string str() const; // "num/den"
};

/// Parse "p/q" or a plain decimal ("0.05"); both yield exact rationals.
/// Throws ConfigError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

} // namespace gvar
