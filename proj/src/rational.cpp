#include "gvar/rational.hpp"

#include <charconv>
#include <cstdlib>
#include <numeric>
#include <string>

#include "gvar/errors.hpp"

namespace gvar {

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw DomainError("rational denominator is zero");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    num = g == 0 ? n : n / g;
    den = g == 0 ? d : d / g;
}

int Rational::compare_ratio(std::int64_t a, std::int64_t b) const {
    // a/b <=> num/den  with b, den > 0:  compare a*den and num*b exactly.
    const __int128 lhs = static_cast<__int128>(a) * den;
    const __int128 rhs = static_cast<__int128>(num) * b;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

std::string Rational::str() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
    std::int64_t out = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError("malformed rational '" + std::string(whole) + "'");
    }
    return out;
}

} // namespace

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw ConfigError("empty rational");
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const std::int64_t n = parse_int(text.substr(0, slash), text);
        const std::int64_t d = parse_int(text.substr(slash + 1), text);
        if (d == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
        return Rational(n, d);
    }
    // Plain decimal: scale the fractional part by a power of ten, exactly.
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) {
        return Rational(parse_int(text, text), 1);
    }
    const std::string_view head = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 18) {
        throw ConfigError("malformed rational '" + std::string(text) + "'");
    }
    const bool negative = !head.empty() && head.front() == '-';
    const std::string_view digits = negative || (!head.empty() && head.front() == '+')
                                        ? head.substr(1)
                                        : head;
    const std::int64_t whole = digits.empty() ? 0 : parse_int(digits, text);
    const std::int64_t frac_digits = parse_int(frac, text);
    if (frac_digits < 0) throw ConfigError("malformed rational '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const std::int64_t magnitude = whole * scale + frac_digits;
    return Rational(negative ? -magnitude : magnitude, scale);
}

} // namespace gvar
