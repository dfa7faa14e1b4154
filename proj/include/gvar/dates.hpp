#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace gvar {

/// Calendar date used as an ordered row label. All window and horizon
/// arithmetic in this library is ordinal (row-based); dates are never used
/// for trading-calendar math.
struct Date {
    std::int32_t year = 1970;
    std::uint32_t month = 1;
    std::uint32_t day = 1;

    auto operator<=>(const Date&) const = default;

    /// Days since 1970-01-01 (proleptic Gregorian). Used only for ordering
    /// sanity checks and for generating synthetic date labels.
    std::int64_t serial() const;

    static Date from_serial(std::int64_t days);

    /// ISO 8601 "YYYY-MM-DD".
    std::string iso() const;
};

/// Parse a date with a strptime-style format string (default ISO 8601).
/// Throws UnparseableDate on failure or out-of-range components.
Date parse_date(std::string_view text, const std::string& format = "%Y-%m-%d");

} // namespace gvar
