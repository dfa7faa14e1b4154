#include "gvar/dates.hpp"

#include <array>
#include <cstdio>
#include <ctime>
#include <string>

#include "gvar/errors.hpp"

namespace gvar {

namespace {

bool is_leap(std::int32_t y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

unsigned days_in_month(std::int32_t y, unsigned m) {
    static constexpr std::array<unsigned, 12> lengths{31, 28, 31, 30, 31, 30,
                                                      31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

} // namespace

std::int64_t Date::serial() const {
    // Civil-from-days inverse (Howard Hinnant's algorithm), valid across the
    // proleptic Gregorian calendar.
    std::int64_t y = year;
    const std::int64_t m = month;
    const std::int64_t d = day;
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const std::int64_t yoe = y - era * 400;                                  // [0, 399]
    const std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1; // [0, 365]
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;          // [0, 146096]
    return era * 146097 + doe - 719468;
}

Date Date::from_serial(std::int64_t days) {
    std::int64_t z = days + 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<std::int32_t>(y + (m <= 2)), static_cast<std::uint32_t>(m),
                static_cast<std::uint32_t>(d)};
}

std::string Date::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year, month, day);
    return buf;
}

Date parse_date(std::string_view text, const std::string& format) {
    std::tm tm{};
    tm.tm_mday = 1; // day defaults to 1 if the format omits it
    const std::string owned(text);
    const char* end = ::strptime(owned.c_str(), format.c_str(), &tm);
    if (end == nullptr || *end != '\0') {
        throw UnparseableDate("cannot parse date '" + owned + "' with format '" + format + "'");
    }
    const std::int32_t year = tm.tm_year + 1900;
    const unsigned month = static_cast<unsigned>(tm.tm_mon) + 1;
    const unsigned day = static_cast<unsigned>(tm.tm_mday);
    if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) {
        throw UnparseableDate("date '" + owned + "' has out-of-range components");
    }
    return Date{year, month, day};
}

} // namespace gvar
