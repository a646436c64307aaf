#pragma once

#include <compare>
#include <string>

namespace bermuda {

// Calendar date with day-precision arithmetic (proleptic Gregorian).
// Curve files quote dates as dd/mm/yy; two-digit years map to 20yy.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;

    // Days since 1970-01-01 (negative before).
    long serial() const;

    static Date parse_ddmmyy(const std::string& text);
    std::string to_ddmmyy() const;
};

enum class DayCount { Act365, Thirty360, Act360 };

// Year fraction between two dates under the given convention.
// Throws std::invalid_argument if end < start.
double year_fraction(const Date& start, const Date& end, DayCount dc);

}  // namespace bermuda
