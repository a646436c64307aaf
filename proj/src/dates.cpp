#include "bermuda/dates.hpp"

#include <cstdio>
#include <stdexcept>

namespace bermuda {

namespace {

// Howard Hinnant's civil-days algorithm.
long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return static_cast<long>(era) * 146097L + static_cast<long>(doe) - 719468L;
}

bool valid_ymd(int y, int m, int d) {
    if (m < 1 || m > 12 || d < 1) return false;
    static const int mdays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int dim = mdays[m - 1];
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (m == 2 && leap) dim = 29;
    return d <= dim;
}

}  // namespace

long Date::serial() const { return days_from_civil(year, month, day); }

Date Date::parse_ddmmyy(const std::string& text) {
    int d = 0, m = 0, y = 0;
    if (std::sscanf(text.c_str(), "%d/%d/%d", &d, &m, &y) != 3)
        throw std::invalid_argument("date: expected dd/mm/yy, got '" + text + "'");
    if (y < 100) y += 2000;
    if (!valid_ymd(y, m, d))
        throw std::invalid_argument("date: invalid calendar date '" + text + "'");
    return Date{y, m, d};
}

std::string Date::to_ddmmyy() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d/%02d/%02d", day, month, year % 100);
    return buf;
}

double year_fraction(const Date& start, const Date& end, DayCount dc) {
    if (end < start) throw std::invalid_argument("year_fraction: end before start");
    switch (dc) {
        case DayCount::Act365:
            return static_cast<double>(end.serial() - start.serial()) / 365.0;
        case DayCount::Act360:
            return static_cast<double>(end.serial() - start.serial()) / 360.0;
        case DayCount::Thirty360: {
            const int d1 = std::min(start.day, 30);
            const int d2 = (d1 == 30) ? std::min(end.day, 30) : end.day;
            return (360 * (end.year - start.year) + 30 * (end.month - start.month) +
                    (d2 - d1)) /
                   360.0;
        }
    }
    throw std::logic_error("year_fraction: unknown convention");
}

}  // namespace bermuda
