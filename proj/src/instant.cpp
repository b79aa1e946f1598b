#include "metavault/instant.hpp"

#include <cstdio>
#include <cstdlib>

namespace mv {

namespace {

// Civil-date conversions on days since 1970-01-01 (proleptic Gregorian).
constexpr std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct CivilDate {
    std::int64_t year;
    unsigned month;
    unsigned day;
};

constexpr CivilDate civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return {y + (m <= 2), m, d};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

bool parse_uint(const char* s, int width, unsigned& out) {
    out = 0;
    for (int i = 0; i < width; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        out = out * 10 + static_cast<unsigned>(s[i] - '0');
    }
    return true;
}

} // namespace

int Instant::year() const {
    return static_cast<int>(civil_from_days(floor_div(ms, 86400000)).year);
}

std::string Instant::to_iso() const {
    const std::int64_t days = floor_div(ms, 86400000);
    std::int64_t rem = ms - days * 86400000;
    const CivilDate date = civil_from_days(days);
    const int hh = static_cast<int>(rem / 3600000);
    rem %= 3600000;
    const int mi = static_cast<int>(rem / 60000);
    rem %= 60000;
    const int ss = static_cast<int>(rem / 1000);
    const int msec = static_cast<int>(rem % 1000);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02d:%02d:%02d.%03dZ",
                  static_cast<long long>(date.year), date.month, date.day, hh, mi, ss, msec);
    return buf;
}

std::optional<Instant> Instant::parse_iso(const std::string& text) {
    const char* s = text.c_str();
    const std::size_t n = text.size();
    unsigned y = 0, mo = 0, d = 0;
    if (n < 10 || !parse_uint(s, 4, y) || s[4] != '-' || !parse_uint(s + 5, 2, mo) ||
        s[7] != '-' || !parse_uint(s + 8, 2, d)) {
        return std::nullopt;
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31) return std::nullopt;
    std::int64_t ms = days_from_civil(y, mo, d) * 86400000;
    if (n == 10) return Instant{ms};
    if (n < 20 || s[10] != 'T') return std::nullopt;
    unsigned hh = 0, mi = 0, ss = 0;
    if (!parse_uint(s + 11, 2, hh) || s[13] != ':' || !parse_uint(s + 14, 2, mi) ||
        s[16] != ':' || !parse_uint(s + 17, 2, ss)) {
        return std::nullopt;
    }
    if (hh > 23 || mi > 59 || ss > 59) return std::nullopt;
    ms += (hh * 3600LL + mi * 60LL + ss) * 1000;
    std::size_t pos = 19;
    if (pos < n && s[pos] == '.') {
        unsigned frac = 0;
        if (pos + 4 > n || !parse_uint(s + pos + 1, 3, frac)) return std::nullopt;
        ms += frac;
        pos += 4;
    }
    if (pos + 1 != n || s[pos] != 'Z') return std::nullopt;
    return Instant{ms};
}

Instant Instant::from_date(int year, unsigned month, unsigned day) {
    return Instant{days_from_civil(year, month, day) * 86400000};
}

} // namespace mv
