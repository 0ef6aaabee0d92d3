#include "matchstudy/common/time.h"

#include <cstdio>

#include "matchstudy/common/errors.h"

namespace matchstudy {

namespace {

// Days since 1970-01-01 for a proleptic Gregorian civil date
// (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

bool valid_civil(int y, int mo, int d, int h, int mi, int s) {
    if (mo < 1 || mo > 12 || d < 1 || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 59) {
        return false;
    }
    static const int dim[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int max_d = dim[mo - 1];
    if (mo == 2 && ((y % 4 == 0 && y % 100 != 0) || y % 400 == 0)) {
        max_d = 29;
    }
    return d <= max_d;
}

}  // namespace

std::string frequency_name(Frequency f) {
    return f == Frequency::minute ? "minute" : "day";
}

Frequency frequency_from_name(const std::string& name) {
    if (name == "minute") return Frequency::minute;
    if (name == "day") return Frequency::day;
    throw ConfigError("unknown frequency '" + name + "' (expected minute or day)");
}

Instant parse_iso8601_utc(const std::string& text) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    char tail = 0;
    const int n = std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c",
                              &y, &mo, &d, &h, &mi, &s, &tail);
    if (n != 7 || tail != 'Z' || text.size() != 20 || !valid_civil(y, mo, d, h, mi, s)) {
        throw ParseError("invalid ISO-8601 UTC timestamp '" + text + "'", 0);
    }
    return make_utc(y, mo, d, h, mi, s);
}

std::string format_iso8601_utc(const Instant& t) {
    std::int64_t total = unix_seconds(t);
    std::int64_t days = total / 86400;
    std::int64_t rem = total % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    int y, mo, d;
    civil_from_days(days, y, mo, d);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, mo, d,
                  static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

Instant make_utc(int year, int month, int day, int hour, int minute, int second) {
    const std::int64_t secs =
        days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second;
    return instant_from_unix(secs);
}

}  // namespace matchstudy
