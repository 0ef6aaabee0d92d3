#pragma once

#include <chrono>
#include <cstdint>
#include <string>

namespace matchstudy {

// A UTC instant at one-second resolution. All exchange and match timestamps
// are UTC; no timezone handling anywhere in the library.
using Instant = std::chrono::time_point<std::chrono::system_clock, std::chrono::seconds>;

enum class Frequency { minute, day };

inline std::int64_t frequency_seconds(Frequency f) {
    return f == Frequency::minute ? 60 : 86400;
}

std::string frequency_name(Frequency f);
Frequency frequency_from_name(const std::string& name);

inline Instant instant_from_unix(std::int64_t seconds) {
    return Instant(std::chrono::seconds(seconds));
}

inline std::int64_t unix_seconds(const Instant& t) {
    return t.time_since_epoch().count();
}

// Parses `YYYY-MM-DDTHH:MM:SSZ`. Throws ParseError (row 0) on malformed input.
Instant parse_iso8601_utc(const std::string& text);

std::string format_iso8601_utc(const Instant& t);

// Builds an instant from civil UTC fields. Proleptic Gregorian calendar.
Instant make_utc(int year, int month, int day, int hour = 0, int minute = 0, int second = 0);

inline bool aligned_to(const Instant& t, Frequency f) {
    return unix_seconds(t) % frequency_seconds(f) == 0;
}

inline Instant add_bars(const Instant& t, std::int64_t count, Frequency f) {
    return instant_from_unix(unix_seconds(t) + count * frequency_seconds(f));
}

// Signed number of whole bars from `anchor` to `t`; requires both on the grid.
inline std::int64_t bars_between(const Instant& anchor, const Instant& t, Frequency f) {
    return (unix_seconds(t) - unix_seconds(anchor)) / frequency_seconds(f);
}

}  // namespace matchstudy
