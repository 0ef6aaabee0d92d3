#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matchstudy/common/time.h"

namespace matchstudy::ts {

enum class FillFlag : std::uint8_t { observed, gap_filled };

struct Bar {
    Instant timestamp;  // truncated to the bar frequency
    double close = 0.0;  // strictly positive
    double volume = 0.0;  // non-negative
};

// Regularized close/volume bars for one asset at one frequency.
// Timestamps are strictly increasing; after regularize() they are gap-free
// with one fill flag per bar.
struct BarSeries {
    std::string asset_id;
    Frequency frequency = Frequency::minute;
    std::vector<Bar> bars;
    std::vector<FillFlag> fill_flags;

    std::size_t size() const { return bars.size(); }
    bool empty() const { return bars.empty(); }
};

// Percent-log returns: point k is 100*ln(close_{k+1}/close_k), stamped with
// bar k+1's timestamp. `observed` tracks whether the defining bar was real
// data or a gap fill.
struct ReturnSeries {
    std::string asset_id;
    Frequency frequency = Frequency::minute;
    std::vector<Instant> timestamps;
    std::vector<double> values;
    std::vector<std::uint8_t> observed;

    std::size_t size() const { return values.size(); }
};

// ln(volume + c) per bar.
struct LogVolumeSeries {
    std::string asset_id;
    Frequency frequency = Frequency::minute;
    double shift_constant = 1.0;
    std::vector<Instant> timestamps;
    std::vector<double> values;
    std::vector<std::uint8_t> observed;

    std::size_t size() const { return values.size(); }
};

enum class GapMode { forward_fill };

// Parses a strict `timestamp,close,volume` CSV. Input order is validated,
// never re-sorted; fill flags come back all observed.
BarSeries parse_bar_csv(const std::string& text, Frequency frequency,
                        const std::string& asset_id = "");

std::string emit_bar_csv(const BarSeries& series);

// Expands the series onto the full [start, end] grid (both ends inclusive,
// aligned to the frequency). Missing steps carry the previous observed close
// with volume 0 and are flagged gap_filled. Throws LeadingGap when the series
// has no observation at or before `start`.
BarSeries regularize(const BarSeries& series, Instant start, Instant end);

ReturnSeries log_returns(const BarSeries& series);

LogVolumeSeries log_volume(const BarSeries& series, double shift_constant = 1.0);

}  // namespace matchstudy::ts
