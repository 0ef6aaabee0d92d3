#include "matchstudy/ts/bar_series.h"

#include <cmath>
#include <sstream>

#include "matchstudy/common/csv.h"
#include "matchstudy/common/errors.h"

namespace matchstudy::ts {

BarSeries parse_bar_csv(const std::string& text, Frequency frequency,
                        const std::string& asset_id) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("empty bar CSV", 0);
    }
    if (csv::trim(line) != "timestamp,close,volume") {
        throw ParseError("bar CSV header must be exactly 'timestamp,close,volume'", 1);
    }

    BarSeries series;
    series.asset_id = asset_id;
    series.frequency = frequency;

    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (csv::trim(line).empty()) {
            continue;
        }
        const auto fields = csv::split_line(line);
        if (fields.size() != 3) {
            throw ParseError("expected 3 fields, got " + std::to_string(fields.size()), row);
        }

        Bar bar;
        try {
            bar.timestamp = parse_iso8601_utc(csv::trim(fields[0]));
        } catch (const ParseError&) {
            throw ParseError("unparsable timestamp '" + csv::trim(fields[0]) + "'", row);
        }
        if (!aligned_to(bar.timestamp, frequency)) {
            throw ParseError("timestamp not aligned to " + frequency_name(frequency) +
                                 " grid: " + csv::trim(fields[0]),
                             row);
        }
        if (!csv::parse_double(fields[1], bar.close)) {
            throw ParseError("unparsable close '" + fields[1] + "'", row);
        }
        if (!csv::parse_double(fields[2], bar.volume)) {
            throw ParseError("unparsable volume '" + fields[2] + "'", row);
        }
        if (!std::isfinite(bar.close) || bar.close <= 0.0) {
            throw InvalidPrice("non-positive or non-finite close at row " + std::to_string(row));
        }
        if (!std::isfinite(bar.volume) || bar.volume < 0.0) {
            throw ParseError("negative or non-finite volume", row);
        }

        if (!series.bars.empty()) {
            const Instant prev = series.bars.back().timestamp;
            if (bar.timestamp == prev) {
                throw DuplicateTimestamp("duplicate timestamp " +
                                         format_iso8601_utc(bar.timestamp));
            }
            if (bar.timestamp < prev) {
                throw UnorderedInput("timestamps not increasing at row " + std::to_string(row));
            }
        }
        series.bars.push_back(bar);
        series.fill_flags.push_back(FillFlag::observed);
    }
    return series;
}

std::string emit_bar_csv(const BarSeries& series) {
    std::string out = "timestamp,close,volume\n";
    for (const Bar& bar : series.bars) {
        out += format_iso8601_utc(bar.timestamp);
        out += ',';
        out += csv::format_full(bar.close);
        out += ',';
        out += csv::format_full(bar.volume);
        out += '\n';
    }
    return out;
}

BarSeries regularize(const BarSeries& series, Instant start, Instant end) {
    const std::int64_t step = frequency_seconds(series.frequency);
    if (start > end) {
        throw ConfigError("regularize: start after end");
    }
    if (!aligned_to(start, series.frequency) || !aligned_to(end, series.frequency)) {
        throw ConfigError("regularize: bounds not aligned to frequency grid");
    }

    // Locate the last observation at or before `start` to seed forward fill.
    std::size_t idx = 0;
    double last_close = 0.0;
    bool have_close = false;
    while (idx < series.bars.size() && series.bars[idx].timestamp <= start) {
        last_close = series.bars[idx].close;
        have_close = true;
        if (series.bars[idx].timestamp == start) {
            break;
        }
        ++idx;
    }
    if (!have_close) {
        throw LeadingGap("no observation at or before " + format_iso8601_utc(start));
    }

    BarSeries out;
    out.asset_id = series.asset_id;
    out.frequency = series.frequency;
    const std::int64_t n_steps = (unix_seconds(end) - unix_seconds(start)) / step + 1;
    out.bars.reserve(static_cast<std::size_t>(n_steps));
    out.fill_flags.reserve(static_cast<std::size_t>(n_steps));

    for (std::int64_t k = 0; k < n_steps; ++k) {
        const Instant ts = instant_from_unix(unix_seconds(start) + k * step);
        while (idx < series.bars.size() && series.bars[idx].timestamp < ts) {
            last_close = series.bars[idx].close;
            ++idx;
        }
        if (idx < series.bars.size() && series.bars[idx].timestamp == ts) {
            out.bars.push_back(series.bars[idx]);
            out.fill_flags.push_back(series.fill_flags.empty()
                                         ? FillFlag::observed
                                         : series.fill_flags[idx]);
            last_close = series.bars[idx].close;
            ++idx;
        } else {
            out.bars.push_back(Bar{ts, last_close, 0.0});
            out.fill_flags.push_back(FillFlag::gap_filled);
        }
    }
    return out;
}

ReturnSeries log_returns(const BarSeries& series) {
    if (series.size() < 2) {
        throw SeriesTooShort("log_returns needs at least 2 bars, got " +
                             std::to_string(series.size()));
    }
    ReturnSeries out;
    out.asset_id = series.asset_id;
    out.frequency = series.frequency;
    out.timestamps.reserve(series.size() - 1);
    out.values.reserve(series.size() - 1);
    out.observed.reserve(series.size() - 1);
    for (std::size_t k = 1; k < series.size(); ++k) {
        out.timestamps.push_back(series.bars[k].timestamp);
        out.values.push_back(100.0 * std::log(series.bars[k].close / series.bars[k - 1].close));
        const bool obs = series.fill_flags.empty() || series.fill_flags[k] == FillFlag::observed;
        out.observed.push_back(obs ? 1 : 0);
    }
    return out;
}

LogVolumeSeries log_volume(const BarSeries& series, double shift_constant) {
    if (!(shift_constant > 0.0)) {
        throw NonPositiveShift("log_volume shift constant must be > 0");
    }
    LogVolumeSeries out;
    out.asset_id = series.asset_id;
    out.frequency = series.frequency;
    out.shift_constant = shift_constant;
    out.timestamps.reserve(series.size());
    out.values.reserve(series.size());
    out.observed.reserve(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) {
        out.timestamps.push_back(series.bars[k].timestamp);
        out.values.push_back(std::log(series.bars[k].volume + shift_constant));
        const bool obs = series.fill_flags.empty() || series.fill_flags[k] == FillFlag::observed;
        out.observed.push_back(obs ? 1 : 0);
    }
    return out;
}

}  // namespace matchstudy::ts
