#include "matchstudy/events/windows.h"

#include "matchstudy/common/errors.h"

namespace matchstudy::events {

namespace {

constexpr std::int64_t kHourSeconds = 3600;

double window_sum(const models::AbnormalSeries& abnormal, const EventWindow& window,
                  const std::vector<double>& channel) {
    if (abnormal.timestamps.empty() || window.start < abnormal.timestamps.front() ||
        window.end > add_bars(abnormal.timestamps.back(), 1, abnormal.frequency)) {
        throw SpanNotCovered("window [" + format_iso8601_utc(window.start) + ", " +
                             format_iso8601_utc(window.end) +
                             ") not covered by abnormal series");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < abnormal.timestamps.size(); ++i) {
        const Instant ts = abnormal.timestamps[i];
        if (ts >= window.end) {
            break;
        }
        if (ts >= window.start) {
            sum += channel[i];
        }
    }
    return sum;
}

}  // namespace

std::string window_label_name(WindowLabel label) {
    switch (label) {
        case WindowLabel::pre_match: return "pre_match";
        case WindowLabel::first_half: return "first_half";
        case WindowLabel::half_time: return "half_time";
        case WindowLabel::second_half: return "second_half";
        case WindowLabel::regular_match: return "regular_match";
        case WindowLabel::full_match: return "full_match";
        case WindowLabel::post_match: return "post_match";
    }
    return "unknown";
}

std::vector<EventWindow> resolve_windows(const MatchEvent& event) {
    validate_event(event);
    const Instant kickoff = event.kickoff;
    const Instant lambda = event.full_time_end;
    const Instant second_half_end =
        std::min(lambda, event.regulation_second_half_end());

    std::vector<EventWindow> windows;
    windows.push_back({WindowLabel::pre_match,
                       instant_from_unix(unix_seconds(kickoff) - kHourSeconds), kickoff});
    windows.push_back({WindowLabel::first_half, kickoff, event.first_half_end});
    windows.push_back({WindowLabel::half_time, event.first_half_end,
                       event.second_half_start});
    windows.push_back({WindowLabel::second_half, event.second_half_start, second_half_end});
    windows.push_back({WindowLabel::regular_match, kickoff, second_half_end});
    windows.push_back({WindowLabel::full_match, kickoff, lambda});
    windows.push_back({WindowLabel::post_match, lambda,
                       instant_from_unix(unix_seconds(lambda) + kHourSeconds)});
    return windows;
}

double car(const models::AbnormalSeries& abnormal, const EventWindow& window) {
    return window_sum(abnormal, window, abnormal.abnormal_return);
}

double cav(const models::AbnormalSeries& abnormal, const EventWindow& window) {
    return window_sum(abnormal, window, abnormal.abnormal_log_volume);
}

}  // namespace matchstudy::events
