#pragma once

#include <string>
#include <vector>

#include "matchstudy/common/time.h"
#include "matchstudy/events/match_event.h"
#include "matchstudy/models/market_model.h"

namespace matchstudy::events {

enum class WindowLabel {
    pre_match,
    first_half,
    half_time,
    second_half,
    regular_match,
    full_match,
    post_match,
};

std::string window_label_name(WindowLabel label);

// Half-open [start, end) so one-minute bars are never double counted at
// segment boundaries.
struct EventWindow {
    WindowLabel label = WindowLabel::pre_match;
    Instant start;
    Instant end;

    std::int64_t bar_count(Frequency f) const {
        return (unix_seconds(end) - unix_seconds(start)) / frequency_seconds(f);
    }
};

// Resolves the seven match segments from the event's boundary metadata:
// pre_match, first_half, half_time, second_half, regular_match, full_match,
// post_match (pre/post are the 60 minutes before kickoff / after full time).
// regular_match runs kickoff through the end of the regulation second half,
// half-time interval included (the Table-2 convention); the study layer owns
// the option to report the two halves without the interval instead.
std::vector<EventWindow> resolve_windows(const MatchEvent& event);

// Sum of abnormal returns at timestamps in [window.start, window.end).
// Throws SpanNotCovered when the window leaves the series' span.
double car(const models::AbnormalSeries& abnormal, const EventWindow& window);

// Volume analogue of car on the abnormal log-volume channel.
double cav(const models::AbnormalSeries& abnormal, const EventWindow& window);

}  // namespace matchstudy::events
