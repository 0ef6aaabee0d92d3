#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matchstudy/common/time.h"
#include "matchstudy/odds/odds.h"

namespace matchstudy::events {

enum class Stage {
    group1,
    group2,
    group3,
    round_of_16,
    quarter_final,
    semi_final,
    final,
};

std::string stage_name(Stage s);
Stage stage_from_name(const std::string& name);

inline bool is_knockout(Stage s) { return s >= Stage::round_of_16; }
inline bool is_group_stage(Stage s) { return s <= Stage::group3; }

// One match from the fan-token team's perspective. Segment boundaries are
// data, not constants; regulation_end is optional metadata for matches that
// went to extensions (defaults to full_time_end).
struct MatchEvent {
    std::string event_id;
    std::string token_id;
    std::string opponent;
    Stage stage = Stage::group1;
    Instant kickoff;
    Instant first_half_end;
    Instant second_half_start;
    Instant full_time_end;  // lambda: actual end incl. stoppage/extra time/penalties
    std::optional<Instant> regulation_end;
    bool went_to_penalties = false;
    int score_for = 0;
    int score_against = 0;
    odds::MatchOutcome outcome = odds::MatchOutcome::draw;

    Instant regulation_second_half_end() const {
        return regulation_end.value_or(full_time_end);
    }
};

std::string outcome_name(odds::MatchOutcome o);
odds::MatchOutcome outcome_from_name(const std::string& name);

// Checks ordering of segment boundaries and outcome/score consistency.
// Throws ConfigError with the event id on violation.
void validate_event(const MatchEvent& event);

// Parses the match schedule JSON (an array of objects; see README for the
// key list). Unknown keys are ignored; every event is validated.
std::vector<MatchEvent> parse_match_json(const std::string& text);

std::string emit_match_json(const std::vector<MatchEvent>& events);

}  // namespace matchstudy::events
