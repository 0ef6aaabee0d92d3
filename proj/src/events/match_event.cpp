#include "matchstudy/events/match_event.h"

#include <json.hpp>

#include "matchstudy/common/errors.h"

namespace matchstudy::events {

using nlohmann::json;

std::string stage_name(Stage s) {
    switch (s) {
        case Stage::group1: return "group1";
        case Stage::group2: return "group2";
        case Stage::group3: return "group3";
        case Stage::round_of_16: return "round_of_16";
        case Stage::quarter_final: return "quarter_final";
        case Stage::semi_final: return "semi_final";
        case Stage::final: return "final";
    }
    return "unknown";
}

Stage stage_from_name(const std::string& name) {
    if (name == "group1") return Stage::group1;
    if (name == "group2") return Stage::group2;
    if (name == "group3") return Stage::group3;
    if (name == "round_of_16") return Stage::round_of_16;
    if (name == "quarter_final") return Stage::quarter_final;
    if (name == "semi_final") return Stage::semi_final;
    if (name == "final") return Stage::final;
    throw ConfigError("unknown match stage '" + name + "'");
}

std::string outcome_name(odds::MatchOutcome o) {
    switch (o) {
        case odds::MatchOutcome::victory: return "victory";
        case odds::MatchOutcome::draw: return "draw";
        case odds::MatchOutcome::defeat: return "defeat";
    }
    return "unknown";
}

odds::MatchOutcome outcome_from_name(const std::string& name) {
    if (name == "victory") return odds::MatchOutcome::victory;
    if (name == "draw") return odds::MatchOutcome::draw;
    if (name == "defeat") return odds::MatchOutcome::defeat;
    throw ConfigError("unknown match outcome '" + name + "'");
}

void validate_event(const MatchEvent& event) {
    const auto fail = [&](const std::string& why) {
        throw ConfigError("event '" + event.event_id + "': " + why);
    };
    if (!(event.kickoff < event.first_half_end &&
          event.first_half_end < event.second_half_start &&
          event.second_half_start < event.full_time_end)) {
        fail("segment boundaries must satisfy kickoff < first_half_end < "
             "second_half_start < full_time_end");
    }
    if (event.regulation_end) {
        if (*event.regulation_end <= event.second_half_start ||
            *event.regulation_end > event.full_time_end) {
            fail("regulation_end must lie in (second_half_start, full_time_end]");
        }
    }
    if (event.score_for < 0 || event.score_against < 0) {
        fail("negative score");
    }
    if (event.went_to_penalties) {
        if (event.score_for != event.score_against) {
            fail("penalty shootout requires a tied score");
        }
        if (event.outcome == odds::MatchOutcome::draw) {
            fail("penalty shootout cannot end in a draw");
        }
    } else {
        const odds::MatchOutcome implied =
            event.score_for > event.score_against   ? odds::MatchOutcome::victory
            : event.score_for < event.score_against ? odds::MatchOutcome::defeat
                                                    : odds::MatchOutcome::draw;
        if (implied != event.outcome) {
            fail("outcome inconsistent with score " + std::to_string(event.score_for) + ":" +
                 std::to_string(event.score_against));
        }
    }
}

std::vector<MatchEvent> parse_match_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("match schedule JSON: ") + e.what(), 0);
    }
    if (!doc.is_array()) {
        throw ParseError("match schedule JSON must be an array of objects", 0);
    }

    std::vector<MatchEvent> events;
    events.reserve(doc.size());
    for (const auto& obj : doc) {
        try {
            MatchEvent event;
            event.event_id = obj.at("event_id").get<std::string>();
            event.token_id = obj.at("token_id").get<std::string>();
            event.opponent = obj.at("opponent").get<std::string>();
            event.stage = stage_from_name(obj.at("stage").get<std::string>());
            event.kickoff = parse_iso8601_utc(obj.at("kickoff_utc").get<std::string>());
            event.first_half_end =
                parse_iso8601_utc(obj.at("first_half_end_utc").get<std::string>());
            event.second_half_start =
                parse_iso8601_utc(obj.at("second_half_start_utc").get<std::string>());
            event.full_time_end =
                parse_iso8601_utc(obj.at("full_time_end_utc").get<std::string>());
            if (obj.contains("regulation_end_utc")) {
                event.regulation_end =
                    parse_iso8601_utc(obj.at("regulation_end_utc").get<std::string>());
            }
            event.went_to_penalties = obj.at("penalties").get<bool>();
            event.score_for = obj.at("score_for").get<int>();
            event.score_against = obj.at("score_against").get<int>();
            event.outcome = outcome_from_name(obj.at("outcome").get<std::string>());
            validate_event(event);
            events.push_back(std::move(event));
        } catch (const json::exception& e) {
            throw ParseError(std::string("match schedule JSON: ") + e.what(), 0);
        }
    }
    return events;
}

std::string emit_match_json(const std::vector<MatchEvent>& events) {
    json arr = json::array();
    for (const MatchEvent& event : events) {
        json obj;
        obj["event_id"] = event.event_id;
        obj["token_id"] = event.token_id;
        obj["opponent"] = event.opponent;
        obj["stage"] = stage_name(event.stage);
        obj["kickoff_utc"] = format_iso8601_utc(event.kickoff);
        obj["first_half_end_utc"] = format_iso8601_utc(event.first_half_end);
        obj["second_half_start_utc"] = format_iso8601_utc(event.second_half_start);
        obj["full_time_end_utc"] = format_iso8601_utc(event.full_time_end);
        if (event.regulation_end) {
            obj["regulation_end_utc"] = format_iso8601_utc(*event.regulation_end);
        }
        obj["penalties"] = event.went_to_penalties;
        obj["score_for"] = event.score_for;
        obj["score_against"] = event.score_against;
        obj["outcome"] = outcome_name(event.outcome);
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

}  // namespace matchstudy::events
