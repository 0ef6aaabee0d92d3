#include "matchstudy/odds/odds.h"

#include <cmath>
#include <sstream>

#include "matchstudy/common/csv.h"
#include "matchstudy/common/errors.h"

namespace matchstudy::odds {

namespace {

void check_odds(double value, const char* which) {
    if (!std::isfinite(value) || value <= 1.0) {
        throw InvalidOdds(std::string("decimal odds for ") + which +
                          " must be finite and > 1.0");
    }
}

}  // namespace

std::string expectation_name(Expectation e) {
    switch (e) {
        case Expectation::expected_victory: return "expected_victory";
        case Expectation::expected_defeat: return "expected_defeat";
        case Expectation::no_expectation: return "no_expectation";
    }
    return "unknown";
}

ProbabilityTriple devig(const OddsTriple& odds) {
    check_odds(odds.odds_win, "win");
    check_odds(odds.odds_draw, "draw");
    check_odds(odds.odds_loss, "loss");

    const double raw_win = 1.0 / odds.odds_win;
    const double raw_draw = 1.0 / odds.odds_draw;
    const double raw_loss = 1.0 / odds.odds_loss;
    const double total = raw_win + raw_draw + raw_loss;

    ProbabilityTriple probs;
    probs.overround = total - 1.0;
    probs.p_win = raw_win / total;
    probs.p_draw = raw_draw / total;
    probs.p_loss = raw_loss / total;
    return probs;
}

ExpectationLabel classify_expectation(const ProbabilityTriple& probs, double threshold) {
    ExpectationLabel label;
    label.margin = (probs.p_win - probs.p_loss) * 100.0;
    if (label.margin > threshold) {
        label.label = Expectation::expected_victory;
    } else if (label.margin < -threshold) {
        label.label = Expectation::expected_defeat;
    } else {
        label.label = Expectation::no_expectation;
    }
    return label;
}

bool surprise_flag(const ExpectationLabel& expectation, MatchOutcome actual) {
    if (expectation.label == Expectation::expected_victory) {
        return actual == MatchOutcome::defeat;
    }
    if (expectation.label == Expectation::expected_defeat) {
        return actual == MatchOutcome::victory;
    }
    return false;
}

std::map<std::string, OddsTriple> parse_odds_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) ||
        csv::trim(line) != "event_id,odds_win,odds_draw,odds_loss") {
        throw ParseError("odds CSV header must be exactly "
                         "'event_id,odds_win,odds_draw,odds_loss'",
                         1);
    }
    std::map<std::string, OddsTriple> out;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (csv::trim(line).empty()) {
            continue;
        }
        const auto fields = csv::split_line(line);
        if (fields.size() != 4) {
            throw ParseError("expected 4 fields, got " + std::to_string(fields.size()), row);
        }
        const std::string event_id = csv::trim(fields[0]);
        OddsTriple odds;
        if (!csv::parse_double(fields[1], odds.odds_win) ||
            !csv::parse_double(fields[2], odds.odds_draw) ||
            !csv::parse_double(fields[3], odds.odds_loss)) {
            throw ParseError("unparsable odds value", row);
        }
        if (out.count(event_id)) {
            throw ParseError("duplicate event_id '" + event_id + "' in odds CSV", row);
        }
        out.emplace(event_id, odds);
    }
    return out;
}

}  // namespace matchstudy::odds
