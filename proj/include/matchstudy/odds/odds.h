#pragma once

#include <map>
#include <string>

namespace matchstudy::odds {

// Decimal odds from the fan-token team's perspective.
struct OddsTriple {
    double odds_win = 0.0;
    double odds_draw = 0.0;
    double odds_loss = 0.0;
};

struct ProbabilityTriple {
    double p_win = 0.0;
    double p_draw = 0.0;
    double p_loss = 0.0;
    double overround = 0.0;  // bookmaker margin, sum(1/odds) - 1
};

enum class Expectation { expected_victory, expected_defeat, no_expectation };

std::string expectation_name(Expectation e);

struct ExpectationLabel {
    Expectation label = Expectation::no_expectation;
    double margin = 0.0;  // (p_win - p_loss) in percentage points
};

enum class MatchOutcome { victory, draw, defeat };

// Proportional de-vigging: p_i = (1/odds_i) / sum(1/odds). Throws InvalidOdds
// for odds <= 1 or non-finite.
ProbabilityTriple devig(const OddsTriple& odds);

// The ex-ante rule: |p_win - p_loss| must exceed `threshold` percentage
// points (strict inequality) to call a side.
ExpectationLabel classify_expectation(const ProbabilityTriple& probs, double threshold = 30.0);

// True only when the ex-ante side was called and the actual result is the
// opposite side. Draws and no_expectation never surprise.
bool surprise_flag(const ExpectationLabel& expectation, MatchOutcome actual);

// Odds CSV: header exactly `event_id,odds_win,odds_draw,odds_loss`.
std::map<std::string, OddsTriple> parse_odds_csv(const std::string& text);

}  // namespace matchstudy::odds
