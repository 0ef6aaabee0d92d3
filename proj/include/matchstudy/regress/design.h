#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "matchstudy/events/match_event.h"
#include "matchstudy/odds/odds.h"

namespace matchstudy::regress {

enum class RegressionForm {
    eq4_outcome,              // intercept + Win + Loss
    eq5_outcome_controls,     // eq4 + stage/token control dummies
    eq6_stake_split,          // intercept + Win/Loss x Low/High stake
    eq7_knockout_interaction, // eq4 + Loss x Knockout
    eq8_knockout_controls,    // eq7 + stage/token control dummies
};

std::string form_name(RegressionForm f);

enum class Estimator { ols, mm };

std::string estimator_name(Estimator e);

enum class Dependent { car_full_match, cav_full_match };

std::string dependent_name(Dependent d);

// Reference groups are dropped from the dummy families so the intercept
// absorbs them: draws (outcome), SNFT (token), semi-final (stage).
struct ReferenceGroups {
    odds::MatchOutcome outcome = odds::MatchOutcome::draw;
    std::string token = "SNFT";
    events::Stage stage = events::Stage::semi_final;
};

struct RegressionSpec {
    Dependent dependent = Dependent::car_full_match;
    RegressionForm form = RegressionForm::eq4_outcome;
    Estimator estimator = Estimator::ols;
    ReferenceGroups reference_groups;
};

struct DesignMatrix {
    Eigen::MatrixXd X;  // one row per event, intercept first
    std::vector<std::string> labels;

    Eigen::Index n() const { return X.rows(); }
    Eigen::Index k() const { return X.cols(); }
};

using LabeledEvent = std::pair<events::MatchEvent, odds::ExpectationLabel>;

// Builds the dummy design for the requested form. Stake split: group stages
// are low, round of 16 onward is high. Control dummies collapse the group
// stage to one indicator and add one dummy per non-reference token present
// in the sample. Throws RankDeficient when any column is constant or the
// matrix loses full column rank.
DesignMatrix build_design_matrix(const std::vector<LabeledEvent>& events,
                                 const RegressionSpec& spec);

}  // namespace matchstudy::regress
