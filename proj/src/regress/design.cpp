#include "matchstudy/regress/design.h"

#include <algorithm>
#include <set>

#include "matchstudy/common/errors.h"

namespace matchstudy::regress {

using events::MatchEvent;
using events::Stage;
using odds::MatchOutcome;

namespace {

bool is_high_stake(Stage s) { return events::is_knockout(s); }

// Stage control categories: the three group matchdays collapse into one
// group-stage indicator; knockout rounds keep their own dummies.
std::string stage_control_category(Stage s) {
    if (events::is_group_stage(s)) return "group_stage";
    switch (s) {
        case Stage::round_of_16: return "round_of_16";
        case Stage::quarter_final: return "quarter_final";
        case Stage::semi_final: return "semi_final";
        case Stage::final: return "final";
        default: return "group_stage";
    }
}

}  // namespace

std::string form_name(RegressionForm f) {
    switch (f) {
        case RegressionForm::eq4_outcome: return "outcome";
        case RegressionForm::eq5_outcome_controls: return "outcome_controls";
        case RegressionForm::eq6_stake_split: return "stake_split";
        case RegressionForm::eq7_knockout_interaction: return "knockout_interaction";
        case RegressionForm::eq8_knockout_controls: return "knockout_controls";
    }
    return "unknown";
}

std::string estimator_name(Estimator e) {
    return e == Estimator::ols ? "ols" : "mm";
}

std::string dependent_name(Dependent d) {
    return d == Dependent::car_full_match ? "car_full_match" : "cav_full_match";
}

DesignMatrix build_design_matrix(const std::vector<LabeledEvent>& events,
                                 const RegressionSpec& spec) {
    if (events.empty()) {
        throw EmptyInput("design matrix needs at least one event");
    }

    const bool controls = spec.form == RegressionForm::eq5_outcome_controls ||
                          spec.form == RegressionForm::eq8_knockout_controls;

    DesignMatrix design;
    design.labels.push_back("intercept");
    switch (spec.form) {
        case RegressionForm::eq4_outcome:
        case RegressionForm::eq5_outcome_controls:
            design.labels.push_back("victory");
            design.labels.push_back("defeat");
            break;
        case RegressionForm::eq6_stake_split:
            design.labels.push_back("victory_low_stake");
            design.labels.push_back("victory_high_stake");
            design.labels.push_back("defeat_low_stake");
            design.labels.push_back("defeat_high_stake");
            break;
        case RegressionForm::eq7_knockout_interaction:
        case RegressionForm::eq8_knockout_controls:
            design.labels.push_back("victory");
            design.labels.push_back("defeat");
            design.labels.push_back("defeat_knockout");
            break;
    }

    std::vector<std::string> stage_controls;
    std::vector<std::string> token_controls;
    if (controls) {
        std::set<std::string> stages;
        std::set<std::string> tokens;
        for (const auto& [event, label] : events) {
            stages.insert(stage_control_category(event.stage));
            tokens.insert(event.token_id);
        }
        stages.erase(stage_control_category(spec.reference_groups.stage));
        tokens.erase(spec.reference_groups.token);
        stage_controls.assign(stages.begin(), stages.end());
        token_controls.assign(tokens.begin(), tokens.end());
        for (const auto& s : stage_controls) {
            design.labels.push_back("stage_" + s);
        }
        for (const auto& t : token_controls) {
            design.labels.push_back("token_" + t);
        }
    }

    const Eigen::Index n = static_cast<Eigen::Index>(events.size());
    const Eigen::Index k = static_cast<Eigen::Index>(design.labels.size());
    design.X = Eigen::MatrixXd::Zero(n, k);

    for (Eigen::Index i = 0; i < n; ++i) {
        const MatchEvent& event = events[static_cast<std::size_t>(i)].first;
        const bool win = event.outcome == MatchOutcome::victory;
        const bool loss = event.outcome == MatchOutcome::defeat;
        const bool high = is_high_stake(event.stage);
        const bool knockout = events::is_knockout(event.stage);

        Eigen::Index col = 0;
        design.X(i, col++) = 1.0;
        switch (spec.form) {
            case RegressionForm::eq4_outcome:
            case RegressionForm::eq5_outcome_controls:
                design.X(i, col++) = win ? 1.0 : 0.0;
                design.X(i, col++) = loss ? 1.0 : 0.0;
                break;
            case RegressionForm::eq6_stake_split:
                design.X(i, col++) = (win && !high) ? 1.0 : 0.0;
                design.X(i, col++) = (win && high) ? 1.0 : 0.0;
                design.X(i, col++) = (loss && !high) ? 1.0 : 0.0;
                design.X(i, col++) = (loss && high) ? 1.0 : 0.0;
                break;
            case RegressionForm::eq7_knockout_interaction:
            case RegressionForm::eq8_knockout_controls: {
                const double loss_d = loss ? 1.0 : 0.0;
                design.X(i, col++) = win ? 1.0 : 0.0;
                design.X(i, col++) = loss_d;
                // Interaction is the elementwise product of the Loss column
                // and the knockout indicator.
                design.X(i, col++) = loss_d * (knockout ? 1.0 : 0.0);
                break;
            }
        }
        if (controls) {
            const std::string cat = stage_control_category(event.stage);
            for (const auto& s : stage_controls) {
                design.X(i, col++) = cat == s ? 1.0 : 0.0;
            }
            for (const auto& t : token_controls) {
                design.X(i, col++) = event.token_id == t ? 1.0 : 0.0;
            }
        }
    }

    // Constant columns beyond the intercept cannot be identified.
    for (Eigen::Index c = 1; c < k; ++c) {
        const double first = design.X(0, c);
        bool constant = true;
        for (Eigen::Index i = 1; i < n && constant; ++i) {
            constant = design.X(i, c) == first;
        }
        if (constant) {
            throw RankDeficient("design column '" + design.labels[static_cast<std::size_t>(c)] +
                                "' is constant across the sample");
        }
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design.X);
    if (qr.rank() < k) {
        throw RankDeficient("design matrix is rank deficient (rank " +
                            std::to_string(qr.rank()) + " of " + std::to_string(k) + ")");
    }
    return design;
}

}  // namespace matchstudy::regress
