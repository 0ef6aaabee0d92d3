#pragma once

#include <map>
#include <string>
#include <vector>

#include "matchstudy/regress/design.h"
#include "matchstudy/regress/mm.h"
#include "matchstudy/regress/ols.h"

namespace matchstudy::regress {

// One event's regression inputs: metadata plus the full-match accumulations
// from the event study. CAR arrives in percent-log units and is rescaled to
// fractions at this boundary; CAV stays in log-volume units.
struct DeterminantRow {
    events::MatchEvent event;
    odds::ExpectationLabel expectation;
    double car_full_match_pct = 0.0;
    double cav_full_match = 0.0;
};

struct DeterminantsColumn {
    std::string label;  // (a)..(j)
    RegressionSpec spec;
    RegressionResult result;
};

// The ten-column layout of the determinants tables for one dependent:
// (a)-(e) OLS over the five forms, (f)-(j) the same forms under MM.
std::vector<RegressionSpec> standard_spec_grid(Dependent dependent);

std::vector<DeterminantsColumn> run_determinants(const std::vector<DeterminantRow>& rows,
                                                 const std::vector<RegressionSpec>& specs,
                                                 const MmConfig& mm_config = {});

// Regression output CSV with the stable column set:
// spec,estimator,term,coefficient,std_error,p_value,r2,adj_or_pseudo_r2,n,converged
std::string emit_regression_csv(const std::vector<DeterminantsColumn>& columns);

}  // namespace matchstudy::regress
