#include "matchstudy/regress/run.h"

#include "matchstudy/common/csv.h"
#include "matchstudy/common/errors.h"

namespace matchstudy::regress {

std::vector<RegressionSpec> standard_spec_grid(Dependent dependent) {
    const std::vector<RegressionForm> forms = {
        RegressionForm::eq4_outcome,          RegressionForm::eq5_outcome_controls,
        RegressionForm::eq6_stake_split,      RegressionForm::eq7_knockout_interaction,
        RegressionForm::eq8_knockout_controls,
    };
    std::vector<RegressionSpec> specs;
    for (Estimator estimator : {Estimator::ols, Estimator::mm}) {
        for (RegressionForm form : forms) {
            RegressionSpec spec;
            spec.dependent = dependent;
            spec.form = form;
            spec.estimator = estimator;
            specs.push_back(spec);
        }
    }
    return specs;
}

std::vector<DeterminantsColumn> run_determinants(const std::vector<DeterminantRow>& rows,
                                                 const std::vector<RegressionSpec>& specs,
                                                 const MmConfig& mm_config) {
    if (rows.empty()) {
        throw EmptyInput("run_determinants needs at least one event");
    }

    std::vector<LabeledEvent> events;
    events.reserve(rows.size());
    Eigen::VectorXd car(static_cast<Eigen::Index>(rows.size()));
    Eigen::VectorXd cav(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        events.emplace_back(rows[i].event, rows[i].expectation);
        // Percent-log CARs become fractions here, matching the coefficient
        // units of the determinants tables.
        car[static_cast<Eigen::Index>(i)] = rows[i].car_full_match_pct / 100.0;
        cav[static_cast<Eigen::Index>(i)] = rows[i].cav_full_match;
    }

    std::vector<DeterminantsColumn> columns;
    columns.reserve(specs.size());
    char label = 'a';
    for (const RegressionSpec& spec : specs) {
        DeterminantsColumn column;
        column.label = std::string("(") + label + ")";
        ++label;
        column.spec = spec;

        const DesignMatrix design = build_design_matrix(events, spec);
        const Eigen::VectorXd& y = spec.dependent == Dependent::car_full_match ? car : cav;
        column.result = spec.estimator == Estimator::ols ? fit_ols(design, y)
                                                         : fit_mm(design, y, mm_config);
        columns.push_back(std::move(column));
    }
    return columns;
}

std::string emit_regression_csv(const std::vector<DeterminantsColumn>& columns) {
    std::string out =
        "spec,estimator,term,coefficient,std_error,p_value,r2,adj_or_pseudo_r2,n,converged\n";
    for (const DeterminantsColumn& column : columns) {
        const RegressionResult& r = column.result;
        const std::string spec_name =
            dependent_name(column.spec.dependent) + ":" + form_name(column.spec.form);
        for (std::size_t j = 0; j < r.terms.size(); ++j) {
            const Eigen::Index idx = static_cast<Eigen::Index>(j);
            out += spec_name;
            out += ',';
            out += estimator_name(column.spec.estimator);
            out += ',';
            out += r.terms[j];
            out += ',';
            out += csv::format_full(r.coefficients[idx]);
            out += ',';
            out += csv::format_full(r.std_errors[idx]);
            out += ',';
            out += csv::format_full(r.p_values[idx]);
            out += ',';
            out += csv::format_full(r.r_squared);
            out += ',';
            out += csv::format_full(r.adj_or_pseudo_r_squared);
            out += ',';
            out += std::to_string(r.n_obs);
            out += ',';
            out += r.converged ? "true" : "false";
            out += '\n';
        }
    }
    return out;
}

}  // namespace matchstudy::regress
