#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "matchstudy/regress/design.h"

namespace matchstudy::regress {

struct RegressionResult {
    std::vector<std::string> terms;
    Eigen::VectorXd coefficients;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd p_values;
    double r_squared = 0.0;
    // Adjusted R^2 under OLS, robust rho-based pseudo R^2 under MM.
    double adj_or_pseudo_r_squared = 0.0;
    std::size_t n_obs = 0;
    Estimator estimator = Estimator::ols;
    bool converged = true;
    std::size_t iterations = 0;
    double scale = 0.0;  // MM residual scale; OLS residual stddev
};

// Ordinary least squares with classical (homoskedastic) standard errors.
// Throws RankDeficient and TooFewObservations (n <= k).
RegressionResult fit_ols(const DesignMatrix& X, const Eigen::VectorXd& y);

}  // namespace matchstudy::regress
