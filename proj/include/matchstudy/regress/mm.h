#pragma once

#include <cstdint>

#include "matchstudy/regress/ols.h"

namespace matchstudy::regress {

// Tuning for the two-stage MM fit. Defaults: 50% breakdown in the S-stage
// (bisquare c0 = 1.5476) and 95% normal efficiency in the M-stage
// (bisquare c1 = 4.685).
struct MmConfig {
    double efficiency_constant = 4.685;  // c1, M-stage
    double s_constant = 1.5476;          // c0, S-stage
    double tol = 1e-8;                   // max coefficient change
    std::size_t max_iter = 200;
    std::size_t n_subsamples = 500;
    std::uint64_t seed = 42;
};

// Robust MM regression: a high-breakdown S-estimate of coefficients and
// scale from random p-subsets, refined and followed by an IRLS M-step at
// fixed scale. Deterministic for a fixed seed and invariant to row order.
// An exact linear fit short-circuits to the OLS solution with scale 0.
// Throws NoConvergence and RankDeficient.
RegressionResult fit_mm(const DesignMatrix& X, const Eigen::VectorXd& y,
                        const MmConfig& config = {});

// Tukey bisquare primitives, exposed for tests.
double bisquare_rho(double u, double c);    // normalized so rho(inf) = 1
double bisquare_psi(double u, double c);
double bisquare_weight(double u, double c);

// Expected value of bisquare_rho under the standard normal; the M-scale
// equation solves mean(rho(r/s)) = this value.
double bisquare_rho_expectation(double c);

// M-scale of residuals: the s solving mean(rho(r_i/s; c)) = b.
double m_scale(const Eigen::VectorXd& residuals, double c, double b);

}  // namespace matchstudy::regress
