#include "matchstudy/regress/ols.h"

#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "matchstudy/common/errors.h"

namespace matchstudy::regress {

RegressionResult fit_ols(const DesignMatrix& design, const Eigen::VectorXd& y) {
    const Eigen::Index n = design.n();
    const Eigen::Index k = design.k();
    if (y.size() != n) {
        throw ConfigError("fit_ols: dependent length does not match design rows");
    }
    if (n <= k) {
        throw TooFewObservations("fit_ols needs n > k (" + std::to_string(n) + " rows, " +
                                 std::to_string(k) + " columns)");
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design.X);
    if (qr.rank() < k) {
        throw RankDeficient("fit_ols: design matrix rank deficient");
    }

    RegressionResult result;
    result.terms = design.labels;
    result.estimator = Estimator::ols;
    result.n_obs = static_cast<std::size_t>(n);
    result.coefficients = qr.solve(y);

    const Eigen::VectorXd residuals = y - design.X * result.coefficients;
    const double ssr = residuals.squaredNorm();
    const double y_mean = y.mean();
    const double sst = (y.array() - y_mean).matrix().squaredNorm();
    const double df = static_cast<double>(n - k);
    const double sigma2 = ssr / df;
    result.scale = std::sqrt(sigma2);

    const Eigen::MatrixXd xtx_inv =
        (design.X.transpose() * design.X).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    result.std_errors = (sigma2 * xtx_inv.diagonal()).array().max(0.0).sqrt();

    result.p_values.resize(k);
    const boost::math::students_t_distribution<double> dist(df);
    for (Eigen::Index j = 0; j < k; ++j) {
        if (result.std_errors[j] > 0.0) {
            const double t = result.coefficients[j] / result.std_errors[j];
            result.p_values[j] = 2.0 * boost::math::cdf(dist, -std::fabs(t));
        } else {
            result.p_values[j] = result.coefficients[j] == 0.0 ? 1.0 : 0.0;
        }
    }

    result.r_squared = sst > 0.0 ? 1.0 - ssr / sst : 1.0;
    result.adj_or_pseudo_r_squared =
        1.0 - (1.0 - result.r_squared) * static_cast<double>(n - 1) / df;
    result.converged = true;
    return result;
}

}  // namespace matchstudy::regress
