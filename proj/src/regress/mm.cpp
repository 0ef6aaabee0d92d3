#include "matchstudy/regress/mm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "matchstudy/common/errors.h"

namespace matchstudy::regress {

namespace {

// Draws p distinct indices in [0, n) using rejection on the raw generator so
// the stream does not depend on library distribution internals.
std::vector<Eigen::Index> draw_subset(std::mt19937_64& rng, Eigen::Index n, Eigen::Index p) {
    std::vector<Eigen::Index> picked;
    picked.reserve(static_cast<std::size_t>(p));
    while (picked.size() < static_cast<std::size_t>(p)) {
        const Eigen::Index candidate =
            static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
        if (std::find(picked.begin(), picked.end(), candidate) == picked.end()) {
            picked.push_back(candidate);
        }
    }
    return picked;
}

double median_abs(const Eigen::VectorXd& v) {
    std::vector<double> a(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        a[static_cast<std::size_t>(i)] = std::fabs(v[i]);
    }
    const std::size_t mid = a.size() / 2;
    std::nth_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(mid), a.end());
    double m = a[mid];
    if (a.size() % 2 == 0) {
        const auto lower = std::max_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(mid));
        m = 0.5 * (m + *lower);
    }
    return m;
}

// Weighted least squares; returns false when the weighted normal equations
// are numerically singular.
bool solve_wls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
               const Eigen::VectorXd& w, Eigen::VectorXd& beta) {
    const Eigen::MatrixXd Xw = w.array().sqrt().matrix().asDiagonal() * X;
    const Eigen::VectorXd yw = w.array().sqrt().matrix().asDiagonal() * y;
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xw);
    if (qr.rank() < X.cols()) {
        return false;
    }
    beta = qr.solve(yw);
    return beta.allFinite();
}

struct ScaledFit {
    Eigen::VectorXd beta;
    double scale = 0.0;
};

}  // namespace

double bisquare_rho(double u, double c) {
    const double a = std::fabs(u);
    if (a >= c) {
        return 1.0;
    }
    const double t = 1.0 - (u / c) * (u / c);
    return 1.0 - t * t * t;
}

double bisquare_psi(double u, double c) {
    if (std::fabs(u) >= c) {
        return 0.0;
    }
    const double t = 1.0 - (u / c) * (u / c);
    return u * t * t;
}

double bisquare_weight(double u, double c) {
    if (std::fabs(u) >= c) {
        return 0.0;
    }
    const double t = 1.0 - (u / c) * (u / c);
    return t * t;
}

double bisquare_rho_expectation(double c) {
    // E[rho(Z; c)] for Z ~ N(0,1), in closed form via normal moments:
    // rho(u) = 3(u/c)^2 - 3(u/c)^4 + (u/c)^6 inside |u| < c, 1 outside.
    const boost::math::normal_distribution<double> norm;
    const double Phi = boost::math::cdf(norm, c);
    const double phi = boost::math::pdf(norm, c);
    const double c2 = c * c;

    // Truncated even moments E[Z^k 1{|Z|<c}].
    const double m0 = 2.0 * Phi - 1.0;
    const double m2 = m0 - 2.0 * c * phi;
    const double m4 = 3.0 * m2 - 2.0 * c2 * c * phi;
    const double m6 = 5.0 * m4 - 2.0 * c2 * c2 * c * phi;

    const double inside = 3.0 * m2 / c2 - 3.0 * m4 / (c2 * c2) + m6 / (c2 * c2 * c2);
    const double outside = 2.0 * (1.0 - Phi);
    return inside + outside;
}

double m_scale(const Eigen::VectorXd& residuals, double c, double b) {
    const Eigen::Index n = residuals.size();
    double s = median_abs(residuals) / 0.6745;
    if (s <= 0.0) {
        return 0.0;
    }
    for (int iter = 0; iter < 200; ++iter) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            sum += bisquare_rho(residuals[i] / s, c);
        }
        const double factor = sum / (static_cast<double>(n) * b);
        const double next = s * std::sqrt(factor);
        if (std::fabs(next - s) <= 1e-12 * s) {
            return next;
        }
        s = next;
    }
    return s;
}

RegressionResult fit_mm(const DesignMatrix& design, const Eigen::VectorXd& y,
                        const MmConfig& config) {
    const Eigen::Index n = design.n();
    const Eigen::Index k = design.k();
    if (y.size() != n) {
        throw ConfigError("fit_mm: dependent length does not match design rows");
    }
    if (n <= k) {
        throw TooFewObservations("fit_mm needs n > k");
    }

    // Canonical row ordering (sort by dependent, then design entries) makes
    // subset draws and floating-point reductions independent of the caller's
    // row order.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (y[a] != y[b]) return y[a] < y[b];
        for (Eigen::Index c = 0; c < k; ++c) {
            if (design.X(a, c) != design.X(b, c)) return design.X(a, c) < design.X(b, c);
        }
        return false;
    });
    Eigen::MatrixXd X(n, k);
    Eigen::VectorXd yc(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        X.row(i) = design.X.row(order[static_cast<std::size_t>(i)]);
        yc[i] = y[order[static_cast<std::size_t>(i)]];
    }

    {
        const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
        if (qr.rank() < k) {
            throw RankDeficient("fit_mm: design matrix rank deficient");
        }
    }

    RegressionResult result;
    result.terms = design.labels;
    result.estimator = Estimator::mm;
    result.n_obs = static_cast<std::size_t>(n);

    // Exact linear fit: scale collapses to zero, OLS is the answer.
    {
        DesignMatrix canon{X, design.labels};
        RegressionResult ols = fit_ols(canon, yc);
        const double y_span = std::max(1.0, std::fabs(yc.maxCoeff() - yc.minCoeff()));
        if (ols.scale <= 1e-12 * y_span) {
            result.coefficients = ols.coefficients;
            result.std_errors = Eigen::VectorXd::Zero(k);
            result.p_values = Eigen::VectorXd::Zero(k);
            for (Eigen::Index j = 0; j < k; ++j) {
                result.p_values[j] = ols.coefficients[j] == 0.0 ? 1.0 : 0.0;
            }
            result.r_squared = 1.0;
            result.adj_or_pseudo_r_squared = 1.0;
            result.converged = true;
            result.iterations = 0;
            result.scale = 0.0;
            return result;
        }
    }

    const double b = bisquare_rho_expectation(config.s_constant);

    // --- Stage 1: S-estimate via random p-subsets.
    std::mt19937_64 rng(config.seed);
    ScaledFit best;
    best.scale = std::numeric_limits<double>::infinity();

    for (std::size_t trial = 0; trial < config.n_subsamples; ++trial) {
        const std::vector<Eigen::Index> rows = draw_subset(rng, n, k);
        Eigen::MatrixXd Xs(k, k);
        Eigen::VectorXd ys(k);
        for (Eigen::Index i = 0; i < k; ++i) {
            Xs.row(i) = X.row(rows[static_cast<std::size_t>(i)]);
            ys[i] = yc[rows[static_cast<std::size_t>(i)]];
        }
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(Xs);
        if (!lu.isInvertible()) {
            continue;
        }
        const Eigen::VectorXd candidate = lu.solve(ys);
        if (!candidate.allFinite()) {
            continue;
        }
        const Eigen::VectorXd residuals = yc - X * candidate;
        const double scale = m_scale(residuals, config.s_constant, b);
        if (scale < best.scale) {
            best.beta = candidate;
            best.scale = scale;
        }
    }
    if (!std::isfinite(best.scale)) {
        throw NoConvergence("fit_mm: no invertible p-subset found in S-stage");
    }

    // Local refinement of the best candidate: alternate weighted LS steps
    // with scale updates until the S-objective settles.
    for (std::size_t iter = 0; iter < 50; ++iter) {
        const Eigen::VectorXd residuals = yc - X * best.beta;
        if (best.scale <= 0.0) {
            break;
        }
        Eigen::VectorXd w(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            w[i] = bisquare_weight(residuals[i] / best.scale, config.s_constant);
        }
        Eigen::VectorXd refined;
        if (!solve_wls(X, yc, w, refined)) {
            break;
        }
        const Eigen::VectorXd new_residuals = yc - X * refined;
        const double new_scale = m_scale(new_residuals, config.s_constant, b);
        const double change = (refined - best.beta).cwiseAbs().maxCoeff();
        if (new_scale <= best.scale) {
            best.beta = refined;
            best.scale = new_scale;
        }
        if (change < config.tol) {
            break;
        }
    }

    if (best.scale <= 0.0) {
        // All residuals of the S-candidate vanish; treat as exact fit.
        result.coefficients = best.beta;
        result.std_errors = Eigen::VectorXd::Zero(k);
        result.p_values = Eigen::VectorXd::Ones(k);
        result.r_squared = 1.0;
        result.adj_or_pseudo_r_squared = 1.0;
        result.converged = true;
        result.scale = 0.0;
        return result;
    }

    // --- Stage 2: M-step IRLS at fixed scale.
    const double scale = best.scale;
    Eigen::VectorXd beta = best.beta;
    bool converged = false;
    std::size_t iterations = 0;
    for (; iterations < config.max_iter; ++iterations) {
        const Eigen::VectorXd residuals = yc - X * beta;
        Eigen::VectorXd w(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            w[i] = bisquare_weight(residuals[i] / scale, config.efficiency_constant);
        }
        Eigen::VectorXd next;
        if (!solve_wls(X, yc, w, next)) {
            throw NoConvergence("fit_mm: weighted least squares became singular in M-step");
        }
        const double change = (next - beta).cwiseAbs().maxCoeff();
        beta = next;
        if (change < config.tol) {
            converged = true;
            ++iterations;
            break;
        }
    }
    if (!converged) {
        throw NoConvergence("fit_mm: M-step did not converge within " +
                            std::to_string(config.max_iter) + " iterations");
    }

    result.coefficients = beta;
    result.converged = true;
    result.iterations = iterations;
    result.scale = scale;

    // Robust covariance: K^2 * scale^2 * (X'X)^-1 with the usual psi-based
    // correction.
    const Eigen::VectorXd residuals = yc - X * beta;
    double psi_sq = 0.0;
    double psi_prime = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double u = residuals[i] / scale;
        const double p = bisquare_psi(u, config.efficiency_constant);
        psi_sq += p * p;
        const double a = std::fabs(u);
        if (a < config.efficiency_constant) {
            const double t = (u / config.efficiency_constant) * (u / config.efficiency_constant);
            psi_prime += (1.0 - t) * (1.0 - 5.0 * t);
        }
    }
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    const double numerator = psi_sq / (nd - kd);
    const double denominator = (psi_prime / nd) * (psi_prime / nd);
    if (denominator <= 0.0) {
        throw NoConvergence("fit_mm: degenerate psi-prime sum in covariance estimate");
    }
    const double k2 = numerator / denominator;
    const Eigen::MatrixXd xtx_inv =
        (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    result.std_errors = (k2 * scale * scale * xtx_inv.diagonal()).array().max(0.0).sqrt();

    result.p_values.resize(k);
    const boost::math::students_t_distribution<double> dist(nd - kd);
    for (Eigen::Index j = 0; j < k; ++j) {
        if (result.std_errors[j] > 0.0) {
            const double t = result.coefficients[j] / result.std_errors[j];
            result.p_values[j] = 2.0 * boost::math::cdf(dist, -std::fabs(t));
        } else {
            result.p_values[j] = result.coefficients[j] == 0.0 ? 1.0 : 0.0;
        }
    }

    // Rho-based pseudo R^2 against the best intercept-only fit at the same
    // scale.
    double rho_full = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        rho_full += bisquare_rho(residuals[i] / scale, config.efficiency_constant);
    }
    double mu;
    {
        std::vector<double> sorted(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) sorted[static_cast<std::size_t>(i)] = yc[i];
        std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n / 2),
                         sorted.end());
        mu = sorted[static_cast<std::size_t>(n / 2)];
    }
    for (int iter = 0; iter < 100; ++iter) {
        double wsum = 0.0;
        double wy = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double w = bisquare_weight((yc[i] - mu) / scale, config.efficiency_constant);
            wsum += w;
            wy += w * yc[i];
        }
        if (wsum <= 0.0) {
            break;
        }
        const double next = wy / wsum;
        if (std::fabs(next - mu) < 1e-12 * (1.0 + std::fabs(mu))) {
            mu = next;
            break;
        }
        mu = next;
    }
    double rho_null = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        rho_null += bisquare_rho((yc[i] - mu) / scale, config.efficiency_constant);
    }
    result.adj_or_pseudo_r_squared = rho_null > 0.0 ? 1.0 - rho_full / rho_null : 1.0;
    result.r_squared = result.adj_or_pseudo_r_squared;
    return result;
}

}  // namespace matchstudy::regress
