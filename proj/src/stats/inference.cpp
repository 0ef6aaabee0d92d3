#include "matchstudy/stats/inference.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "matchstudy/common/errors.h"

namespace matchstudy::stats {

namespace {

double student_t_two_sided_p(double t, double df) {
    if (!std::isfinite(t)) {
        return 0.0;
    }
    boost::math::students_t_distribution<double> dist(df);
    return 2.0 * boost::math::cdf(dist, -std::fabs(t));
}

double normal_two_sided_p(double z) {
    boost::math::normal_distribution<double> dist;
    return 2.0 * boost::math::cdf(dist, -std::fabs(z));
}

// Average ranks of |values|, with ties sharing the mean of their positions.
// Also accumulates the tie-correction term sum(t^3 - t).
std::vector<double> average_ranks(const std::vector<double>& abs_values, double& tie_term) {
    const std::size_t n = abs_values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return abs_values[a] < abs_values[b];
    });

    std::vector<double> ranks(n, 0.0);
    tie_term = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && abs_values[order[j + 1]] == abs_values[order[i]]) {
            ++j;
        }
        const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;
        const double tied = static_cast<double>(j - i + 1);
        tie_term += tied * tied * tied - tied;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = avg_rank;
        }
        i = j + 1;
    }
    return ranks;
}

// Exact null distribution of W+ over all 2^n sign assignments via a
// subset-sum count. Ranks are half-integers, so doubling makes them exact
// integers. Returns counts[s] = number of assignments with 2*W+ == s.
std::vector<double> exact_wplus_counts(const std::vector<double>& ranks) {
    std::vector<std::int64_t> doubled(ranks.size());
    std::int64_t total = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        doubled[i] = static_cast<std::int64_t>(std::llround(2.0 * ranks[i]));
        total += doubled[i];
    }
    std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
    counts[0] = 1.0;
    std::int64_t reach = 0;
    for (std::int64_t r : doubled) {
        reach += r;
        for (std::int64_t s = reach; s >= r; --s) {
            counts[static_cast<std::size_t>(s)] +=
                counts[static_cast<std::size_t>(s - r)];
        }
    }
    return counts;
}

}  // namespace

std::string method_name(TestMethod m) {
    switch (m) {
        case TestMethod::t_cross_sectional: return "t_cross_sectional";
        case TestMethod::wilcoxon_signed_rank_exact: return "wilcoxon_signed_rank_exact";
        case TestMethod::wilcoxon_signed_rank_normal: return "wilcoxon_signed_rank_normal";
        case TestMethod::boehmer: return "boehmer";
    }
    return "unknown";
}

double mean(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

double sample_stddev(const std::vector<double>& values) {
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - m) * (v - m);
    }
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

TestResult t_test_cross_sectional(const std::vector<double>& values) {
    if (values.size() < 2) {
        throw TooFewObservations("t-test needs at least 2 observations");
    }
    const double sd = sample_stddev(values);
    if (sd == 0.0) {
        throw ZeroVariance("t-test: all values identical");
    }
    const double n = static_cast<double>(values.size());
    TestResult result;
    result.method = TestMethod::t_cross_sectional;
    result.n_effective = values.size();
    result.statistic = mean(values) / (sd / std::sqrt(n));
    result.p_value = student_t_two_sided_p(result.statistic, n - 1.0);
    return result;
}

TestResult wilcoxon_signed_rank(const std::vector<double>& values,
                                const WilcoxonOptions& options) {
    std::vector<double> nonzero;
    nonzero.reserve(values.size());
    for (double v : values) {
        if (v != 0.0) {
            nonzero.push_back(v);
        }
    }
    if (nonzero.empty()) {
        throw AllZeros("wilcoxon: all values are exactly zero");
    }

    const std::size_t n = nonzero.size();
    std::vector<double> abs_values(n);
    for (std::size_t i = 0; i < n; ++i) {
        abs_values[i] = std::fabs(nonzero[i]);
    }
    double tie_term = 0.0;
    const std::vector<double> ranks = average_ranks(abs_values, tie_term);

    double w_plus = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (nonzero[i] > 0.0) {
            w_plus += ranks[i];
        }
    }

    const double nd = static_cast<double>(n);
    const double mu = nd * (nd + 1.0) / 4.0;
    const double sigma2 = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term / 48.0;
    const double sigma = std::sqrt(sigma2);

    TestResult result;
    result.n_effective = n;
    double centered = w_plus - mu;
    if (options.continuity_correction && centered != 0.0 && sigma > 0.0) {
        centered -= centered > 0.0 ? 0.5 : -0.5;
        // Correction never flips the sign past zero.
        if ((w_plus - mu) > 0.0 && centered < 0.0) centered = 0.0;
        if ((w_plus - mu) < 0.0 && centered > 0.0) centered = 0.0;
    }
    result.statistic = sigma > 0.0 ? centered / sigma : 0.0;

    if (n <= options.exact_cutoff) {
        result.method = TestMethod::wilcoxon_signed_rank_exact;
        const std::vector<double> counts = exact_wplus_counts(ranks);
        const double denom = std::ldexp(1.0, static_cast<int>(n));  // 2^n
        const std::size_t w2 = static_cast<std::size_t>(std::llround(2.0 * w_plus));
        double p_le = 0.0;
        double p_ge = 0.0;
        for (std::size_t s = 0; s < counts.size(); ++s) {
            if (s <= w2) p_le += counts[s];
            if (s >= w2) p_ge += counts[s];
        }
        result.p_value = std::min(1.0, 2.0 * std::min(p_le, p_ge) / denom);
    } else {
        result.method = TestMethod::wilcoxon_signed_rank_normal;
        result.p_value = sigma > 0.0 ? normal_two_sided_p(result.statistic) : 1.0;
    }
    return result;
}

TestResult boehmer_test(const std::vector<double>& standardized_cars) {
    if (standardized_cars.size() < 2) {
        throw TooFewObservations("boehmer test needs at least 2 observations");
    }
    const double sd = sample_stddev(standardized_cars);
    const double m = mean(standardized_cars);
    TestResult result;
    result.method = TestMethod::boehmer;
    result.n_effective = standardized_cars.size();
    if (sd == 0.0) {
        if (m != 0.0) {
            throw ZeroVariance("boehmer test: identical nonzero SCARs");
        }
        result.statistic = 0.0;
        result.p_value = 1.0;
        return result;
    }
    const double n = static_cast<double>(standardized_cars.size());
    result.statistic = m / (sd / std::sqrt(n));
    result.p_value = student_t_two_sided_p(result.statistic, n - 1.0);
    return result;
}

double positive_share(const std::vector<double>& values) {
    if (values.empty()) {
        throw EmptyInput("positive_share on empty input");
    }
    std::size_t positive = 0;
    for (double v : values) {
        if (v > 0.0) {
            ++positive;
        }
    }
    return static_cast<double>(positive) / static_cast<double>(values.size());
}

std::string significance_stars(double p_value) {
    if (p_value < 0.01) return "***";
    if (p_value < 0.05) return "**";
    if (p_value < 0.10) return "*";
    return "";
}

}  // namespace matchstudy::stats
