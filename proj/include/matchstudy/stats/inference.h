#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace matchstudy::stats {

enum class TestMethod {
    t_cross_sectional,
    wilcoxon_signed_rank_exact,
    wilcoxon_signed_rank_normal,
    boehmer,
};

std::string method_name(TestMethod m);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    TestMethod method = TestMethod::t_cross_sectional;
    std::size_t n_effective = 0;
};

// Plain cross-sectional t: mean / (sample sd / sqrt(n)), two-sided p from
// Student-t with n-1 df. Throws TooFewObservations (n < 2) and ZeroVariance.
TestResult t_test_cross_sectional(const std::vector<double>& values);

struct WilcoxonOptions {
    // Exact two-sided p by enumerating sign assignments up to this n; the
    // normal approximation takes over beyond it.
    std::size_t exact_cutoff = 25;
    bool continuity_correction = true;
};

// Wilcoxon (1945) signed-rank test. Zeros are dropped, ties get average
// ranks, and the statistic is reported as a signed z-equivalent.
// Throws AllZeros when nothing survives the zero drop.
TestResult wilcoxon_signed_rank(const std::vector<double>& values,
                                const WilcoxonOptions& options = {});

// Standardized cross-sectional test on SCARs (Boehmer et al. 1991 form):
// mean(SCAR) / (sd(SCAR)/sqrt(n)), two-sided p from Student-t with n-1 df.
// Inputs must already be standardized by estimation-window scale.
TestResult boehmer_test(const std::vector<double>& standardized_cars);

// Fraction of strictly positive values. Throws EmptyInput.
double positive_share(const std::vector<double>& values);

// Two-sided significance stars per the usual 10/5/1% convention.
std::string significance_stars(double p_value);

double mean(const std::vector<double>& values);
double sample_stddev(const std::vector<double>& values);

}  // namespace matchstudy::stats
