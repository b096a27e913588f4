#pragma once

#include <vector>

namespace wearprompt {

struct AnovaResult {
    double f_statistic = 0.0;
    double p_value = 1.0;
    int df_between = 0;
    int df_within = 0;
};

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

// P(F > f) for an F(d1, d2) variate.
double f_survival(double f, double d1, double d2);

struct SampleSummary {
    double mean = 0.0;
    double stddev = 0.0;  // sample (n - 1) standard deviation, 0 when n < 2
    int n = 0;
};

SampleSummary summarize(const std::vector<double>& samples);

// Classic one-way ANOVA. Requires >= 2 groups with >= 2 samples each and a
// nonzero total sum of squares; otherwise throws StatisticsError. Zero
// within-group variance with distinct group means yields F = inf, p = 0.
AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups);

}  // namespace wearprompt
