#include "wearprompt/stats.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wearprompt/error.hpp"

namespace wearprompt {
namespace {

// Continued fraction for I_x(a, b), modified Lentz evaluation. Converges
// quickly for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 10000;
    constexpr double kEpsilon = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEpsilon) {
            return h;
        }
    }
    throw Error(ErrorKind::Statistics, "incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorKind::Statistics, "incomplete beta requires a, b > 0 and x in [0, 1]");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                             b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_survival(double f, double d1, double d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0)) {
        throw Error(ErrorKind::Statistics, "F distribution requires positive degrees of freedom");
    }
    if (std::isnan(f)) {
        throw Error(ErrorKind::Statistics, "F statistic is NaN");
    }
    if (f <= 0.0) return 1.0;
    if (std::isinf(f)) return 0.0;
    // P(F > f) = I_{d2 / (d2 + d1 f)}(d2 / 2, d1 / 2)
    return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

SampleSummary summarize(const std::vector<double>& samples) {
    SampleSummary s;
    s.n = static_cast<int>(samples.size());
    if (samples.empty()) {
        return s;
    }
    s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double v : samples) {
            ss += (v - s.mean) * (v - s.mean);
        }
        s.stddev = std::sqrt(ss / static_cast<double>(samples.size() - 1));
    }
    return s;
}

AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) {
        throw Error(ErrorKind::Statistics, "ANOVA needs at least two groups, got " + std::to_string(groups.size()));
    }
    std::vector<double> means;
    std::vector<double> sizes;
    std::size_t total = 0;
    double ss_within = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& samples = groups[g];
        if (samples.size() < 2) {
            throw Error(ErrorKind::Statistics, "ANOVA group " + std::to_string(g) + " has fewer than two samples");
        }
        const auto summary = summarize(samples);
        for (double v : samples) {
            ss_within += (v - summary.mean) * (v - summary.mean);
        }
        means.push_back(summary.mean);
        sizes.push_back(static_cast<double>(samples.size()));
        total += samples.size();
    }
    // Pairwise form: exactly zero whenever all group means coincide.
    double ss_between = 0.0;
    for (std::size_t i = 0; i < means.size(); ++i) {
        for (std::size_t j = i + 1; j < means.size(); ++j) {
            const double diff = means[i] - means[j];
            ss_between += sizes[i] * sizes[j] * diff * diff;
        }
    }
    ss_between /= static_cast<double>(total);

    if (!(ss_between + ss_within > 0.0)) {
        throw Error(ErrorKind::Statistics, "ANOVA input has zero total variance");
    }

    AnovaResult result;
    result.df_between = static_cast<int>(groups.size()) - 1;
    result.df_within = static_cast<int>(total - groups.size());
    const double ms_between = ss_between / result.df_between;
    const double ms_within = ss_within / result.df_within;
    result.f_statistic = ms_within > 0.0 ? ms_between / ms_within : std::numeric_limits<double>::infinity();
    result.p_value = f_survival(result.f_statistic, result.df_between, result.df_within);
    return result;
}

}  // namespace wearprompt
