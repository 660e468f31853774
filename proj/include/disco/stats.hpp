#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace disco::stats {

// Shared result shape for the hypothesis tests. Fields that do not apply to a
// given test (df for the binomial, effect_size for chi-square) are NaN.
struct TestResult {
    double statistic = 0;
    double df = 0;
    double p_value = 1;
    double effect_size = 0;
    std::size_t n = 0;
};

// Paired t on differences d = y - x: t = mean(d) / (sd(d)/sqrt(n)) with the
// sample (n-1) standard deviation, df = n-1, two-sided p. effect_size is the
// paired d_z = mean(d)/sd(d), so t = d_z * sqrt(n) holds by construction.
// All-zero differences are a degenerate-case error; a constant nonzero
// difference has no variance to test against and comes back as t = +/-inf
// with p = 0.
TestResult paired_t_test(std::span<const double> x, std::span<const double> y);

enum class DVariant { paired_dz, pooled };

// paired_dz = mean(y-x)/sd(y-x); pooled = (mean(y)-mean(x)) / pooled SD of
// the two samples. Zero variance is an error under both variants.
double cohens_d(std::span<const double> x, std::span<const double> y, DVariant variant);

// Exact two-sided binomial test: p = sum of P(X=i) over every i whose
// point probability does not exceed P(X=k), with a 1e-12 relative slack on
// the comparison to absorb rounding. statistic = k.
TestResult exact_binomial_test(std::uint64_t k, std::uint64_t n, double p0 = 0.5);

// Pearson chi-square test of independence on an r x m count table,
// df = (r-1)(m-1). Zero row or column marginals are an error.
TestResult chi_square_independence(const std::vector<std::vector<double>>& table);

// Tail machinery, exposed so the tests can pin it against an independent
// quadrature oracle.
double regularized_incomplete_beta(double a, double b, double x);
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);
double student_t_two_sided_p(double t, double df);
double chi_square_upper_p(double x, double df);

}  // namespace disco::stats
