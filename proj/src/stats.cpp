#include "disco/stats.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "disco/errors.hpp"

namespace disco::stats {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTiny = 1e-300;
constexpr double kConvergence = 1e-16;
constexpr int kMaxIterations = 800;

// Continued fraction for the incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const int m2 = 2 * m;
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
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kConvergence) break;
    }
    return h;
}

double sample_mean(std::span<const double> v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Unbiased (n-1) sample variance.
double sample_variance(std::span<const double> v, double mean) {
    double s = 0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0) || !(b > 0)) throw DataError("incomplete beta: a and b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double regularized_gamma_p(double a, double x) {
    if (!(a > 0)) throw DataError("incomplete gamma: a must be positive");
    if (x < 0) throw DataError("incomplete gamma: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x >= a + 1.0) return 1.0 - regularized_gamma_q(a, x);
    // Series representation converges fast left of the mean.
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIterations; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kConvergence) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double regularized_gamma_q(double a, double x) {
    if (!(a > 0)) throw DataError("incomplete gamma: a must be positive");
    if (x < 0) throw DataError("incomplete gamma: x must be nonnegative");
    if (x < a + 1.0) return 1.0 - regularized_gamma_p(a, x);
    // Continued fraction (modified Lentz) for the upper tail.
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIterations; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kConvergence) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double student_t_two_sided_p(double t, double df) {
    if (!(df > 0)) throw DataError("t distribution: df must be positive");
    if (std::isinf(t)) return 0.0;
    const double x = df / (df + t * t);
    double p = regularized_incomplete_beta(df / 2.0, 0.5, x);
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return p;
}

double chi_square_upper_p(double x, double df) {
    if (!(df > 0)) throw DataError("chi-square distribution: df must be positive");
    double p = regularized_gamma_q(df / 2.0, x / 2.0);
    if (p < 0.0) p = 0.0;
    if (p > 1.0) p = 1.0;
    return p;
}

TestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DataError("paired t: length mismatch");
    if (x.size() < 2) throw DataError("paired t: need at least two pairs");
    std::vector<double> d(x.size());
    bool any_nonzero = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        d[i] = y[i] - x[i];
        any_nonzero = any_nonzero || d[i] != 0.0;
    }
    if (!any_nonzero) throw DataError("paired t: all differences are zero");

    const double n = static_cast<double>(d.size());
    const double mean = sample_mean(d);
    const double sd = std::sqrt(sample_variance(d, mean));

    TestResult r;
    r.n = d.size();
    r.df = n - 1.0;
    if (sd == 0.0) {
        // Constant nonzero shift: the limit of the statistic, not an error.
        const double inf = std::numeric_limits<double>::infinity();
        r.statistic = mean > 0 ? inf : -inf;
        r.effect_size = r.statistic;
        r.p_value = 0.0;
        return r;
    }
    // t = mean/(sd/sqrt(n)), computed as d_z * sqrt(n) so the identity is
    // bitwise exact rather than merely algebraic.
    r.effect_size = mean / sd;
    r.statistic = r.effect_size * std::sqrt(n);
    r.p_value = student_t_two_sided_p(r.statistic, r.df);
    return r;
}

double cohens_d(std::span<const double> x, std::span<const double> y, DVariant variant) {
    if (variant == DVariant::paired_dz) {
        if (x.size() != y.size()) throw DataError("cohens d: length mismatch");
        if (x.size() < 2) throw DataError("cohens d: need at least two pairs");
        std::vector<double> d(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) d[i] = y[i] - x[i];
        const double mean = sample_mean(d);
        const double sd = std::sqrt(sample_variance(d, mean));
        if (sd == 0.0) throw DataError("cohens d: zero variance in differences");
        return mean / sd;
    }
    if (x.size() < 2 || y.size() < 2)
        throw DataError("cohens d: need at least two observations per sample");
    const double mx = sample_mean(x);
    const double my = sample_mean(y);
    const double vx = sample_variance(x, mx);
    const double vy = sample_variance(y, my);
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    const double pooled =
        std::sqrt(((nx - 1.0) * vx + (ny - 1.0) * vy) / (nx + ny - 2.0));
    if (pooled == 0.0) throw DataError("cohens d: zero pooled variance");
    return (my - mx) / pooled;
}

TestResult exact_binomial_test(std::uint64_t k, std::uint64_t n, double p0) {
    if (n < 1) throw DataError("binomial test: n must be at least 1");
    if (k > n) throw DataError("binomial test: k exceeds n");
    if (!(p0 > 0.0 && p0 < 1.0)) throw DataError("binomial test: p0 must lie in (0,1)");

    // Cumulative log-factorial table. log C(n,i) built from it is bitwise
    // symmetric in i <-> n-i, which keeps p(k) == p(n-k) exact at p0 = 0.5.
    std::vector<double> lf(n + 1, 0.0);
    for (std::uint64_t i = 1; i <= n; ++i)
        lf[i] = lf[i - 1] + std::log(static_cast<double>(i));
    const double lp = std::log(p0);
    const double lq = std::log1p(-p0);
    auto log_pmf = [&](std::uint64_t i) {
        return lf[n] - lf[i] - lf[n - i] + static_cast<double>(i) * lp +
               static_cast<double>(n - i) * lq;
    };

    const double cutoff = log_pmf(k) + 1e-12;  // relative slack on the pmf comparison
    double p = 0.0;
    for (std::uint64_t i = 0; i <= n; ++i)
        if (log_pmf(i) <= cutoff) p += std::exp(log_pmf(i));
    if (p > 1.0) p = 1.0;

    TestResult r;
    r.statistic = static_cast<double>(k);
    r.df = kNaN;
    r.p_value = p;
    r.effect_size = kNaN;
    r.n = n;
    return r;
}

TestResult chi_square_independence(const std::vector<std::vector<double>>& table) {
    if (table.size() < 2) throw DataError("chi-square: need at least two rows");
    const std::size_t cols = table[0].size();
    if (cols < 2) throw DataError("chi-square: need at least two columns");
    for (const auto& row : table)
        if (row.size() != cols) throw DataError("chi-square: ragged table");

    std::vector<double> row_sum(table.size(), 0.0), col_sum(cols, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double o = table[i][j];
            if (o < 0) throw DataError("chi-square: negative count");
            row_sum[i] += o;
            col_sum[j] += o;
            total += o;
        }
    }
    for (double s : row_sum)
        if (s == 0.0) throw DataError("chi-square: zero row marginal");
    for (double s : col_sum)
        if (s == 0.0) throw DataError("chi-square: zero column marginal");

    double chi2 = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double expected = row_sum[i] * col_sum[j] / total;
            const double diff = table[i][j] - expected;
            chi2 += diff * diff / expected;
        }
    }

    TestResult r;
    r.statistic = chi2;
    r.df = static_cast<double>((table.size() - 1) * (cols - 1));
    r.p_value = chi_square_upper_p(chi2, r.df);
    r.effect_size = kNaN;
    r.n = static_cast<std::size_t>(total + 0.5);
    return r;
}

}  // namespace disco::stats
