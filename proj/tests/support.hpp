#pragma once

// Shared helpers for the test binaries: independent numeric oracles (never
// calling the code under test), synthetic corpus builders, and a scratch-dir
// guard. Oracles run in long double where it helps.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

// Entropy form of the Jensen-Shannon divergence, base 2:
//   jsd(p, r) = H(m) - H(p)/2 - H(r)/2,  m = (p + r)/2.
// Different grouping of terms than the production KL form, so agreement is a
// genuine cross-check.
inline long double oracle_jsd(std::span<const double> p, std::span<const double> r) {
    auto h = [](long double q) -> long double {
        return q > 0.0L ? -q * std::log2(q) : 0.0L;
    };
    long double hp = 0, hr = 0, hm = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        hp += h(p[i]);
        hr += h(r[i]);
        hm += h(0.5L * (static_cast<long double>(p[i]) + r[i]));
    }
    return hm - 0.5L * hp - 0.5L * hr;
}

// Random probability vector of length n. Roughly `zero_share` of the entries
// are zeroed first, so sparse and partially disjoint supports show up.
inline std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t n,
                                               double zero_share = 0.0) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> v(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (zero_share > 0.0 && unit(rng) < zero_share) continue;
        v[i] = unit(rng) + 1e-12;
        total += v[i];
    }
    if (total == 0.0) {  // everything zeroed; keep one atom
        v[rng() % n] = 1.0;
        total = 1.0;
    }
    for (double& x : v) x /= total;
    return v;
}

// Adaptive Simpson quadrature.
inline long double simpson(const std::function<long double(long double)>& f, long double a,
                           long double b, long double fa, long double fm, long double fb,
                           long double whole, long double tol, int depth) {
    const long double m = 0.5L * (a + b);
    const long double lm = 0.5L * (a + m), rm = 0.5L * (m + b);
    const long double flm = f(lm), frm = f(rm);
    const long double left = (m - a) / 6.0L * (fa + 4.0L * flm + fm);
    const long double right = (b - m) / 6.0L * (fm + 4.0L * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0L * tol)
        return left + right + (left + right - whole) / 15.0L;
    return simpson(f, a, m, fa, flm, fm, left, tol / 2.0L, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, tol / 2.0L, depth - 1);
}

inline long double integrate(const std::function<long double(long double)>& f, long double a,
                             long double b, long double tol = 1e-14L) {
    const long double m = 0.5L * (a + b);
    const long double fa = f(a), fm = f(m), fb = f(b);
    const long double whole = (b - a) / 6.0L * (fa + 4.0L * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Two-sided Student-t p by direct quadrature of the density. Accurate for
// moderate tails; extreme tails are covered by frozen reference values.
inline long double quadrature_t_two_sided(double t, double df) {
    const long double v = df;
    const long double logc = std::lgammal((v + 1.0L) / 2.0L) - std::lgammal(v / 2.0L) -
                             0.5L * std::log(v * 3.14159265358979323846264338327950288L);
    auto pdf = [&](long double s) -> long double {
        return std::exp(logc - (v + 1.0L) / 2.0L * std::log1p(s * s / v));
    };
    const long double central = 2.0L * integrate(pdf, 0.0L, std::fabs((long double)t));
    return 1.0L - central;
}

// Upper-tail chi-square p by quadrature of the density; df >= 2 keeps the
// integrand bounded at the origin.
inline long double quadrature_chi2_upper(double x, double df) {
    const long double k = df;
    const long double logc = -(k / 2.0L) * std::log(2.0L) - std::lgammal(k / 2.0L);
    auto pdf = [&](long double s) -> long double {
        if (s <= 0.0L) return 0.0L;
        return std::exp(logc + (k / 2.0L - 1.0L) * std::log(s) - s / 2.0L);
    };
    return 1.0L - integrate(pdf, 0.0L, (long double)x);
}

struct PairedOracle {
    long double t = 0, dz = 0, d_pooled = 0;
};

// Long-double recomputation of the paired statistics from their definitions.
inline PairedOracle oracle_paired(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    long double mean_d = 0, mean_x = 0, mean_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_d += static_cast<long double>(y[i]) - x[i];
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_d /= n;
    mean_x /= n;
    mean_y /= n;
    long double var_d = 0, var_x = 0, var_y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const long double d = static_cast<long double>(y[i]) - x[i];
        var_d += (d - mean_d) * (d - mean_d);
        var_x += (x[i] - mean_x) * (x[i] - mean_x);
        var_y += (y[i] - mean_y) * (y[i] - mean_y);
    }
    var_d /= (n - 1);
    var_x /= (n - 1);
    var_y /= (n - 1);
    PairedOracle o;
    o.dz = mean_d / std::sqrt(var_d);
    o.t = mean_d / (std::sqrt(var_d) / std::sqrt((long double)n));
    o.d_pooled = (mean_y - mean_x) / std::sqrt((var_x + var_y) / 2.0L);
    return o;
}

// Flat one-parent taxonomy JSON with leaves t000..t{n-1}; vocabulary size 3n.
inline std::string flat_taxonomy_json(std::size_t leaves) {
    std::ostringstream out;
    out << "{\"parents\": {\"Topics\": [";
    for (std::size_t i = 0; i < leaves; ++i) {
        if (i) out << ", ";
        char buf[8];
        std::snprintf(buf, sizeof buf, "t%03zu", i);
        out << '"' << buf << '"';
    }
    out << "]}}";
    return out.str();
}

// Scratch directory under the system temp root, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        std::ostringstream name;
        name << "disco-test-" << tag << "-" << std::hex << rd() << rd();
        path_ = std::filesystem::temp_directory_path() / name.str();
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace testsupport
