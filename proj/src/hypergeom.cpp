#include "edgegap/hypergeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "edgegap/error.hpp"

namespace edgegap {

namespace {

std::optional<int> nonpositive_integer(double p) {
    if (p <= 0.0 && p == std::floor(p) && p > -1e9) return static_cast<int>(-p);
    return std::nullopt;
}

// Coefficient of x^|kappa| in the equal-argument series, i.e.
// C_kappa(1^n) prod[a]_kappa / (|kappa|! prod[b]_kappa). The |kappa|! cancels
// against the one inside C_kappa(1^n), so each box contributes a ratio of
// O(1) factors. Log space past kLogSpaceWeight.
double level_coefficient(const Partition& kappa, double alpha, std::span<const double> numer,
                         std::span<const double> denom, int n_vars) {
    const bool log_space = kappa.weight() > kLogSpaceWeight;
    double acc = log_space ? 0.0 : 1.0;
    double sign = 1.0;
    const Partition conj = kappa.conjugate();
    for (int i = 0; i < kappa.length(); ++i) {
        const double shift = i / alpha;
        for (int j = 0; j < kappa[i]; ++j) {
            const int arm = kappa[i] - j - 1;
            const int leg = conj[j] - i - 1;
            double f = alpha * alpha * (n_vars / alpha - shift + j) /
                       ((alpha * arm + leg + 1) * (alpha * (arm + 1) + leg));
            for (double p : numer) f *= p - shift + j;
            for (double q : denom) {
                const double d = q - shift + j;
                if (d == 0.0)
                    throw ZeroDenominator("generalized Pochhammer [" + std::to_string(q) +
                                          "]_kappa vanishes");
                f /= d;
            }
            if (f == 0.0) return 0.0;
            if (log_space) {
                if (f < 0) sign = -sign;
                acc += std::log(std::abs(f));
            } else {
                acc *= f;
            }
        }
    }
    return log_space ? sign * std::exp(acc) : acc;
}

} // namespace

double series_level(AlphaParam alpha, std::span<const double> numer,
                    std::span<const double> denom, int n_vars, int level) {
    if (n_vars < 1) throw DomainError("series_level: n_vars must be positive");
    if (level < 0) throw DomainError("series_level: level must be nonnegative");
    if (level == 0) return 1.0;
    double level_sum = 0.0;
    for_each_partition(level, n_vars, [&](const Partition& kappa) {
        level_sum += level_coefficient(kappa, alpha.value(), numer, denom, n_vars);
    });
    return level_sum;
}

HypergeomResult pfq_equal(AlphaParam alpha, std::span<const double> numer,
                          std::span<const double> denom, int n_vars, double x,
                          SeriesOptions opts) {
    if (n_vars < 1) throw DomainError("pfq_equal: n_vars must be positive");
    if (!(opts.rel_tol > 0.0 && opts.rel_tol < 1.0))
        throw DomainError("pfq_equal: rel_tol must lie in (0, 1)");

    std::optional<int> terminate_at;
    for (double p : numer)
        if (auto k = nonpositive_integer(p)) {
            const int deg = *k * n_vars;
            terminate_at = terminate_at ? std::min(*terminate_at, deg) : deg;
        }

    HypergeomResult res{1.0, 0, 0.0};
    double sum = 1.0;
    int small_run = 0;
    for (int level = 1;; ++level) {
        if (terminate_at && level > *terminate_at) break;
        if (!terminate_at && level > opts.level_cap)
            throw NonConvergence("equal-argument hypergeometric series hit the level cap of " +
                                 std::to_string(opts.level_cap));
        const double level_sum =
            series_level(alpha, numer, denom, n_vars, level) * std::pow(x, level);
        sum += level_sum;
        res.degree_used = level;
        res.tail_estimate = std::abs(level_sum);
        if (terminate_at) continue;
        const double scale = std::max(std::abs(sum), std::numeric_limits<double>::min());
        small_run = std::abs(level_sum) < opts.rel_tol * scale ? small_run + 1 : 0;
        if (small_run == 3) break;
    }
    res.value = sum;
    return res;
}

HypergeomResult hyp0f1_equal(AlphaParam alpha, double b, int n_vars, double x, double rel_tol) {
    const double denom[] = {b};
    return pfq_equal(alpha, {}, denom, n_vars, x, {rel_tol, 400});
}

HypergeomResult hyp2f1_equal(AlphaParam alpha, double a1, double a2, double b, int n_vars,
                             double x, double rel_tol) {
    const bool terminating = nonpositive_integer(a1) || nonpositive_integer(a2);
    if (!terminating && !(std::abs(x) < 1.0))
        throw DomainError("hyp2f1_equal: |x| < 1 required for a non-terminating series");
    const double numer[] = {a1, a2};
    const double denom[] = {b};
    return pfq_equal(alpha, numer, denom, n_vars, x, {rel_tol, 400});
}

GapValue hard_gap_hyper(int beta, double s, int a, double rel_tol) {
    if (!(s >= 0.0)) throw DomainError("hard_gap_hyper: s must be nonnegative");
    if (a < 0) throw DomainError("hard_gap_hyper: a must be nonnegative");
    double prefactor = 0.0, alpha = 0.0, b = 0.0, x = 0.0;
    switch (beta) {
    case 1:
        prefactor = std::exp(-s / 8.0), alpha = 0.5, b = 2.0 * a, x = s / 4.0;
        break;
    case 2:
        prefactor = std::exp(-s / 4.0), alpha = 1.0, b = a, x = s / 4.0;
        break;
    case 4:
        if (a % 2 != 0)
            throw DomainError("hard_gap_hyper: beta=4 requires even a, got " + std::to_string(a));
        prefactor = std::exp(-s / 8.0), alpha = 2.0, b = a / 2.0, x = s / 16.0;
        break;
    default:
        throw DomainError("hard_gap_hyper: beta must be 1, 2 or 4");
    }
    GapValue g;
    g.method = GapMethod::Hypergeometric;
    if (a == 0) {
        g.value = prefactor;
        g.series_k_used = 0;
        return g;
    }
    const auto r = hyp0f1_equal(AlphaParam(alpha), b, a, x, rel_tol);
    g.value = prefactor * r.value;
    g.series_k_used = r.degree_used;
    g.err_estimate = prefactor * r.tail_estimate;
    return g;
}

GapValue jacobi_gap_finite(double beta, double s, int a, double b, int n) {
    if (!(beta > 0.0)) throw DomainError("jacobi_gap_finite: beta must be positive");
    if (!(s >= 0.0 && s < 1.0)) throw DomainError("jacobi_gap_finite: s must lie in [0, 1)");
    if (a < 0) throw DomainError("jacobi_gap_finite: a must be nonnegative");
    if (n < 1) throw DomainError("jacobi_gap_finite: n must be positive");
    const double exponent = (1.0 + a + b) * n + beta * n * (n - 1) / 2.0;
    const double prefactor = std::pow(1.0 - s, exponent);
    GapValue g;
    g.method = GapMethod::Hypergeometric;
    if (a == 0 || s == 0.0) {
        g.value = prefactor;
        g.series_k_used = 0;
        return g;
    }
    const double x = -s / (1.0 - s);
    const auto r = hyp2f1_equal(AlphaParam(beta / 2.0), -static_cast<double>(n),
                                2.0 / beta * (a + b + 1.0) + n - 1.0, 2.0 / beta * a, a, x);
    g.value = prefactor * r.value;
    g.series_k_used = r.degree_used;
    return g;
}

} // namespace edgegap
