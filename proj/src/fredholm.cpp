#include "edgegap/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "edgegap/error.hpp"
#include "edgegap/parallel.hpp"

namespace edgegap {

Eigen::MatrixXd operator_matrix(const KernelSpec& spec, const QuadGrid& grid) {
    const int m = grid.size();
    if (spec.is_bessel() && grid.lo < 0.0)
        throw DomainError("operator_matrix: Bessel grids must satisfy lo >= 0");
    const KernelTable table(spec, grid.nodes);
    Eigen::MatrixXd M(m, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) M(i, j) = grid.weights[j] * table(i, j);
    return M;
}

double fredholm_det(const Eigen::MatrixXd& M) {
    const Eigen::MatrixXd A = Eigen::MatrixXd::Identity(M.rows(), M.cols()) - M;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    // A zero pivot means det = 0 exactly: the gap probability has underflowed.
    const double det = lu.determinant();
    if (!std::isfinite(det)) throw SingularFactorization("non-finite Fredholm determinant");
    return det;
}

QuadGrid hard_edge_grid(int m, double lo, double hi) {
    if (!(lo >= 0.0 && lo < hi)) throw DomainError("hard_edge_grid: need 0 <= lo < hi");
    QuadGrid g = gauss_legendre(m, std::sqrt(lo), std::sqrt(hi));
    for (int i = 0; i < m; ++i) {
        const double u = g.nodes[i];
        g.nodes[i] = u * u;
        g.weights[i] *= 2.0 * u;
    }
    g.lo = lo;
    g.hi = hi;
    return g;
}

namespace {

Interval effective_interval(const KernelSpec& spec, Interval iv) {
    if (!(iv.lo < iv.hi)) throw DomainError("gap interval must satisfy lo < hi");
    if (spec.is_bessel()) {
        if (iv.lo < 0.0) throw DomainError("hard-edge interval must lie in [0, inf)");
        if (!std::isfinite(iv.hi)) throw DomainError("hard-edge interval must be bounded");
    } else if (!std::isfinite(iv.hi)) {
        iv.hi = std::max(iv.lo, 0.0) + kAiryTailOffset;
    }
    return iv;
}

double determinant_at(const KernelSpec& spec, const QuadGrid& grid) {
    return fredholm_det(operator_matrix(spec, grid));
}

GapValue determinant_pair(const KernelSpec& spec, Interval iv, int m,
                          QuadGrid (*make)(const KernelSpec&, Interval, int)) {
    GapValue g;
    g.method = GapMethod::Determinant;
    g.nodes_used = m;
    const double coarse = determinant_at(spec, make(spec, iv, m));
    const double fine = determinant_at(spec, make(spec, iv, 2 * m));
    g.value = coarse;
    g.err_estimate = std::abs(coarse - fine);
    return g;
}

double checked_sqrt(double det, const char* who) {
    if (det < kNegativeClamp)
        throw NegativeDeterminant(std::string(who) + ": determinant " + std::to_string(det) +
                                  " is below the clamp threshold");
    return std::sqrt(std::max(det, 0.0));
}

GapValue sqrt_gap(GapValue det, const char* who) {
    GapValue g = det;
    g.value = checked_sqrt(det.value, who);
    // d sqrt(v) = dv / (2 sqrt v)
    g.err_estimate = g.value > 0.0 ? det.err_estimate / (2.0 * g.value) : std::sqrt(det.err_estimate);
    return g;
}

GapValue clamp_unit(GapValue g) {
    if (g.value < 0.0 && g.value >= kNegativeClamp) g.value = 0.0;
    return g;
}

} // namespace

QuadGrid gap_grid(const KernelSpec& spec, Interval interval, int m) {
    const Interval iv = effective_interval(spec, interval);
    if (spec.is_bessel()) return hard_edge_grid(m, iv.lo, iv.hi);
    return gauss_legendre(m, iv.lo, iv.hi);
}

GapValue gap_determinant(const KernelSpec& spec, Interval interval, int m) {
    if (m < 1) throw DomainError("gap_determinant: m must be positive");
    return clamp_unit(determinant_pair(spec, interval, m, &gap_grid));
}

GapValue gap_series(const KernelSpec& spec, Interval interval, int m, int k_max,
                    SeriesCheck check) {
    if (m < 1) throw DomainError("gap_series: m must be positive");
    if (k_max < 1) throw DomainError("gap_series: k_max must be positive");
    const Eigen::MatrixXd M = operator_matrix(spec, gap_grid(spec, interval, m));
    const Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
    if (es.info() != Eigen::Success) throw NonConvergence("gap_series: eigenvalue solver failed");
    const Eigen::VectorXcd lambda = es.eigenvalues();

    // e_k from prod (1 + lambda_i z), truncated at degree k_max.
    const int kk = std::min(k_max, m);
    std::vector<std::complex<double>> e(static_cast<std::size_t>(kk + 1), 0.0);
    e[0] = 1.0;
    for (int i = 0; i < m; ++i)
        for (int k = std::min(i + 1, kk); k >= 1; --k) e[k] += lambda[i] * e[k - 1];

    double value = 0.0;
    for (int k = 0; k <= kk; ++k) {
        if (std::abs(e[k].imag()) > 1e-10 * std::max(1.0, std::abs(e[k].real())))
            throw Error("gap_series: imaginary part of e_" + std::to_string(k) +
                        " failed to cancel");
        value += (k % 2 == 0 ? 1.0 : -1.0) * e[k].real();
    }
    GapValue g;
    g.method = GapMethod::CorrelationSeries;
    g.nodes_used = m;
    g.series_k_used = k_max;
    g.value = value;
    g.err_estimate = kk < m ? std::abs(e[kk].real()) : 0.0;
    if (check == SeriesCheck::Strict && kk < m && g.err_estimate > 1e-12 * std::abs(value))
        throw NonConvergence("gap_series: |e_" + std::to_string(kk) +
                             "| too large for truncation");
    return g;
}

GapValue e2_hard(double s, int a, int m) {
    if (!(s >= 0.0)) throw DomainError("e2_hard: s must be nonnegative");
    if (s == 0.0) return {1.0, GapMethod::Determinant, 0, std::nullopt, 0.0};
    return gap_determinant(KernelSpec::bessel_beta2(a), {0.0, s}, m);
}

GapValue e1_hard(double s, double half_index, int m) {
    if (!(s >= 0.0)) throw DomainError("e1_hard: s must be nonnegative");
    const double order = 2.0 * half_index + 1.0;
    if (!(half_index >= 0.0) || order != std::floor(order))
        throw DomainError("e1_hard: 2*half_index + 1 must be a positive integer");
    if (s == 0.0) return {1.0, GapMethod::Determinant, 0, std::nullopt, 0.0};
    return sqrt_gap(
        gap_determinant(KernelSpec::bessel_beta1(static_cast<int>(order)), {0.0, s}, m),
        "e1_hard");
}

namespace {

GapValue interrelation(const GapValue& g1, const GapValue& g2, const char* who) {
    if (g1.value < 1e-300)
        throw DivisionUnderflow(std::string(who) + ": beta=1 constituent underflows");
    GapValue g;
    g.method = GapMethod::Interrelation;
    g.nodes_used = std::max(g1.nodes_used, g2.nodes_used);
    g.value = 0.5 * (g1.value + g2.value / g1.value);
    // First-order propagation of the two constituent discrepancies.
    const double d1 = 0.5 * (1.0 - g2.value / (g1.value * g1.value));
    const double d2 = 0.5 / g1.value;
    g.err_estimate = std::abs(d1) * g1.err_estimate + d2 * g2.err_estimate;
    return g;
}

} // namespace

GapValue e4_hard(double s, int a, int m) {
    if (a < 0) throw DomainError("e4_hard: a must be nonnegative");
    if (!(s >= 0.0)) throw DomainError("e4_hard: s must be nonnegative");
    if (s == 0.0) return {1.0, GapMethod::Interrelation, 0, std::nullopt, 0.0};
    // E1(s; (a-1)/2) through its kernel of order a; a = 0 is index -1/2.
    const GapValue g1 = sqrt_gap(
        gap_determinant(KernelSpec::bessel_beta1(a), {0.0, s}, m), "e4_hard");
    return interrelation(g1, e2_hard(s, a, m), "e4_hard");
}

GapValue f2(double s, int m) { return gap_determinant(KernelSpec::airy_beta2(), {s, kInfinity}, m); }

GapValue f1(double s, int m) {
    return sqrt_gap(gap_determinant(KernelSpec::airy_beta1(), {s, kInfinity}, m), "f1");
}

GapValue f4(double s, int m) { return interrelation(f1(s, m), f2(s, m), "f4"); }

double transition_scale(int a, double s) {
    const double u = a - std::cbrt(a / 2.0) * s;
    return u * u;
}

namespace {

// Rule in x for (0, x_end) from Gauss-Legendre in tau, x = Q_a(tau).
QuadGrid soft_scaled_grid(int a, double tau_start, double tau_end, int m) {
    const double c = std::cbrt(a / 2.0);
    const QuadGrid t = gauss_legendre(m, tau_start, tau_end);
    QuadGrid g;
    g.nodes.resize(static_cast<std::size_t>(m));
    g.weights.resize(static_cast<std::size_t>(m));
    // tau increasing means x decreasing; store in increasing x.
    for (int i = 0; i < m; ++i) {
        const double u = a - c * t.nodes[i];
        g.nodes[m - 1 - i] = u * u;
        g.weights[m - 1 - i] = t.weights[i] * 2.0 * c * u;
    }
    const double u_end = a - c * tau_end, u_start = a - c * tau_start;
    g.lo = u_end * u_end;
    g.hi = u_start * u_start;
    return g;
}

} // namespace

GapValue hard_gap_soft_scaled(int beta, int a, double x_end, int m) {
    if (beta != 1 && beta != 2) throw DomainError("hard_gap_soft_scaled: beta must be 1 or 2");
    if (a < 1) throw DomainError("hard_gap_soft_scaled: a must be positive");
    if (!(x_end > 0.0)) throw DomainError("hard_gap_soft_scaled: x_end must be positive");
    const double c = std::cbrt(a / 2.0);
    const double tau_start = (a - std::sqrt(x_end)) / c;
    const double tau_end = std::min(kTransitionCut, a / c);  // Q_a(a / c) = 0
    const KernelSpec spec =
        beta == 2 ? KernelSpec::bessel_beta2(a) : KernelSpec::bessel_beta1(a + 1);
    GapValue g;
    g.method = GapMethod::Determinant;
    g.nodes_used = m;
    if (tau_start >= tau_end) return g;  // interval lies beyond the cut: no mass
    const double coarse = determinant_at(spec, soft_scaled_grid(a, tau_start, tau_end, m));
    const double fine = determinant_at(spec, soft_scaled_grid(a, tau_start, tau_end, 2 * m));
    g.value = coarse;
    g.err_estimate = std::abs(coarse - fine);
    g = clamp_unit(g);
    return beta == 2 ? g : sqrt_gap(g, "hard_gap_soft_scaled");
}

std::vector<TransitionRow> transition_sweep(int beta, std::span<const double> s_values,
                                            std::span<const int> a_values, int m) {
    if (beta != 1 && beta != 2) throw DomainError("transition_sweep: beta must be 1 or 2");
    for (int a : a_values) {
        if (a < 1) throw DomainError("transition_sweep: a must be positive");
        if (beta == 1 && a % 2 != 0)
            throw DomainError("transition_sweep: beta=1 requires even a, got " + std::to_string(a));
    }
    const int ns = static_cast<int>(s_values.size());
    std::vector<double> soft(static_cast<std::size_t>(ns));
    parallel_for(ns, [&](int i) {
        soft[i] = beta == 2 ? f2(s_values[i], kSoftEdgeNodes).value
                            : f1(s_values[i], kSoftEdgeNodes).value;
    });
    std::vector<TransitionRow> rows(a_values.size() * s_values.size());
    parallel_for(static_cast<int>(rows.size()), [&](int idx) {
        const int a = a_values[idx / ns];
        const double s = s_values[idx % ns];
        const double hard = hard_gap_soft_scaled(beta, a, transition_scale(a, s), m).value;
        rows[idx] = {a, s, hard, soft[idx % ns], std::abs(hard - soft[idx % ns])};
    });
    return rows;
}

} // namespace edgegap
