#pragma once

#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "edgegap/gap_value.hpp"
#include "edgegap/kernels.hpp"
#include "edgegap/quadrature.hpp"

namespace edgegap {

struct Interval {
    double lo;
    double hi;  // may be +infinity for the soft edge
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Default resolutions for shipped gap values.
inline constexpr int kHardEdgeNodes = 80;
inline constexpr int kSoftEdgeNodes = 60;

// (s, inf) is cut to (s, max(s, 0) + kAiryTailOffset); Ai(s + 14)^2 < 1e-24 for s >= -4.
inline constexpr double kAiryTailOffset = 14.0;
// Upper end of the soft-edge variable in the hard-to-soft substitution.
inline constexpr double kTransitionCut = 14.0;
// Determinants above this negative value are rounded to zero before a square root.
inline constexpr double kNegativeClamp = -1e-10;

// Nystrom matrix M_ij = w_j K(x_i, x_j).
Eigen::MatrixXd operator_matrix(const KernelSpec& spec, const QuadGrid& grid);

// The same for an arbitrary kernel callable k(x, y).
template <typename Kernel>
Eigen::MatrixXd nystrom_matrix(Kernel&& k, const QuadGrid& grid) {
    const int m = grid.size();
    Eigen::MatrixXd M(m, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) M(i, j) = grid.weights[j] * k(grid.nodes[i], grid.nodes[j]);
    return M;
}

// det(I - M) by partial-pivot LU. SingularFactorization if not finite.
double fredholm_det(const Eigen::MatrixXd& M);

// Gauss-Legendre in u = sqrt(x) on (sqrt lo, sqrt hi), returned as a rule in x
// (nodes u_j^2, weights 2 u_j w_j). Bessel kernels are analytic in sqrt(x), so
// this keeps spectral convergence for odd orders.
QuadGrid hard_edge_grid(int m, double lo, double hi);

// The grid gap_determinant uses for `spec` on `interval`.
QuadGrid gap_grid(const KernelSpec& spec, Interval interval, int m);

// det(I - M) at m nodes; err_estimate = |det(m) - det(2m)|.
GapValue gap_determinant(const KernelSpec& spec, Interval interval, int m);

enum class SeriesCheck { Strict, None };

// 1 + sum_{k=1}^{k_max} (-1)^k e_k, with e_k the elementary symmetric functions
// of the eigenvalues of M; the k-th term is exactly the Nystrom discretisation of
// the k-fold correlation integral. With SeriesCheck::Strict throws NonConvergence
// when the series is truncated (k_max < m) and |e_{k_max}| > 1e-12 |value|.
GapValue gap_series(const KernelSpec& spec, Interval interval, int m, int k_max,
                    SeriesCheck check = SeriesCheck::Strict);

// Hard edge, beta = 2: Bessel determinant on (0, s).
GapValue e2_hard(double s, int a, int m = kHardEdgeNodes);

// Hard edge, beta = 1 at index h (integer or half-integer): square root of the
// K1 Bessel determinant with kernel order 2h + 1.
GapValue e1_hard(double s, double half_index, int m = kHardEdgeNodes);

// Hard edge, beta = 4 at index a + 1 (a >= 0), from
//   E4(s; a+1) = (E1(s; (a-1)/2) + E2(s; a) / E1(s; (a-1)/2)) / 2,
// with E1 taken from the beta = 1 kernel of order a (a = 0 gives index -1/2).
GapValue e4_hard(double s, int a, int m = kHardEdgeNodes);

// Soft edge: F2 is the Airy determinant on (s, inf), F1 the square root of the
// K1 Airy determinant, F4 = (F1 + F2 / F1) / 2.
GapValue f2(double s, int m = kSoftEdgeNodes);
GapValue f1(double s, int m = kSoftEdgeNodes);
GapValue f4(double s, int m = kSoftEdgeNodes);

// Q_a(s) = (a - (a/2)^{1/3} s)^2.
double transition_scale(int a, double s);

// E_beta^hard on (0, x_end) at order a (beta = 2) or with the beta = 1 kernel of
// order a + 1, evaluated through x = Q_a(tau) with tau up to kTransitionCut.
GapValue hard_gap_soft_scaled(int beta, int a, double x_end, int m = kHardEdgeNodes);

struct TransitionRow {
    int a;
    double s;
    double hard_value;
    double soft_value;
    double abs_error;
};

// Rows in (a outer, s inner) order. beta = 1 needs even a.
std::vector<TransitionRow> transition_sweep(int beta, std::span<const double> s_values,
                                            std::span<const int> a_values,
                                            int m = kHardEdgeNodes);

} // namespace edgegap
