#pragma once

#include <span>

#include "edgegap/gap_value.hpp"
#include "edgegap/partitions.hpp"

namespace edgegap {

struct HypergeomResult {
    double value = 0.0;
    int degree_used = 0;       // highest |kappa| level summed
    double tail_estimate = 0;  // |contribution of the last summed level|
};

struct SeriesOptions {
    double rel_tol = 1e-14;
    int level_cap = 400;
};

// Jack-polynomial pFq^(alpha)(a; b; x, ..., x) with n_vars equal arguments.
// Levels |kappa| = N are summed in increasing N; within a level partitions are
// visited in decreasing lexicographic order. A non-terminating series stops at
// the first level that completes a run of three consecutive levels each below
// rel_tol relative to the running sum. A series with a nonpositive integer
// numerator parameter is summed to termination.
//
// Throws ZeroDenominator if some [b_q]_kappa vanishes on a visited partition and
// NonConvergence when the level cap is reached.
HypergeomResult pfq_equal(AlphaParam alpha, std::span<const double> numer,
                          std::span<const double> denom, int n_vars, double x,
                          SeriesOptions opts = {});

// Coefficient of x^level in the series above (sum over partitions of `level`
// with at most n_vars parts).
double series_level(AlphaParam alpha, std::span<const double> numer,
                    std::span<const double> denom, int n_vars, int level);

HypergeomResult hyp0f1_equal(AlphaParam alpha, double b, int n_vars, double x,
                             double rel_tol = 1e-14);

// Requires |x| < 1 unless a1 or a2 is a nonpositive integer (DomainError otherwise).
HypergeomResult hyp2f1_equal(AlphaParam alpha, double a1, double a2, double b, int n_vars,
                             double x, double rel_tol = 1e-14);

// Hard-edge gap probability E_beta^hard(s; a) for beta in {1, 2, 4} from the
// 0F1 representation:
//   beta=1: exp(-s/8) 0F1^(1/2)(2a;  (s/4)  1_a)
//   beta=2: exp(-s/4) 0F1^(1)  (a;   (s/4)  1_a)
//   beta=4: exp(-s/8) 0F1^(2)  (a/2; (s/16) 1_a), a even
GapValue hard_gap_hyper(int beta, double s, int a, double rel_tol = 1e-14);

// Probability that (0, s) is free of eigenvalues in the n-point Jacobi
// ensemble with weight x^a (1-x)^b and exponent beta, via the terminating
// a-variable 2F1^(beta/2).
GapValue jacobi_gap_finite(double beta, double s, int a, double b, int n);

} // namespace edgegap
