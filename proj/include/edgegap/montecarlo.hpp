#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include "edgegap/partitions.hpp"

namespace edgegap {

struct RngSeed {
    std::uint64_t value = 0;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(trials)
    std::int64_t trials = 0;
    RngSeed seed;
};

using Rng = std::mt19937_64;

// splitmix64 finaliser; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t z);

// Generator for chunk `stream` of a run seeded with `seed`:
// mt19937_64 seeded with mix64(seed + (stream + 1) * 0x9e3779b97f4a7c15).
Rng make_stream(RngSeed seed, std::uint64_t stream);

// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

// Length of the longest strictly increasing subsequence (patience sorting).
template <typename T>
int lis(std::span<const T> seq) {
    std::vector<T> tops;
    for (const T& v : seq) {
        auto it = std::lower_bound(tops.begin(), tops.end(), v);
        if (it == tops.end())
            tops.push_back(v);
        else
            *it = v;
    }
    return static_cast<int>(tops.size());
}

template <typename T>
int lis(const std::vector<T>& seq) {
    return lis(std::span<const T>(seq));
}

struct Point {
    double x;
    double y;
};
using PointSet = std::vector<Point>;

// Longest up/right chain. Points are ordered by x ascending and, on equal x,
// y descending, so tied coordinates never chain.
int longest_chain(const PointSet& ps);

// Uniform permutation of {0, ..., n-1} (Fisher-Yates).
std::vector<int> sample_permutation(int n, Rng& rng);

// Uniform fixed-point-free involution of {0, ..., two_n-1}; result[i] is the
// partner of i. DomainError on odd or negative two_n.
std::vector<int> sample_fpf_involution(int two_n, Rng& rng);

enum class Shape { Square, AntiDiagonal, Diagonal };

// Pr(L(t) <= l) for the Poissonized point process:
//   Square:       N ~ Poisson(t) uniform points in the unit square;
//   AntiDiagonal: M ~ Poisson(t/2) points below y = 1 - x plus mirrors (1-y, 1-x);
//   Diagonal:     M ~ Poisson(t/2) points below y = x plus mirrors (y, x).
// Trials are split into fixed chunks with independent streams, so the result
// depends only on the seed and not on the worker count.
McEstimate poissonized_lis_cdf(Shape shape, double t, int l, std::int64_t trials, RngSeed seed);

// Draws the point set of one trial (exposed for tests).
PointSet sample_points(Shape shape, double t, Rng& rng);

enum class EnumKind { Permutation, FpfInvolution };
enum class Statistic { Increasing, Decreasing };

using Rational = boost::rational<std::int64_t>;

// Exact Pr(L <= l) for l = 1..n (entry l-1), by exhaustive enumeration of all
// permutations of n <= 10 or all fixed-point-free involutions of n <= 12 (n even).
// Statistic::Decreasing counts the longest decreasing subsequence instead.
// SizeLimit above the caps, DomainError on odd n for involutions.
std::vector<Rational> exact_lis_distribution(int n, EnumKind kind,
                                             Statistic stat = Statistic::Increasing);

inline constexpr int kMaxEnumPermutation = 10;
inline constexpr int kMaxEnumInvolution = 12;

// Number of standard Young tableaux of shape lambda, |lambda|! / prod hooks.
// SizeLimit if the count does not fit in 64 bits.
std::uint64_t hook_length_count(const Partition& lambda);

enum class Group { Unitary, Orthogonal, Symplectic };

// Haar-distributed element. Unitary and Orthogonal are n x n; Symplectic is the
// 2n x 2n complex embedding with 2 x 2 blocks [[a, b], [-conj(b), conj(a)]].
Eigen::MatrixXcd haar_sample(Group group, int n, Rng& rng);

// J = diag([[0, 1], [-1, 0]], ...), the form preserved by the symplectic embedding.
Eigen::MatrixXcd symplectic_form(int n);

// Monte Carlo estimate of the group average of
//   U(n): exp(sqrt t Tr(U + U^*)),  Sp(n): exp(sqrt t Tr S),  O(n): exp(sqrt t Tr O),
// with Tr S the trace of the 2n x 2n embedding. DomainError unless 0 <= t <= 4.
McEstimate group_average(Group group, int n, double t, std::int64_t trials, RngSeed seed);

// The same averages from the Jack-parameter series:
//   U(n): 0F1^(1)(n; t 1_n),  Sp(n): 0F1^(1/2)(2n; t 1_n),  O(n): 0F1^(2)(n/2; (t/4) 1_n).
double group_average_series(Group group, int n, double t);

// Trials per independent stream.
inline constexpr std::int64_t kChunkTrials = 1 << 14;

} // namespace edgegap
