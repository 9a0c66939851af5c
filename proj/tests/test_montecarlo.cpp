#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <map>

#include <boost/math/distributions/chi_squared.hpp>

#include "edgegap/error.hpp"
#include "edgegap/fredholm.hpp"
#include "edgegap/hypergeom.hpp"
#include "edgegap/montecarlo.hpp"

using namespace edgegap;

namespace {

template <typename T>
int lis_quadratic(const std::vector<T>& v) {
    std::vector<int> best(v.size(), 1);
    int top = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (v[j] < v[i]) best[i] = std::max(best[i], best[j] + 1);
        top = std::max(top, best[i]);
    }
    return top;
}

int chain_quadratic(const PointSet& ps) {
    std::vector<int> best(ps.size(), 1);
    int top = 0;
    // longest chain ending at i, by repeated relaxation over a topological order
    std::vector<std::size_t> order(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ps[a].x < ps[b].x; });
    for (std::size_t ii = 0; ii < order.size(); ++ii) {
        const auto i = order[ii];
        for (std::size_t jj = 0; jj < ii; ++jj) {
            const auto j = order[jj];
            if (ps[j].x < ps[i].x && ps[j].y < ps[i].y) best[i] = std::max(best[i], best[j] + 1);
        }
        top = std::max(top, best[i]);
    }
    return top;
}

double chi2_pvalue(const std::vector<long>& counts, long draws) {
    const double expected = double(draws) / counts.size();
    double stat = 0.0;
    for (long c : counts) stat += (c - expected) * (c - expected) / expected;
    boost::math::chi_squared dist(double(counts.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

double catalan(int n) { return factorial(2 * n) / (factorial(n) * factorial(n + 1)); }

// sum_{M <= 6} Poisson(M; mean) Pr(L_{2M} <= threshold) over fixed-point-free involutions.
double poissonized_involution_cdf(double mean, int threshold, Statistic stat) {
    double total = 0.0, weight = std::exp(-mean);
    for (int M = 0; M <= 6; ++M) {
        if (M > 0) weight *= mean / M;
        double p = 1.0;
        if (M > 0) {
            const auto cdf = exact_lis_distribution(2 * M, EnumKind::FpfInvolution, stat);
            if (threshold < 2 * M) p = boost::rational_cast<double>(cdf[threshold - 1]);
        }
        total += weight * p;
    }
    return total;
}

double poisson_tail_after6(double mean) {
    double weight = std::exp(-mean), head = weight;
    for (int M = 1; M <= 6; ++M) head += (weight *= mean / M);
    return 1.0 - head;
}

} // namespace

TEST_CASE("longest increasing subsequence") {
    CHECK(lis(std::vector<int>{}) == 0);
    CHECK(lis(std::vector<int>{3, 1, 2}) == 2);
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        const auto p = sample_permutation(1000, rng);
        CHECK(lis(p) == lis_quadratic(p));
    }
}

TEST_CASE("longest chain") {
    CHECK(longest_chain({}) == 0);
    PointSet stair;
    for (int k = 0; k < 9; ++k) stair.push_back({0.1 * k, 0.05 + 0.1 * k});
    CHECK(longest_chain(stair) == 9);
    // equal x never chains
    CHECK(longest_chain({{0.5, 0.1}, {0.5, 0.2}, {0.5, 0.3}}) == 1);
    Rng rng(12);
    for (int rep = 0; rep < 5; ++rep) {
        PointSet ps;
        for (int i = 0; i < 1000; ++i) {
            const double x = uniform01(rng);
            ps.push_back({x, uniform01(rng)});
        }
        CHECK(longest_chain(ps) == chain_quadratic(ps));
    }
}

TEST_CASE("samplers") {
    Rng rng(13);
    CHECK(sample_permutation(1, rng) == std::vector<int>{0});
    CHECK(sample_fpf_involution(2, rng) == std::vector<int>{1, 0});
    CHECK_THROWS_AS(sample_fpf_involution(5, rng), DomainError);
    for (int rep = 0; rep < 50; ++rep) {
        const auto inv = sample_fpf_involution(40, rng);
        for (int i = 0; i < 40; ++i) {
            CHECK(inv[i] != i);
            CHECK(inv[inv[i]] == i);
        }
    }

    const long draws = 1000000;
    std::map<std::vector<int>, long> perm_counts, inv_counts;
    for (long d = 0; d < draws; ++d) {
        ++perm_counts[sample_permutation(4, rng)];
        ++inv_counts[sample_fpf_involution(6, rng)];
    }
    CHECK(perm_counts.size() == 24);
    CHECK(inv_counts.size() == 15);
    std::vector<long> pc, ic;
    for (const auto& [k, v] : perm_counts) pc.push_back(v);
    for (const auto& [k, v] : inv_counts) ic.push_back(v);
    CHECK(chi2_pvalue(pc, draws) > 1e-6);
    CHECK(chi2_pvalue(ic, draws) > 1e-6);
}

TEST_CASE("exact enumeration") {
    const auto p3 = exact_lis_distribution(3, EnumKind::Permutation);
    CHECK(p3 == std::vector<Rational>{Rational(1, 6), Rational(5, 6), Rational(1)});
    CHECK(exact_lis_distribution(4, EnumKind::Permutation)[1] == Rational(14, 24));
    // (12)(34) -> 2143, (13)(24) -> 3412, (14)(23) -> 4321
    const auto i4 = exact_lis_distribution(4, EnumKind::FpfInvolution);
    CHECK(i4 == std::vector<Rational>{Rational(1, 3), Rational(1), Rational(1), Rational(1)});
    CHECK_THROWS_AS(exact_lis_distribution(11, EnumKind::Permutation), SizeLimit);
    CHECK_THROWS_AS(exact_lis_distribution(14, EnumKind::FpfInvolution), SizeLimit);
    CHECK_THROWS_AS(exact_lis_distribution(5, EnumKind::FpfInvolution), DomainError);
    for (int n = 2; n <= 8; ++n)
        CHECK(exact_lis_distribution(n, EnumKind::Permutation)[1] ==
              Rational(static_cast<std::int64_t>(catalan(n)), static_cast<std::int64_t>(factorial(n))));
    // decreasing subsequences of fixed-point-free involutions have even length
    const auto d8 = exact_lis_distribution(8, EnumKind::FpfInvolution, Statistic::Decreasing);
    for (int l = 2; l < 8; l += 2) CHECK(d8[l - 1] == d8[l]);
}

TEST_CASE("hook lengths and RSK") {
    CHECK(hook_length_count(Partition({5})) == 1);
    CHECK(hook_length_count(Partition({2, 1})) == 2);
    CHECK(hook_length_count(Partition({10, 10})) == 16796);
    CHECK(hook_length_count(Partition()) == 1);
    for (int n = 1; n <= 8; ++n) {
        double total = 0.0;
        for (const auto& lam : iter_partitions(n, n)) total += std::pow(double(hook_length_count(lam)), 2);
        CHECK(total == factorial(n));
        const auto exact = exact_lis_distribution(n, EnumKind::Permutation);
        for (int l = 1; l <= n; ++l) {
            std::int64_t rsk = 0;
            for (const auto& lam : iter_partitions(n, l)) {
                const auto f = static_cast<std::int64_t>(hook_length_count(lam));
                rsk += f * f;
            }
            CHECK(exact[l - 1] * static_cast<std::int64_t>(factorial(n)) == Rational(rsk));
        }
    }
}

TEST_CASE("Poissonized square model") {
    const auto huge = poissonized_lis_cdf(Shape::Square, 1.0, 30, 20000, {1});
    CHECK(huge.mean == 1.0);
    CHECK(huge.std_error == 0.0);

    double cat_sum = 0.0;
    for (int n = 0; n <= 25; ++n) cat_sum += catalan(n) / (factorial(n) * factorial(n));
    const auto l2 = poissonized_lis_cdf(Shape::Square, 1.0, 2, 1000000, {2});
    CHECK(std::abs(l2.mean - std::exp(-1.0) * cat_sum) < 4 * l2.std_error);

    const auto l1 = poissonized_lis_cdf(Shape::Square, 1.0, 1, 1000000, {3});
    CHECK(std::abs(l1.mean - std::exp(-1.0) * std::cyl_bessel_i(0.0, 2.0)) < 4 * l1.std_error);

    const auto p = poissonized_lis_cdf(Shape::Square, 1.0, 2, 400000, {4});
    CHECK(std::abs(p.mean - e2_hard(4.0, 2).value) < 4 * p.std_error);
    CHECK_THROWS_AS(poissonized_lis_cdf(Shape::Square, 1.0, 2, 0, {4}), DomainError);
    CHECK_THROWS_AS(poissonized_lis_cdf(Shape::Square, 0.0, 2, 10, {4}), DomainError);
}

TEST_CASE("symmetric models against exact involution sums") {
    // Pr(L <= l) in the symmetric models is a Poisson(t/2) mixture over
    // involution statistics; checked against exhaustive enumeration.
    const double tau = 1.0;
    const auto anti = poissonized_lis_cdf(Shape::AntiDiagonal, tau, 2, 1000000, {5});
    CHECK(std::abs(anti.mean - poissonized_involution_cdf(tau / 2, 2, Statistic::Decreasing)) <
          4 * anti.std_error);
    const auto diag = poissonized_lis_cdf(Shape::Diagonal, tau, 1, 1000000, {6});
    CHECK(std::abs(diag.mean - poissonized_involution_cdf(tau / 2, 1, Statistic::Increasing)) <
          4 * diag.std_error);

    // Exact gap-probability identities with the chain threshold doubled:
    //   Pr(L_antidiag(t/4) <= 2l) = E1(t; l),  Pr(L_diag(t/4) <= k) = E4(t; k).
    // k = 1 uses the order-0 kernel (index -1/2).
    const double tail = poisson_tail_after6(tau / 2);
    for (int l = 1; l <= 2; ++l)
        CHECK(std::abs(poissonized_involution_cdf(tau / 2, 2 * l, Statistic::Decreasing) -
                       e1_hard(4 * tau, l).value) <= tail + 1e-12);
    for (int k = 1; k <= 5; ++k)
        CHECK(std::abs(poissonized_involution_cdf(tau / 2, k, Statistic::Increasing) -
                       e4_hard(4 * tau, k - 1).value) <= tail + 1e-12);
}

TEST_CASE("involution generating-function normalisation") {
    // Poisson picture: e^{-t/2} sum_N t^N c_N / (2N)!, c_N = #{involutions of 2N with L <= l}.
    // The printed form with Pr(L_{2N} <= l) in place of 2^N c_N is a different series.
    const double t = 1.0;
    const int l = 2;
    double geometric = 0.0, counts_form = 0.0, printed = 0.0, weight = std::exp(-t / 2);
    for (int N = 0; N <= 6; ++N) {
        if (N > 0) weight *= t / 2 / N;
        double pr = 1.0, c = 1.0;
        if (N > 0) {
            const auto cdf = exact_lis_distribution(2 * N, EnumKind::FpfInvolution, Statistic::Decreasing);
            pr = l - 1 < 2 * N ? boost::rational_cast<double>(cdf[l - 1]) : 1.0;
            c = pr * factorial(2 * N) / (std::pow(2.0, N) * factorial(N));
        }
        geometric += weight * pr;
        counts_form += std::exp(-t / 2) * std::pow(t, N) * c / factorial(2 * N);
        printed += std::exp(-t / 2) * std::pow(t, N) / std::pow(2.0, N) * pr / factorial(2 * N);
    }
    CHECK(counts_form == doctest::Approx(geometric).epsilon(1e-14));
    CHECK(std::abs(printed - geometric) > 1e-2);
}

TEST_CASE("Haar samplers") {
    Rng rng(21);
    for (int n : {1, 3, 6}) {
        const auto u = haar_sample(Group::Unitary, n, rng);
        CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
        const auto o = haar_sample(Group::Orthogonal, n, rng);
        CHECK(o.imag().cwiseAbs().maxCoeff() == 0.0);
        CHECK((o.transpose() * o - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
        const auto s = haar_sample(Group::Symplectic, n, rng);
        const auto J = symplectic_form(n);
        CHECK((s.transpose() * J * s - J).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((s.adjoint() * s - Eigen::MatrixXcd::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() < 1e-12);
    }
    // first column of O(4) uniform on the sphere: E[o_11] = 0, Var = 1/4
    const int draws = 100000;
    double sum = 0.0;
    for (int d = 0; d < draws; ++d) sum += haar_sample(Group::Orthogonal, 4, rng)(0, 0).real();
    CHECK(std::abs(sum / draws) < 4 * std::sqrt(0.25 / draws));
    // U(2): |u_11|^2 is uniform on (0, 1), mean 1/2 with variance 1/12
    double m2 = 0.0;
    for (int d = 0; d < draws; ++d) m2 += std::norm(haar_sample(Group::Unitary, 2, rng)(0, 0));
    CHECK(std::abs(m2 / draws - 0.5) < 4 * std::sqrt(1.0 / 12 / draws));
}

TEST_CASE("group averages") {
    for (double t : {0.2, 1.0, 3.0})
        CHECK(group_average_series(Group::Unitary, 1, t) ==
              doctest::Approx(std::cyl_bessel_i(0.0, 2 * std::sqrt(t))).epsilon(1e-13));
    CHECK(group_average_series(Group::Orthogonal, 1, 0.7) == doctest::Approx(std::cosh(std::sqrt(0.7))));
    // SU(2) = Sp(1): average of exp(sqrt t * 2 cos theta) is I_1(2 sqrt t) / sqrt t
    CHECK(group_average_series(Group::Symplectic, 1, 0.9) ==
          doctest::Approx(std::cyl_bessel_i(1.0, 2 * std::sqrt(0.9)) / std::sqrt(0.9)).epsilon(1e-13));

    const auto zero = group_average(Group::Symplectic, 2, 0.0, 100, {1});
    CHECK(zero.mean == 1.0);
    CHECK(zero.std_error == 0.0);
    CHECK_THROWS_AS(group_average(Group::Unitary, 2, 5.0, 100, {1}), DomainError);

    const auto u1 = group_average(Group::Unitary, 1, 0.8, 200000, {31});
    CHECK(std::abs(u1.mean - std::cyl_bessel_i(0.0, 2 * std::sqrt(0.8))) < 4 * u1.std_error);
    for (auto [g, n] : {std::pair{Group::Unitary, 3}, {Group::Symplectic, 2}, {Group::Orthogonal, 4}}) {
        const auto e = group_average(g, n, 0.5, 200000, {32});
        CHECK(std::abs(e.mean - group_average_series(g, n, 0.5)) < 4 * e.std_error);
    }
}

TEST_CASE("reproducibility and error scaling") {
    const auto a = poissonized_lis_cdf(Shape::Diagonal, 2.0, 2, 100000, {77});
    const auto b = poissonized_lis_cdf(Shape::Diagonal, 2.0, 2, 100000, {77});
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.seed.value == 77);
    CHECK(a.trials == 100000);

    setenv("EDGEGAP_THREADS", "1", 1);
    const auto one = group_average(Group::Orthogonal, 3, 1.0, 70000, {5});
    setenv("EDGEGAP_THREADS", "3", 1);
    const auto three = group_average(Group::Orthogonal, 3, 1.0, 70000, {5});
    unsetenv("EDGEGAP_THREADS");
    CHECK(one.mean == three.mean);

    const auto small = poissonized_lis_cdf(Shape::Square, 2.0, 2, 200000, {8});
    const auto big = poissonized_lis_cdf(Shape::Square, 2.0, 2, 400000, {9});
    const double ratio = (big.std_error * big.std_error) / (small.std_error * small.std_error);
    CHECK(ratio == doctest::Approx(0.5).epsilon(0.05));
}
