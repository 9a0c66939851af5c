#include "edgegap/montecarlo.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#include "edgegap/error.hpp"
#include "edgegap/hypergeom.hpp"
#include "edgegap/parallel.hpp"

namespace edgegap {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng make_stream(RngSeed seed, std::uint64_t stream) {
    return Rng(mix64(seed.value + (stream + 1) * 0x9e3779b97f4a7c15ULL));
}

namespace {

struct Kahan {
    double sum = 0.0;
    double c = 0.0;
    void add(double v) {
        const double y = v - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

struct Moments {
    Kahan s1, s2;
};

// Runs `trials` evaluations of trial(rng) over fixed chunks; chunk k always uses
// stream k and chunk sums are combined in chunk order.
template <typename Trial>
McEstimate run_trials(std::int64_t trials, RngSeed seed, Trial trial) {
    if (trials < 1) throw DomainError("trials must be positive");
    const std::int64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<Moments> parts(static_cast<std::size_t>(chunks));
    parallel_for(static_cast<int>(chunks), [&](int k) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(k));
        const std::int64_t begin = k * kChunkTrials;
        const std::int64_t end = std::min(trials, begin + kChunkTrials);
        Moments& m = parts[k];
        for (std::int64_t i = begin; i < end; ++i) {
            const double v = trial(rng);
            m.s1.add(v);
            m.s2.add(v * v);
        }
    });
    Kahan s1, s2;
    for (const auto& p : parts) {
        s1.add(p.s1.sum);
        s2.add(p.s2.sum);
    }
    const double n = static_cast<double>(trials);
    McEstimate est;
    est.mean = s1.sum / n;
    est.trials = trials;
    est.seed = seed;
    if (trials > 1) {
        const double var = std::max(0.0, (s2.sum - n * est.mean * est.mean) / (n - 1.0));
        est.std_error = std::sqrt(var / n);
    }
    return est;
}

} // namespace

int longest_chain(const PointSet& ps) {
    PointSet sorted = ps;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Point& p, const Point& q) {
        return p.x < q.x || (p.x == q.x && p.y > q.y);
    });
    std::vector<double> ys(sorted.size());
    std::transform(sorted.begin(), sorted.end(), ys.begin(), [](const Point& p) { return p.y; });
    return lis(ys);
}

std::vector<int> sample_permutation(int n, Rng& rng) {
    if (n < 0) throw DomainError("sample_permutation: n must be nonnegative");
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        std::uniform_int_distribution<int> pick(0, i);
        std::swap(p[i], p[pick(rng)]);
    }
    return p;
}

std::vector<int> sample_fpf_involution(int two_n, Rng& rng) {
    if (two_n < 0 || two_n % 2 != 0)
        throw DomainError("sample_fpf_involution: size must be even, got " + std::to_string(two_n));
    // Pair the last unpaired element with a uniform choice among the others.
    std::vector<int> rest(static_cast<std::size_t>(two_n));
    std::iota(rest.begin(), rest.end(), 0);
    std::vector<int> partner(static_cast<std::size_t>(two_n), -1);
    while (!rest.empty()) {
        const int i = rest.back();
        rest.pop_back();
        std::uniform_int_distribution<std::size_t> pick(0, rest.size() - 1);
        const std::size_t k = pick(rng);
        const int j = rest[k];
        partner[i] = j;
        partner[j] = i;
        rest[k] = rest.back();
        rest.pop_back();
    }
    return partner;
}

PointSet sample_points(Shape shape, double t, Rng& rng) {
    PointSet ps;
    if (shape == Shape::Square) {
        std::poisson_distribution<int> count(t);
        const int n = count(rng);
        ps.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double x = uniform01(rng);
            ps.push_back({x, uniform01(rng)});
        }
        return ps;
    }
    std::poisson_distribution<int> count(t / 2.0);
    const int m = count(rng);
    ps.reserve(2 * static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        double u = uniform01(rng), v = uniform01(rng);
        if (shape == Shape::AntiDiagonal) {
            if (u + v > 1.0) {
                u = 1.0 - u;
                v = 1.0 - v;
            }
            ps.push_back({u, v});
            ps.push_back({1.0 - v, 1.0 - u});
        } else {
            if (v > u) std::swap(u, v);
            ps.push_back({u, v});
            ps.push_back({v, u});
        }
    }
    return ps;
}

McEstimate poissonized_lis_cdf(Shape shape, double t, int l, std::int64_t trials, RngSeed seed) {
    if (!(t > 0.0)) throw DomainError("poissonized_lis_cdf: t must be positive");
    if (l < 0) throw DomainError("poissonized_lis_cdf: l must be nonnegative");
    return run_trials(trials, seed, [&](Rng& rng) {
        return longest_chain(sample_points(shape, t, rng)) <= l ? 1.0 : 0.0;
    });
}

namespace {

int longest_run(const std::vector<int>& p, Statistic stat) {
    if (stat == Statistic::Increasing) return lis(p);
    std::vector<int> neg(p.size());
    std::transform(p.begin(), p.end(), neg.begin(), [](int v) { return -v; });
    return lis(neg);
}

void enumerate_involutions(std::vector<int>& partner, int n, Statistic stat,
                           std::vector<std::int64_t>& counts) {
    int i = 0;
    while (i < n && partner[i] >= 0) ++i;
    if (i == n) {
        ++counts[static_cast<std::size_t>(longest_run(partner, stat))];
        return;
    }
    for (int j = i + 1; j < n; ++j) {
        if (partner[j] >= 0) continue;
        partner[i] = j;
        partner[j] = i;
        enumerate_involutions(partner, n, stat, counts);
        partner[i] = partner[j] = -1;
    }
}

} // namespace

std::vector<Rational> exact_lis_distribution(int n, EnumKind kind, Statistic stat) {
    if (n < 1) throw DomainError("exact_lis_distribution: n must be positive");
    std::vector<std::int64_t> counts(static_cast<std::size_t>(n + 1), 0);
    if (kind == EnumKind::Permutation) {
        if (n > kMaxEnumPermutation)
            throw SizeLimit("exact_lis_distribution: permutations limited to n <= 10");
        std::vector<int> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 0);
        do {
            ++counts[static_cast<std::size_t>(longest_run(p, stat))];
        } while (std::next_permutation(p.begin(), p.end()));
    } else {
        if (n % 2 != 0) throw DomainError("exact_lis_distribution: involutions need even n");
        if (n > kMaxEnumInvolution)
            throw SizeLimit("exact_lis_distribution: involutions limited to n <= 12");
        std::vector<int> partner(static_cast<std::size_t>(n), -1);
        enumerate_involutions(partner, n, stat, counts);
    }
    const std::int64_t total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    std::vector<Rational> cdf;
    std::int64_t running = 0;
    for (int l = 1; l <= n; ++l) {
        running += counts[static_cast<std::size_t>(l)];
        cdf.emplace_back(running, total);
    }
    return cdf;
}

std::uint64_t hook_length_count(const Partition& lambda) {
    std::vector<unsigned __int128> hooks;
    for (int i = 0; i < lambda.length(); ++i)
        for (int j = 0; j < lambda[static_cast<std::size_t>(i)]; ++j)
            hooks.push_back(static_cast<unsigned __int128>(lambda.arm(i, j) + lambda.leg(i, j) + 1));
    // n! / prod hooks with cancellation after each factor.
    unsigned __int128 f = 1;
    const auto limit = ~static_cast<unsigned __int128>(0) / 64;
    for (int k = 1; k <= lambda.weight(); ++k) {
        f *= static_cast<unsigned>(k);
        for (auto& h : hooks) {
            if (h == 1) continue;
            unsigned __int128 a = f, b = h;
            while (b != 0) {
                const auto r = a % b;
                a = b;
                b = r;
            }
            f /= a;
            h /= a;
        }
        if (f > limit) throw SizeLimit("hook_length_count: intermediate overflow");
    }
    if (f > std::numeric_limits<std::uint64_t>::max())
        throw SizeLimit("hook_length_count: result exceeds 64 bits");
    return static_cast<std::uint64_t>(f);
}

namespace {

using cd = std::complex<double>;

// QR of a Ginibre matrix with the phases of diag(R) moved into Q.
Eigen::MatrixXcd haar_from_ginibre(const Eigen::MatrixXcd& g) {
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < g.cols(); ++k) {
        const cd d = r(k, k);
        const double mag = std::abs(d);
        q.col(k) *= mag > 0.0 ? d / mag : cd(1.0);
    }
    return q;
}

Eigen::MatrixXcd haar_symplectic(int n, Rng& rng) {
    std::normal_distribution<double> gauss;
    const int dim = 2 * n;
    Eigen::MatrixXcd s(dim, dim);
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXcd v(dim);
        for (int i = 0; i < dim; ++i) {
            const double re = gauss(rng);
            v[i] = cd(re, gauss(rng));
        }
        // Two passes of Gram-Schmidt against every earlier column.
        for (int pass = 0; pass < 2; ++pass)
            for (int c = 0; c < 2 * k; ++c) v -= s.col(c).dot(v) * s.col(c);
        v.normalize();
        s.col(2 * k) = v;
        // Quaternion partner: (p, q) -> (-conj q, conj p) in each 2-block.
        for (int b = 0; b < n; ++b) {
            s(2 * b, 2 * k + 1) = -std::conj(v[2 * b + 1]);
            s(2 * b + 1, 2 * k + 1) = std::conj(v[2 * b]);
        }
    }
    return s;
}

} // namespace

Eigen::MatrixXcd haar_sample(Group group, int n, Rng& rng) {
    if (n < 1) throw DomainError("haar_sample: n must be positive");
    std::normal_distribution<double> gauss;
    switch (group) {
    case Group::Unitary: {
        Eigen::MatrixXcd g(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const double re = gauss(rng);
                g(i, j) = cd(re, gauss(rng));
            }
        return haar_from_ginibre(g);
    }
    case Group::Orthogonal: {
        Eigen::MatrixXd g(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) g(i, j) = gauss(rng);
        return haar_from_ginibre(g.cast<cd>());
    }
    case Group::Symplectic: return haar_symplectic(n, rng);
    }
    throw DomainError("haar_sample: unknown group");
}

Eigen::MatrixXcd symplectic_form(int n) {
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (int b = 0; b < n; ++b) {
        j(2 * b, 2 * b + 1) = 1.0;
        j(2 * b + 1, 2 * b) = -1.0;
    }
    return j;
}

McEstimate group_average(Group group, int n, double t, std::int64_t trials, RngSeed seed) {
    if (!(t >= 0.0 && t <= 4.0)) throw DomainError("group_average: need 0 <= t <= 4");
    if (n < 1) throw DomainError("group_average: n must be positive");
    if (t == 0.0) {
        if (trials < 1) throw DomainError("trials must be positive");
        return {1.0, 0.0, trials, seed};
    }
    const double rt = std::sqrt(t);
    return run_trials(trials, seed, [&](Rng& rng) {
        const cd tr = haar_sample(group, n, rng).trace();
        // Tr(U + U^*) = 2 Re Tr U; the O and Sp traces are real.
        const double x = group == Group::Unitary ? 2.0 * tr.real() : tr.real();
        return std::exp(rt * x);
    });
}

double group_average_series(Group group, int n, double t) {
    if (n < 1) throw DomainError("group_average_series: n must be positive");
    if (t == 0.0) return 1.0;
    switch (group) {
    case Group::Unitary: return hyp0f1_equal(AlphaParam(1.0), n, n, t).value;
    case Group::Symplectic: return hyp0f1_equal(AlphaParam(0.5), 2.0 * n, n, t).value;
    case Group::Orthogonal: return hyp0f1_equal(AlphaParam(2.0), n / 2.0, n, t / 4.0).value;
    }
    throw DomainError("group_average_series: unknown group");
}

} // namespace edgegap
