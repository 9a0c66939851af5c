#include "edgegap/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "edgegap/error.hpp"

namespace edgegap {

QuadGrid gauss_legendre(int m, double lo, double hi) {
    if (m < 1) throw DomainError("gauss_legendre: m must be positive");
    if (!(lo < hi)) throw DomainError("gauss_legendre: need lo < hi");

    std::vector<double> x(static_cast<std::size_t>(m)), w(static_cast<std::size_t>(m));
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Three-term recurrence for P_m(z) and P_{m-1}(z).
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= m; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double pm = m == 1 ? z : p1;
            const double pm1 = m == 1 ? 1.0 : p0;
            dp = m * (z * pm - pm1) / (z * z - 1.0);
            const double dz = pm / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // Refresh the derivative at the converged root.
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= m; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = m == 1 ? 1.0 : m * (z * p1 - p0) / (z * z - 1.0);
        const double wt = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[m - 1 - i] = z;
        w[i] = w[m - 1 - i] = wt;
    }
    if (m % 2 == 1) x[m / 2] = 0.0;

    QuadGrid g;
    g.lo = lo;
    g.hi = hi;
    g.nodes.resize(x.size());
    g.weights.resize(w.size());
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (int i = 0; i < m; ++i) {
        g.nodes[i] = mid + half * x[i];
        g.weights[i] = half * w[i];
    }
    return g;
}

const QuadGrid& reference_gauss(int order) {
    static std::mutex mu;
    static std::map<int, QuadGrid> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, gauss_legendre(order, -1.0, 1.0)).first;
    return it->second;
}

} // namespace edgegap
