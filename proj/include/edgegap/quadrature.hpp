#pragma once

#include <vector>

namespace edgegap {

// Quadrature rule on (lo, hi): nodes strictly increasing and strictly inside,
// weights positive.
struct QuadGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    double lo = 0.0;
    double hi = 0.0;

    int size() const { return static_cast<int>(nodes.size()); }
};

// m-point Gauss-Legendre rule mapped to (lo, hi). Nodes come from Newton
// iteration on P_m started at the Tricomi approximation.
QuadGrid gauss_legendre(int m, double lo, double hi);

// Integral of f over [lo, hi] with a fixed-order Gauss-Legendre rule on
// `panels` equal panels.
template <typename F>
double composite_gauss(F&& f, double lo, double hi, int panels, int order = 20);

// ---------------------------------------------------------------------------

const QuadGrid& reference_gauss(int order); // cached rule on (-1, 1)

template <typename F>
double composite_gauss(F&& f, double lo, double hi, int panels, int order) {
    const QuadGrid& ref = reference_gauss(order);
    const double width = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * width;
        const double mid = a + 0.5 * width;
        double acc = 0.0;
        for (int k = 0; k < ref.size(); ++k) acc += ref.weights[k] * f(mid + 0.5 * width * ref.nodes[k]);
        total += 0.5 * width * acc;
    }
    return total;
}

} // namespace edgegap
