#include "edgegap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "edgegap/error.hpp"
#include "edgegap/quadrature.hpp"
#include "edgegap/specfun.hpp"

namespace edgegap {

KernelSpec KernelSpec::bessel_beta2(int order) {
    if (order < 0) throw DomainError("Bessel kernel order must be nonnegative");
    return KernelSpec(KernelFamily::BesselBeta2, order);
}

KernelSpec KernelSpec::bessel_beta1(int order) {
    if (order < 0) throw DomainError("Bessel kernel order must be nonnegative");
    return KernelSpec(KernelFamily::BesselBeta1, order);
}

std::string KernelSpec::name() const {
    switch (family_) {
    case KernelFamily::BesselBeta2: return "bessel_beta2(a=" + std::to_string(*order_) + ")";
    case KernelFamily::BesselBeta1: return "bessel_beta1(a=" + std::to_string(*order_) + ")";
    case KernelFamily::AiryBeta2: return "airy_beta2";
    case KernelFamily::AiryBeta1: return "airy_beta1";
    }
    return "unknown";
}

namespace {

struct BesselPoint {
    double u, j, jp, jm1, jp1;
};

BesselPoint bessel_point(int a, double x) {
    const double u = std::sqrt(x);
    if (a == 0) {
        const auto v = bessel_j_range(0, 1, u);
        return {u, v[0], -v[1], -v[1], v[1]};
    }
    const auto v = bessel_j_range(a - 1, a + 1, u);
    return {u, v[1], 0.5 * (v[0] - v[2]), v[0], v[2]};
}

void require_positive(double x, double y, const char* who) {
    if (!(x > 0.0) || !(y > 0.0))
        throw DomainError(std::string(who) + ": arguments must be positive");
}

bool near_diagonal(double x, double y, double scale) {
    return std::abs(x - y) <= kDiagonalDelta * scale;
}

} // namespace

double k2_bessel_diagonal(int a, double x) {
    const auto p = bessel_point(a, x);
    return 0.25 * (p.j * p.j - p.jp1 * p.jm1);
}

double k2_bessel(int a, double x, double y) {
    require_positive(x, y, "k2_bessel");
    if (x > y) std::swap(x, y);  // bitwise symmetric
    // Symmetric in (x, y), so the midpoint diagonal value is accurate to O((x-y)^2).
    if (near_diagonal(x, y, std::max(x, y))) return k2_bessel_diagonal(a, 0.5 * (x + y));
    const auto px = bessel_point(a, x);
    const auto py = bessel_point(a, y);
    return (px.j * py.u * py.jp - px.u * px.jp * py.j) / (2.0 * (x - y));
}

double k1_bessel(int a, double x, double y) {
    require_positive(x, y, "k1_bessel");
    const double u = std::sqrt(x);
    const double tail = 1.0 - bessel_j_integral(a, std::sqrt(y));
    return std::sqrt(y / x) * k2_bessel(a, x, y) + bessel_j(a, u) / (2.0 * u) * tail;
}

double k2_airy_diagonal(double x) {
    const auto p = airy(x);
    return p.aip * p.aip - x * p.ai * p.ai;
}

double k2_airy(double x, double y) {
    if (x > y) std::swap(x, y);
    if (near_diagonal(x, y, std::max({1.0, std::abs(x), std::abs(y)})))
        return k2_airy_diagonal(0.5 * (x + y));
    const auto px = airy(x);
    const auto py = airy(y);
    return (px.ai * py.aip - py.ai * px.aip) / (x - y);
}

double k1_airy(double x, double y) { return k2_airy(x, y) + airy_ai(x) * (1.0 - airy_tail(y)); }

double evaluate_kernel(const KernelSpec& spec, double x, double y) {
    switch (spec.family()) {
    case KernelFamily::BesselBeta2: return k2_bessel(*spec.order(), x, y);
    case KernelFamily::BesselBeta1: return k1_bessel(*spec.order(), x, y);
    case KernelFamily::AiryBeta2: return k2_airy(x, y);
    case KernelFamily::AiryBeta1: return k1_airy(x, y);
    }
    throw DomainError("unknown kernel family");
}

double soft_scaled_kernel(const KernelSpec& bessel, int a, double x, double y) {
    if (!bessel.is_bessel()) throw DomainError("soft_scaled_kernel: needs a Bessel kernel");
    if (a < 1) throw DomainError("soft_scaled_kernel: a must be positive");
    const double c = std::cbrt(a / 2.0);
    const double ux = a - c * x, uy = a - c * y;
    if (!(ux > 0.0) || !(uy > 0.0))
        throw DomainError("soft_scaled_kernel: points lie beyond the turning point");
    // |Q_a'(x)| = 2c (a - c x)
    return 2.0 * c * std::sqrt(ux * uy) * evaluate_kernel(bessel, ux * ux, uy * uy);
}

KernelTable::KernelTable(const KernelSpec& spec, std::span<const double> nodes)
    : spec_(spec), x_(nodes.begin(), nodes.end()) {
    const std::size_t m = x_.size();
    f_.resize(m);
    fp_.resize(m);
    diag_.resize(m);
    const bool beta1 = spec.family() == KernelFamily::BesselBeta1 ||
                       spec.family() == KernelFamily::AiryBeta1;

    if (spec.is_bessel()) {
        const int a = *spec.order();
        for (std::size_t i = 0; i < m; ++i) {
            if (!(x_[i] > 0.0)) throw DomainError("Bessel kernel nodes must be positive");
            const auto p = bessel_point(a, x_[i]);
            f_[i] = p.j;
            fp_[i] = p.jp;
            diag_[i] = 0.25 * (p.j * p.j - p.jp1 * p.jm1);
        }
    } else {
        for (std::size_t i = 0; i < m; ++i) {
            const auto p = airy(x_[i]);
            f_[i] = p.ai;
            fp_[i] = p.aip;
            diag_[i] = p.aip * p.aip - x_[i] * p.ai * p.ai;
        }
    }
    if (!beta1 || m == 0) return;

    // Cumulative integrals between consecutive sorted nodes.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto l, auto r) { return x_[l] < x_[r]; });
    tail_.resize(m);
    if (spec.is_bessel()) {
        const int a = *spec.order();
        auto ja = [a](double t) { return bessel_j(a, t); };
        double prev_u = std::sqrt(x_[order[0]]);
        double integral = bessel_j_integral(a, prev_u);
        tail_[order[0]] = 1.0 - integral;
        for (std::size_t k = 1; k < m; ++k) {
            const double u = std::sqrt(x_[order[k]]);
            if (u > prev_u) {
                const int panels = static_cast<int>(std::ceil((u - prev_u) / 2.0));
                integral += composite_gauss(ja, prev_u, u, panels);
            }
            tail_[order[k]] = 1.0 - integral;
            prev_u = u;
        }
    } else {
        auto ai = [](double t) { return airy_ai(t); };
        double prev = x_[order[m - 1]];
        double tail = airy_tail(prev);
        tail_[order[m - 1]] = 1.0 - tail;
        for (std::size_t k = m - 1; k-- > 0;) {
            const double x = x_[order[k]];
            if (x < prev) {
                const int panels = static_cast<int>(std::ceil(prev - x));
                tail += composite_gauss(ai, x, prev, panels);
            }
            tail_[order[k]] = 1.0 - tail;
            prev = x;
        }
    }
}

double KernelTable::k2(int i, int j) const {
    if (x_[i] > x_[j]) std::swap(i, j);
    const double x = x_[i], y = x_[j];
    if (spec_.is_bessel()) {
        if (i == j) return diag_[i];
        if (near_diagonal(x, y, std::max(x, y)))
            return k2_bessel_diagonal(*spec_.order(), 0.5 * (x + y));
        const double ux = std::sqrt(x), uy = std::sqrt(y);
        return (f_[i] * uy * fp_[j] - ux * fp_[i] * f_[j]) / (2.0 * (x - y));
    }
    if (i == j) return diag_[i];
    if (near_diagonal(x, y, std::max({1.0, std::abs(x), std::abs(y)})))
        return k2_airy_diagonal(0.5 * (x + y));
    return (f_[i] * fp_[j] - f_[j] * fp_[i]) / (x - y);
}

double KernelTable::operator()(int i, int j) const {
    switch (spec_.family()) {
    case KernelFamily::BesselBeta2:
    case KernelFamily::AiryBeta2: return k2(i, j);
    case KernelFamily::BesselBeta1: {
        const double ux = std::sqrt(x_[i]);
        return std::sqrt(x_[j] / x_[i]) * k2(i, j) + f_[i] / (2.0 * ux) * tail_[j];
    }
    case KernelFamily::AiryBeta1: return k2(i, j) + f_[i] * tail_[j];
    }
    return 0.0;
}

} // namespace edgegap
