#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace edgegap {

enum class KernelFamily { BesselBeta2, BesselBeta1, AiryBeta2, AiryBeta1 };

// Which limiting kernel an operator refers to. Bessel families carry the order a.
class KernelSpec {
public:
    static KernelSpec bessel_beta2(int order);
    static KernelSpec bessel_beta1(int order);
    static KernelSpec airy_beta2() { return KernelSpec(KernelFamily::AiryBeta2, std::nullopt); }
    static KernelSpec airy_beta1() { return KernelSpec(KernelFamily::AiryBeta1, std::nullopt); }

    KernelFamily family() const { return family_; }
    std::optional<int> order() const { return order_; }
    bool is_bessel() const {
        return family_ == KernelFamily::BesselBeta2 || family_ == KernelFamily::BesselBeta1;
    }
    bool is_symmetric() const {
        return family_ == KernelFamily::BesselBeta2 || family_ == KernelFamily::AiryBeta2;
    }
    std::string name() const;

private:
    KernelSpec(KernelFamily f, std::optional<int> order) : family_(f), order_(order) {}
    KernelFamily family_;
    std::optional<int> order_;
};

// Relative separation below which the diagonal closed forms replace the
// divided-difference formulas.
inline constexpr double kDiagonalDelta = 1e-6;

// Hard-edge Bessel kernel, beta = 2:
//   [J_a(sqrt x) sqrt y J_a'(sqrt y) - sqrt x J_a'(sqrt x) J_a(sqrt y)] / (2 (x - y)),
// diagonal (J_a^2 - J_{a+1} J_{a-1}) / 4 at sqrt x.
double k2_bessel(int a, double x, double y);
double k2_bessel_diagonal(int a, double x);

// Hard-edge kernel for beta = 1 (not symmetric):
//   sqrt(y/x) K2(x, y) + J_a(sqrt x) / (2 sqrt x) * (1 - int_0^{sqrt y} J_a).
double k1_bessel(int a, double x, double y);

// Soft-edge Airy kernel [Ai(x) Ai'(y) - Ai(y) Ai'(x)] / (x - y), diagonal Ai'^2 - x Ai^2.
double k2_airy(double x, double y);
double k2_airy_diagonal(double x);

// K2_airy(x, y) + Ai(x) (1 - int_y^inf Ai); not symmetric.
double k1_airy(double x, double y);

double evaluate_kernel(const KernelSpec& spec, double x, double y);

// Bessel kernel in soft-edge coordinates, Q_a(x) = (a - (a/2)^{1/3} x)^2:
//   sqrt(|Q_a'(x)| |Q_a'(y)|) K(Q_a(x), Q_a(y)).
// Tends to the matching Airy kernel as a grows. DomainError unless Q_a > 0 at
// both points.
double soft_scaled_kernel(const KernelSpec& bessel, int a, double x, double y);

// Special-function values tabulated once per node so that an m x m kernel
// matrix costs O(m) special-function calls.
class KernelTable {
public:
    KernelTable(const KernelSpec& spec, std::span<const double> nodes);

    int size() const { return static_cast<int>(x_.size()); }
    double operator()(int i, int j) const;

private:
    double k2(int i, int j) const;

    KernelSpec spec_;
    std::vector<double> x_;
    std::vector<double> f_;     // J_a(sqrt x) or Ai(x)
    std::vector<double> fp_;    // J_a'(sqrt x) or Ai'(x)
    std::vector<double> diag_;  // K2 on the diagonal
    std::vector<double> tail_;  // 1 - int_0^{sqrt x} J_a  or  1 - int_x^inf Ai (beta = 1 only)
};

} // namespace edgegap
