#pragma once

#include <vector>

namespace edgegap {

struct SpecFunConfig {
    // |x| at which Airy switches from the Maclaurin pair to the other branches.
    double series_cutoff = 6.0;
    // Upper limit used in place of +infinity for integrals of Ai.
    double tail_cut = 16.0;
    // Extra orders added above the turning point when starting Miller's recurrence.
    int miller_start_offset = 20;
};

// Bessel J of nonnegative integer order. Maclaurin series for
// x <= max(6, order/2), Miller downward recurrence normalised by
// J_0 + 2 sum J_2k = 1 otherwise.
double bessel_j(int order, double x, const SpecFunConfig& cfg = {});

// J_lo(x), ..., J_hi(x) in one pass (Miller when x is past the series range).
std::vector<double> bessel_j_range(int lo, int hi, double x, const SpecFunConfig& cfg = {});

// J'_order(x) = (J_{order-1} - J_{order+1}) / 2, with J'_0 = -J_1. At x = 0
// returns the series limit (1/2 for order 1, 0 otherwise).
double bessel_j_deriv(int order, double x, const SpecFunConfig& cfg = {});

// Integral of J_order over [0, z].
double bessel_j_integral(int order, double z, const SpecFunConfig& cfg = {});

struct AiryPair {
    double ai;
    double aip;
};

AiryPair airy(double x, const SpecFunConfig& cfg = {});
inline double airy_ai(double x) { return airy(x).ai; }
inline double airy_ai_deriv(double x) { return airy(x).aip; }

// Integral of Ai over [y, +infinity).
double airy_tail(double y, const SpecFunConfig& cfg = {});

// Olver's zeta(z): (2/3) zeta^{3/2} = log((1 + sqrt(1-z^2))/z) - sqrt(1-z^2)
// for 0 < z <= 1, continued to z > 1 by -(2/3)(-zeta)^{3/2} = sqrt(z^2-1) - arcsec z.
double olver_zeta(double z);

// Leading Olver approximation to J_nu(nu - w (nu/2)^{1/3}):
//   nu^{-1/3} (4 zeta / (1 - z^2))^{1/4} Ai(nu^{2/3} zeta),  z = 1 - w (nu/2)^{1/3} / nu.
double bessel_j_uniform(int order, double w);

} // namespace edgegap
