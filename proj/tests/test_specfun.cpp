#include "doctest.h"

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "edgegap/quadrature.hpp"
#include "edgegap/specfun.hpp"

using namespace edgegap;
using Big = boost::multiprecision::cpp_bin_float_100;

namespace {

// 100-digit Maclaurin series for J_n(x).
double bessel_oracle(int n, double xd) {
    const Big x(xd), half = x / 2, q = -half * half;
    Big term = boost::multiprecision::pow(half, n) / boost::math::tgamma(Big(n + 1));
    Big sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= q / (Big(k) * Big(k + n));
        sum += term;
        if (k > 10 && abs(term) < Big("1e-60") * abs(sum)) break;
    }
    return static_cast<double>(sum);
}

struct BigAiry {
    double ai, aip;
};

// 100-digit Maclaurin series for Ai and Ai'.
BigAiry airy_oracle(double xd) {
    const Big x(xd), x3 = x * x * x;
    const Big c1 = 1 / (boost::multiprecision::pow(Big(3), Big(2) / 3) * boost::math::tgamma(Big(2) / 3));
    const Big c2 = 1 / (boost::multiprecision::pow(Big(3), Big(1) / 3) * boost::math::tgamma(Big(1) / 3));
    // f = sum x^{3k} / prod_{j<=k} (3j-1)(3j), g = sum x^{3k+1} / prod (3j)(3j+1)
    Big f = 1, g = x, tf = 1, tg = x, fp = 0, gp = 1;
    for (int k = 1; k < 300; ++k) {
        tf *= x3 / Big((3 * k - 1) * (3 * k));
        tg *= x3 / Big((3 * k) * (3 * k + 1));
        f += tf;
        g += tg;
        fp += tf * 3 * k / x;
        gp += tg * (3 * k + 1) / x;
        if (k > 10 && abs(tf) + abs(tg) < Big("1e-80")) break;
    }
    return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * fp - c2 * gp)};
}

} // namespace

TEST_CASE("Bessel values against the series oracle") {
    CHECK(bessel_j(0, 0.0) == 1.0);
    CHECK(bessel_j(3, 0.0) == 0.0);
    CHECK(bessel_j(50, 45.0) == doctest::Approx(bessel_oracle(50, 45.0)).epsilon(1e-13));
    for (int n : {0, 1, 2, 5, 10, 30, 64})
        for (double x : {0.1, 1.0, 5.0, 6.5, 10.0, 12.0, 20.0, 40.0, 70.0}) {
            const double ref = bessel_oracle(n, x);
            CAPTURE(n);
            CAPTURE(x);
            CHECK(std::abs(bessel_j(n, x) - ref) <= 1e-13 * std::max(1.0, std::abs(ref) * 10));
        }
}

TEST_CASE("Bessel recurrence and Miller normalization") {
    double worst = 0.0;
    for (int a = 1; a <= 64; a += 3)
        for (double x = 0.5; x <= 128.0; x *= 1.37) {
            const auto j = bessel_j_range(a - 1, a + 1, x);
            worst = std::max(worst, std::abs(j[0] + j[2] - 2.0 * a / x * j[1]));
        }
    CHECK(worst < 1e-11);

    for (double x : {0.3, 2.0, 9.0, 31.0, 77.0, 128.0}) {
        const int top = static_cast<int>(x) + 60;
        const auto j = bessel_j_range(0, top, x);
        double s = j[0];
        for (int k = 2; k <= top; k += 2) s += 2.0 * j[k];
        CHECK(s == doctest::Approx(1.0).epsilon(1e-11));
    }
    // bessel_j_range agrees with single evaluations
    const auto j = bessel_j_range(3, 9, 17.5);
    for (int n = 3; n <= 9; ++n) CHECK(j[n - 3] == doctest::Approx(bessel_j(n, 17.5)).epsilon(1e-13));
}

TEST_CASE("Bessel derivative") {
    for (double x : {0.5, 3.0, 14.0, 60.0})
        CHECK(bessel_j_deriv(0, x) == doctest::Approx(-bessel_j(1, x)).epsilon(1e-14));
    CHECK(bessel_j_deriv(1, 1e-9) == doctest::Approx(0.5).epsilon(1e-12));
    const double h = 1e-5;
    const double fd = (bessel_j(10, 12.0 + h) - bessel_j(10, 12.0 - h)) / (2 * h);
    CHECK(std::abs(bessel_j_deriv(10, 12.0) - fd) < 1e-8);
}

TEST_CASE("Bessel integral") {
    CHECK(bessel_j_integral(3, 0.0) == 0.0);
    // Neumann-type identity: int_0^z J_n = 2 sum_k J_{n+2k+1}(z)
    for (int n : {0, 1, 4, 9})
        for (double z : {0.7, 3.0, 11.0, 25.0}) {
            const auto j = bessel_j_range(0, n + 121, z);
            double s = 0.0;
            for (int k = n + 1; k <= n + 121; k += 2) s += 2.0 * j[k];
            CHECK(bessel_j_integral(n, z) == doctest::Approx(s).epsilon(1e-12));
        }
    // The tail int_z^inf J_0 oscillates with envelope sqrt(2 / (pi z)).
    const double far = bessel_j_integral(0, 200.0);
    CHECK(std::abs(far - 1.0) < std::sqrt(2.0 / (M_PI * 200.0)));
    {
        const auto j = bessel_j_range(0, 401, 200.0);
        double s = 0.0;
        for (int k = 1; k <= 401; k += 2) s += 2.0 * j[k];
        CHECK(far == doctest::Approx(s).epsilon(1e-12));
    }
    auto j0 = [](double t) { return bessel_j(0, t); };
    CHECK(std::abs(composite_gauss(j0, 0.0, 200.0, 100) - composite_gauss(j0, 0.0, 200.0, 200)) < 1e-11);
    CHECK(std::abs(far - composite_gauss(j0, 0.0, 200.0, 200)) < 1e-11);
    const double h = 1e-4;
    const double fd = (bessel_j_integral(2, 5.0 + h) - bessel_j_integral(2, 5.0 - h)) / (2 * h);
    CHECK(std::abs(fd - bessel_j(2, 5.0)) < 1e-7);
}

TEST_CASE("Airy values against the series oracle") {
    CHECK(airy_ai(0.0) == doctest::Approx(std::pow(3.0, -2.0 / 3) / std::tgamma(2.0 / 3)).epsilon(1e-15));
    CHECK(airy_ai_deriv(0.0) ==
          doctest::Approx(-std::pow(3.0, -1.0 / 3) / std::tgamma(1.0 / 3)).epsilon(1e-15));
    CHECK(airy_ai(5.0) == doctest::Approx(airy_oracle(5.0).ai).epsilon(1e-12));
    CHECK(std::abs(airy_ai(5.0) - airy_oracle(5.0).ai) < 1e-13);

    // Branch crossover annulus and a sweep through every regime.
    for (double ax = 5.5; ax <= 6.5; ax += 0.125)
        for (double x : {ax, -ax}) {
            const auto ref = airy_oracle(x);
            CAPTURE(x);
            CHECK(std::abs(airy_ai(x) - ref.ai) < 1e-12 * std::max(1e-3, std::abs(ref.ai)) + 1e-15);
            CHECK(std::abs(airy_ai_deriv(x) - ref.aip) < 1e-12 * std::max(1e-3, std::abs(ref.aip)) + 1e-15);
        }
    for (double x = -29.0; x <= 9.0; x += 0.73) {
        const auto ref = airy_oracle(x);
        CAPTURE(x);
        CHECK(std::abs(airy_ai(x) - ref.ai) < 1e-11);
        CHECK(std::abs(airy_ai_deriv(x) - ref.aip) < 5e-11);
    }
}

TEST_CASE("Airy ODE residual") {
    const double h = 1e-5;
    double worst = 0.0;
    for (double x = -40.0; x <= 12.0; x += 0.37) {
        const double second = (airy_ai_deriv(x + h) - airy_ai_deriv(x - h)) / (2 * h);
        worst = std::max(worst, std::abs(second - x * airy_ai(x)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("Airy tail integral") {
    CHECK(airy_tail(0.0) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(std::abs(airy_tail(20.0)) < 1e-13);
    auto ai = [](double t) { return airy_ai(t); };
    const double coarse = 1.0 / 3 + composite_gauss(ai, -5.0, 0.0, 5);
    const double fine = 1.0 / 3 + composite_gauss(ai, -5.0, 0.0, 10);
    CHECK(std::abs(coarse - fine) < 1e-11);
    CHECK(airy_tail(-5.0) == doctest::Approx(fine).epsilon(1e-12));
    CHECK(airy_tail(2.0) == doctest::Approx(1.0 / 3 - composite_gauss(ai, 0.0, 2.0, 4)).epsilon(1e-12));
}

TEST_CASE("uniform asymptotics near the turning point") {
    CHECK(std::abs(olver_zeta(1.0)) < 1e-15);
    CHECK(olver_zeta(0.5) > 0.0);
    CHECK(olver_zeta(2.0) < 0.0);
    // continuity across the series switch
    CHECK(olver_zeta(1.0 - 0.99e-3) == doctest::Approx(olver_zeta(1.0 - 1.01e-3)).epsilon(1e-4));

    for (int nu : {200, 400})
        CHECK(bessel_j(nu, nu) == doctest::Approx(std::cbrt(2.0 / nu) * airy_ai(0.0)).epsilon(0.02));

    for (double w : {-2.0, 0.0, 2.0}) {
        auto rel = [w](int nu) {
            const double j = bessel_j(nu, nu - w * std::cbrt(nu / 2.0));
            return std::abs(bessel_j_uniform(nu, w) - j) / std::abs(j);
        };
        const double r64 = rel(64), r128 = rel(128);
        CHECK(r128 < r64);
        CHECK(r64 < 5.0 * std::pow(64.0, -2.0 / 3));
    }
    for (int nu : {32, 64, 128, 256})
        for (double w = -2.0; w <= 6.0; w += 0.5) {
            const double j = bessel_j(nu, nu - w * std::cbrt(nu / 2.0));
            CHECK(std::abs(bessel_j_uniform(nu, w) - j) <= 1e-3 * std::pow(nu, -2.0 / 3) * std::exp(-w));
        }
}

TEST_CASE("Gauss-Legendre rules") {
    const QuadGrid one = gauss_legendre(1, -1.0, 1.0);
    CHECK(one.nodes[0] == doctest::Approx(0.0));
    CHECK(one.weights[0] == doctest::Approx(2.0));
    for (int m : {2, 7, 40, 160}) {
        const QuadGrid g = gauss_legendre(m, 0.0, 1.0);
        double s = 0.0;
        for (double w : g.weights) s += w;
        CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    }
    const QuadGrid g = gauss_legendre(20, 0.0, 1.0);
    double s = 0.0;
    for (int i = 0; i < g.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], 5);
    CHECK(std::abs(s - 1.0 / 6) < 1e-15);
}
