#include "edgegap/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "edgegap/error.hpp"
#include "edgegap/quadrature.hpp"

namespace edgegap {

namespace {

using real_ext = long double;

bool use_bessel_series(int order, double x) { return x <= std::max(6.0, 0.5 * order); }

// Maclaurin series in extended precision.
double bessel_j_series(int order, double x) {
    const real_ext half = 0.5L * x;
    real_ext lead;
    if (order <= 30) {
        lead = 1.0L;
        for (int k = 1; k <= order; ++k) lead *= half / k;
    } else {
        lead = std::exp(order * std::log(half) - std::lgamma(static_cast<real_ext>(order) + 1));
    }
    const real_ext q = -half * half;
    real_ext term = lead, sum = lead;
    for (int k = 0; k < 500; ++k) {
        term *= q / ((k + 1.0L) * (order + k + 1.0L));
        sum += term;
        if (std::abs(term) <= 1e-21L * std::abs(sum)) break;
    }
    return static_cast<double>(sum);
}

// Miller's downward recurrence; fills out[k - lo] = J_k(x) for lo <= k <= hi.
void bessel_j_miller(int lo, int hi, double x, const SpecFunConfig& cfg, std::vector<double>& out) {
    const double top = std::max<double>(hi, x);
    int start = static_cast<int>(std::ceil(top)) + cfg.miller_start_offset +
                static_cast<int>(std::ceil(15.0 * std::cbrt(std::max(top, 2.0) / 2.0)));
    if (start % 2 != 0) ++start;

    std::vector<real_ext> kept(static_cast<std::size_t>(hi - lo + 1), 0.0L);
    real_ext f_next = 0.0L, f = 1e-30L, norm = 0.0L;
    const real_ext inv_x = 1.0L / x;
    for (int k = start; k >= 1; --k) {
        if (k >= lo && k <= hi) kept[k - lo] = f;
        if (k % 2 == 0) norm += 2.0L * f;
        const real_ext f_prev = 2.0L * k * inv_x * f - f_next;
        f_next = f;
        f = f_prev;
        if (std::abs(f) > 1e250L) {
            const real_ext s = 1e-250L;
            f *= s, f_next *= s, norm *= s;
            for (auto& v : kept) v *= s;
        }
    }
    if (lo == 0) kept[0] = f;
    norm += f;
    out.resize(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) out[i] = static_cast<double>(kept[i] / norm);
}

// Airy Maclaurin pair in extended precision.
constexpr real_ext kAi0 = 0.355028053887817239260063186004183176L;
constexpr real_ext kAip0 = -0.258819403792806798405183560189203963L;

AiryPair airy_maclaurin(real_ext x) {
    const real_ext x3 = x * x * x;
    real_ext f = 1, t = 1;        // f = sum 3^k (1/3)_k x^{3k} / (3k)!
    real_ext g = x, u = x;        // g = sum 3^k (2/3)_k x^{3k+1} / (3k+1)!
    real_ext fp = 0, p = x * x / 2;  // f'
    real_ext gp = 1, q = 1;       // g'
    for (int k = 0; k < 200; ++k) {
        t *= x3 / ((3.0L * k + 2) * (3.0L * k + 3));
        u *= x3 / ((3.0L * k + 3) * (3.0L * k + 4));
        q *= x3 / ((3.0L * k + 1) * (3.0L * k + 3));
        fp += p;
        p *= x3 / ((3.0L * (k + 1)) * (3.0L * (k + 1) + 2));
        f += t;
        g += u;
        gp += q;
        const real_ext scale = std::abs(f) + std::abs(g) + std::abs(fp) + std::abs(gp);
        if (std::abs(t) + std::abs(u) + std::abs(p) + std::abs(q) < 1e-22L * scale) break;
    }
    return {static_cast<double>(kAi0 * f + kAip0 * g), static_cast<double>(kAi0 * fp + kAip0 * gp)};
}

// Coefficients u_k of the Airy asymptotic expansions, v_k derived from them.
struct AiryAsymptoticSums {
    real_ext u_even, u_odd, v_even, v_odd;  // alternating in the pair index
    real_ext u_all, v_all;                  // fully alternating
};

AiryAsymptoticSums airy_asymptotic_sums(real_ext zeta) {
    AiryAsymptoticSums s{1, 0, 1, 0, 1, 1};
    real_ext uk = 1, pw = 1, last = 1;
    for (int k = 1; k < 200; ++k) {
        uk *= (6.0L * k - 5) * (6.0L * k - 3) * (6.0L * k - 1) / ((2.0L * k - 1) * 216.0L * k);
        const real_ext vk = -(6.0L * k + 1) / (6.0L * k - 1) * uk;
        pw /= zeta;
        const real_ext mag = std::abs(uk * pw);
        if (mag > last || mag < 1e-22L) break;  // optimal truncation
        last = mag;
        const real_ext sign_all = (k % 2 == 0) ? 1 : -1;
        s.u_all += sign_all * uk * pw;
        s.v_all += sign_all * vk * pw;
        const real_ext sign_pair = ((k / 2) % 2 == 0) ? 1 : -1;
        if (k % 2 == 0) {
            s.u_even += sign_pair * uk * pw;
            s.v_even += sign_pair * vk * pw;
        } else {
            s.u_odd += sign_pair * uk * pw;
            s.v_odd += sign_pair * vk * pw;
        }
    }
    return s;
}

AiryPair airy_decaying(real_ext x) {
    const real_ext zeta = 2.0L / 3.0L * x * std::sqrt(x);
    const auto s = airy_asymptotic_sums(zeta);
    const real_ext x14 = std::sqrt(std::sqrt(x));
    const real_ext e = std::exp(-zeta) / (2.0L * std::sqrt(std::numbers::pi_v<real_ext>));
    return {static_cast<double>(e / x14 * s.u_all), static_cast<double>(-x14 * e * s.v_all)};
}

AiryPair airy_oscillatory(real_ext x) {
    const real_ext z = -x;
    const real_ext zeta = 2.0L / 3.0L * z * std::sqrt(z);
    const auto s = airy_asymptotic_sums(zeta);
    const real_ext z14 = std::sqrt(std::sqrt(z));
    const real_ext c = std::cos(zeta - std::numbers::pi_v<real_ext> / 4);
    const real_ext sn = std::sin(zeta - std::numbers::pi_v<real_ext> / 4);
    const real_ext rpi = 1.0L / std::sqrt(std::numbers::pi_v<real_ext>);
    return {static_cast<double>(rpi / z14 * (c * s.u_even + sn * s.u_odd)),
            static_cast<double>(rpi * z14 * (sn * s.v_even - c * s.v_odd))};
}

// Taylor stepping of Ai'' = x Ai leftwards from x0, where Bi does not dominate.
AiryPair airy_ode_step(real_ext x0, real_ext y, real_ext yp, real_ext x_target) {
    constexpr real_ext kStep = 0.25L;
    real_ext x = x0;
    while (x > x_target) {
        const real_ext h = std::max(-kStep, x_target - x);
        real_ext c_prev2 = 0, c_prev = y, c = yp;  // c_{k-1}, c_k, c_{k+1}
        real_ext val = y + yp * h, der = yp;
        real_ext hk = h;  // h^{k}
        // c_{k+2} = (x c_k + c_{k-1}) / ((k+2)(k+1))
        for (int k = 0; k < 80; ++k) {
            const real_ext c_next = (x * c_prev + c_prev2) / ((k + 2.0L) * (k + 1.0L));
            der += (k + 2.0L) * c_next * hk;
            hk *= h;
            val += c_next * hk;
            c_prev2 = c_prev;
            c_prev = c;
            c = c_next;
            if (k > 4 && std::abs(c_next * hk) < 1e-24L * (std::abs(val) + std::abs(der))) break;
        }
        y = val;
        yp = der;
        x += h;
    }
    return {static_cast<double>(y), static_cast<double>(yp)};
}

constexpr double kAiryOscillatoryStart = 30.0;

} // namespace

double bessel_j(int order, double x, const SpecFunConfig& cfg) {
    if (order < 0) throw DomainError("bessel_j: order must be nonnegative");
    if (!(x >= 0.0)) throw DomainError("bessel_j: x must be nonnegative");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (use_bessel_series(order, x)) return bessel_j_series(order, x);
    std::vector<double> v;
    bessel_j_miller(order, order, x, cfg, v);
    return v[0];
}

std::vector<double> bessel_j_range(int lo, int hi, double x, const SpecFunConfig& cfg) {
    if (lo < 0 || hi < lo) throw DomainError("bessel_j_range: need 0 <= lo <= hi");
    if (!(x >= 0.0)) throw DomainError("bessel_j_range: x must be nonnegative");
    std::vector<double> out(static_cast<std::size_t>(hi - lo + 1));
    std::vector<double> miller;
    bool have_miller = false;
    for (int k = lo; k <= hi; ++k) {
        if (x == 0.0) {
            out[k - lo] = k == 0 ? 1.0 : 0.0;
        } else if (use_bessel_series(k, x)) {
            out[k - lo] = bessel_j_series(k, x);
        } else {
            if (!have_miller) {
                bessel_j_miller(lo, hi, x, cfg, miller);
                have_miller = true;
            }
            out[k - lo] = miller[k - lo];
        }
    }
    return out;
}

double bessel_j_deriv(int order, double x, const SpecFunConfig& cfg) {
    if (order < 0) throw DomainError("bessel_j_deriv: order must be nonnegative");
    if (!(x >= 0.0)) throw DomainError("bessel_j_deriv: x must be nonnegative");
    if (x == 0.0) return order == 1 ? 0.5 : 0.0;
    if (order == 0) return -bessel_j(1, x, cfg);
    const auto j = bessel_j_range(order - 1, order + 1, x, cfg);
    return 0.5 * (j[0] - j[2]);
}

double bessel_j_integral(int order, double z, const SpecFunConfig& cfg) {
    if (order < 0) throw DomainError("bessel_j_integral: order must be nonnegative");
    if (!(z >= 0.0)) throw DomainError("bessel_j_integral: z must be nonnegative");
    if (z == 0.0) return 0.0;
    if (use_bessel_series(order, z)) {
        // sum_k (-1)^k (z/2)^{2k+n} z / (k! (n+k)! (2k+n+1))
        const real_ext half = 0.5L * z;
        real_ext lead = 1.0L;
        if (order <= 30) {
            for (int k = 1; k <= order; ++k) lead *= half / k;
        } else {
            lead = std::exp(order * std::log(half) - std::lgamma(static_cast<real_ext>(order) + 1));
        }
        real_ext term = lead, sum = lead / (order + 1.0L);
        for (int k = 0; k < 500; ++k) {
            term *= -half * half / ((k + 1.0L) * (order + k + 1.0L));
            const real_ext add = term / (2.0L * (k + 1) + order + 1);
            sum += add;
            if (std::abs(add) <= 1e-21L * std::abs(sum)) break;
        }
        return static_cast<double>(sum * z);
    }
    const int panels = static_cast<int>(std::ceil(z / 2.0));
    return composite_gauss([&](double t) { return bessel_j(order, t, cfg); }, 0.0, z, panels);
}

AiryPair airy(double x, const SpecFunConfig& cfg) {
    const double cut = cfg.series_cutoff;
    if (std::abs(x) <= cut) return airy_maclaurin(x);
    if (x > 0) return airy_decaying(x);
    if (x >= -kAiryOscillatoryStart) {
        const AiryPair start = airy_maclaurin(-cut);
        return airy_ode_step(-cut, start.ai, start.aip, x);
    }
    return airy_oscillatory(x);
}

double airy_tail(double y, const SpecFunConfig& cfg) {
    auto ai = [&](double v) { return airy(v, cfg).ai; };
    if (y >= 0.0) {
        const double upper = std::max(cfg.tail_cut, y + 4.0);
        const int panels = static_cast<int>(std::ceil(upper - y));
        return composite_gauss(ai, y, upper, panels);
    }
    const int panels = static_cast<int>(std::ceil(-y));
    return 1.0 / 3.0 + composite_gauss(ai, y, 0.0, panels);
}

namespace {

// zeta(z) / (1 - z), finite at z = 1.
double zeta_over_t(double z) {
    const double t = 1.0 - z;
    const double c = std::cbrt(2.0);
    if (std::abs(t) < 1e-3) return c * (1.0 + 0.3 * t + 32.0 / 175.0 * t * t);
    return olver_zeta(z) / t;
}

} // namespace

double olver_zeta(double z) {
    if (!(z > 0.0)) throw DomainError("olver_zeta: z must be positive");
    const double t = 1.0 - z;
    if (std::abs(t) < 1e-3) return t * zeta_over_t(z);
    if (z < 1.0) {
        const double s = std::sqrt((1.0 - z) * (1.0 + z));
        const double r = std::log((1.0 + s) / z) - s;
        return std::pow(1.5 * r, 2.0 / 3.0);
    }
    const double s = std::sqrt((z - 1.0) * (z + 1.0));
    const double r = s - std::acos(1.0 / z);
    return -std::pow(1.5 * r, 2.0 / 3.0);
}

double bessel_j_uniform(int order, double w) {
    if (order < 8) throw DomainError("bessel_j_uniform: order must be at least 8");
    const double nu = order;
    const double x = nu - w * std::cbrt(nu / 2.0);
    if (!(x > 0.0))
        throw DomainError("bessel_j_uniform: argument nu - w (nu/2)^{1/3} must be positive");
    const double z = x / nu;
    const double zeta = olver_zeta(z);
    const double ratio = 4.0 * zeta_over_t(z) / (1.0 + z);  // 4 zeta / (1 - z^2)
    return std::pow(ratio, 0.25) / std::cbrt(nu) * airy_ai(std::pow(nu, 2.0 / 3.0) * zeta);
}

} // namespace edgegap
