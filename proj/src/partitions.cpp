#include "edgegap/partitions.hpp"

#include <cmath>
#include <string>

#include "edgegap/error.hpp"

namespace edgegap {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1) throw DomainError("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw DomainError("partition parts must be weakly decreasing");
        weight_ += parts_[i];
    }
}

int Partition::leg(int i, int j) const {
    int l = 0;
    for (int r = i + 1; r < length() && parts_[r] > j; ++r) ++l;
    return l;
}

Partition Partition::conjugate() const {
    if (parts_.empty()) return {};
    std::vector<int> conj(static_cast<std::size_t>(parts_.front()), 0);
    for (int p : parts_)
        for (int j = 0; j < p; ++j) ++conj[j];
    return Partition(std::move(conj));
}

AlphaParam::AlphaParam(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("Jack parameter alpha must be positive, got " + std::to_string(alpha));
}

std::vector<Partition> iter_partitions(int weight, int max_parts) {
    if (weight < 0) throw DomainError("iter_partitions: weight must be nonnegative");
    if (max_parts < 1) throw DomainError("iter_partitions: max_parts must be positive");
    std::vector<Partition> out;
    for_each_partition(weight, max_parts, [&](Partition p) { out.push_back(std::move(p)); });
    return out;
}

namespace {

// Applies f(arm, leg) to every box of the diagram.
template <typename F>
void for_each_box(const Partition& kappa, F&& f) {
    const Partition conj = kappa.conjugate();
    for (int i = 0; i < kappa.length(); ++i)
        for (int j = 0; j < kappa[i]; ++j) f(kappa[i] - j - 1, conj[j] - i - 1);
}

double box_product(const Partition& kappa, double alpha, double arm_shift, double leg_shift,
                   bool log_space) {
    double acc = log_space ? 0.0 : 1.0;
    for_each_box(kappa, [&](int a, int l) {
        const double f = alpha * (a + arm_shift) + l + leg_shift;
        if (log_space)
            acc += std::log(f);
        else
            acc *= f;
    });
    return acc;
}

} // namespace

double d_prime(const Partition& kappa, AlphaParam alpha) {
    if (kappa.weight() > kLogSpaceWeight) return std::exp(log_d_prime(kappa, alpha));
    return box_product(kappa, alpha.value(), 1.0, 0.0, false);
}

double h_norm(const Partition& kappa, AlphaParam alpha) {
    if (kappa.weight() > kLogSpaceWeight) return std::exp(log_h_norm(kappa, alpha));
    return box_product(kappa, alpha.value(), 0.0, 1.0, false);
}

double log_d_prime(const Partition& kappa, AlphaParam alpha) {
    return box_product(kappa, alpha.value(), 1.0, 0.0, true);
}

double log_h_norm(const Partition& kappa, AlphaParam alpha) {
    return box_product(kappa, alpha.value(), 0.0, 1.0, true);
}

double gen_pochhammer(double u, const Partition& kappa, AlphaParam alpha) {
    double acc = 1.0;
    for (int i = 0; i < kappa.length(); ++i) {
        const double base = u - i / alpha.value();
        for (int m = 0; m < kappa[i]; ++m) acc *= base + m;
    }
    return acc;
}

double c_at_identity(const Partition& kappa, AlphaParam alpha, int n) {
    if (n < 1) throw DomainError("c_at_identity: n must be positive");
    if (kappa.length() > n) return 0.0;
    const double a = alpha.value();
    const int w = kappa.weight();
    if (w <= kLogSpaceWeight) {
        double fact = 1.0;
        for (int k = 2; k <= w; ++k) fact *= k;
        return fact * std::pow(a, 2 * w) * gen_pochhammer(n / a, kappa, alpha) /
               (h_norm(kappa, alpha) * d_prime(kappa, alpha));
    }
    // [n/alpha]_kappa is a product of positive factors when length <= n.
    double log_poch = 0.0;
    for (int i = 0; i < kappa.length(); ++i)
        for (int m = 0; m < kappa[i]; ++m) log_poch += std::log(n / a - i / a + m);
    return std::exp(std::lgamma(w + 1.0) + 2.0 * w * std::log(a) + log_poch -
                    log_h_norm(kappa, alpha) - log_d_prime(kappa, alpha));
}

} // namespace edgegap
