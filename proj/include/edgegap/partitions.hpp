#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace edgegap {

// An integer partition stored as its positive parts, weakly decreasing.
// The empty partition has no parts.
class Partition {
public:
    Partition() = default;
    // Throws DomainError unless parts are positive and weakly decreasing.
    explicit Partition(std::vector<int> parts);

    std::span<const int> parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int weight() const { return weight_; }
    bool empty() const { return parts_.empty(); }
    int operator[](std::size_t i) const { return parts_[i]; }

    // Conjugate (transposed diagram).
    Partition conjugate() const;

    // Arm and leg of box (i, j), both 0-based; the box must lie in the diagram.
    int arm(int i, int j) const { return parts_[i] - j - 1; }
    int leg(int i, int j) const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
    int weight_ = 0;
};

// Jack parameter, strictly positive.
class AlphaParam {
public:
    explicit AlphaParam(double alpha);
    double value() const { return alpha_; }

private:
    double alpha_;
};

// All partitions of `weight` with at most `max_parts` parts, in decreasing
// lexicographic order. weight 0 yields only the empty partition.
std::vector<Partition> iter_partitions(int weight, int max_parts);

// Visitor form of iter_partitions, same order; avoids materialising the list.
template <typename Visitor>
void for_each_partition(int weight, int max_parts, Visitor&& visit);

// prod over boxes of alpha*(arm+1) + leg
double d_prime(const Partition& kappa, AlphaParam alpha);
// prod over boxes of alpha*arm + leg + 1
double h_norm(const Partition& kappa, AlphaParam alpha);
// Natural logs of the two products above; used once |kappa| > 40.
double log_d_prime(const Partition& kappa, AlphaParam alpha);
double log_h_norm(const Partition& kappa, AlphaParam alpha);

// Generalized Pochhammer symbol [u]_kappa^(alpha), always through the finite
// double product prod_i prod_{m < kappa_i} (u - i/alpha + m), i 0-based.
double gen_pochhammer(double u, const Partition& kappa, AlphaParam alpha);

// Principal specialization C_kappa^(alpha)(1^n) of the renormalized Jack
// polynomial. Zero when length(kappa) > n.
double c_at_identity(const Partition& kappa, AlphaParam alpha, int n);

// Threshold above which coefficient products are accumulated in log space.
inline constexpr int kLogSpaceWeight = 40;

// ---------------------------------------------------------------------------

namespace detail {
template <typename Visitor>
void partitions_rec(std::vector<int>& parts, int remaining, int max_part, int max_parts,
                    Visitor& visit) {
    if (remaining == 0) {
        visit(Partition(parts));
        return;
    }
    if (static_cast<int>(parts.size()) == max_parts) return;
    const int slots = max_parts - static_cast<int>(parts.size());
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        // Remaining weight must fit into the remaining slots with parts <= p.
        if (static_cast<long long>(p) * slots < remaining) break;
        parts.push_back(p);
        partitions_rec(parts, remaining - p, p, max_parts, visit);
        parts.pop_back();
    }
}
} // namespace detail

template <typename Visitor>
void for_each_partition(int weight, int max_parts, Visitor&& visit) {
    std::vector<int> parts;
    parts.reserve(static_cast<std::size_t>(max_parts));
    detail::partitions_rec(parts, weight, weight, max_parts, visit);
}

} // namespace edgegap
