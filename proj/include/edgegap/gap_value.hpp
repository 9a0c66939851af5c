#pragma once

#include <optional>
#include <string_view>

namespace edgegap {

enum class GapMethod { Determinant, CorrelationSeries, Hypergeometric, Interrelation };

constexpr std::string_view to_string(GapMethod m) {
    switch (m) {
    case GapMethod::Determinant: return "determinant";
    case GapMethod::CorrelationSeries: return "correlation_series";
    case GapMethod::Hypergeometric: return "hypergeometric";
    case GapMethod::Interrelation: return "interrelation";
    }
    return "unknown";
}

// A gap probability together with how it was obtained. err_estimate is the
// dual-resolution discrepancy for quadrature routes and the magnitude of the
// last summed level for series routes.
struct GapValue {
    double value = 1.0;
    GapMethod method = GapMethod::Determinant;
    int nodes_used = 0;
    std::optional<int> series_k_used;
    double err_estimate = 0.0;
};

} // namespace edgegap
