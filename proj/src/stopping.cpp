#include "epochbc/stopping.hpp"

#include <cmath>

namespace epochbc {

BoundKind parse_bound_kind(const std::string &name) {
    if (name == "hoeffding")
        return BoundKind::kHoeffding;
    if (name == "eb" || name == "empirical-bernstein")
        return BoundKind::kEmpiricalBernstein;
    throw ConfigError("unknown bound kind: " + name);
}

AllocatorKind parse_allocator_kind(const std::string &name) {
    if (name == "uniform")
        return AllocatorKind::kUniform;
    if (name == "weighted")
        return AllocatorKind::kWeighted;
    throw ConfigError("unknown allocator kind: " + name);
}

std::string to_string(BoundKind kind) {
    return kind == BoundKind::kHoeffding ? "hoeffding" : "eb";
}

std::string to_string(AllocatorKind kind) {
    return kind == AllocatorKind::kUniform ? "uniform" : "weighted";
}

std::uint64_t compute_omega(std::uint64_t vertex_diameter_bound, double eps, double delta) {
    require(vertex_diameter_bound >= 2, "compute_omega: vertex diameter bound below 2");
    require(eps > 0 && delta > 0 && delta < 1, "compute_omega: bad eps/delta");
    constexpr double c = 0.5;
    double log_term = 0.0;
    if (vertex_diameter_bound > 2)
        log_term =
            std::floor(std::log2(static_cast<double>(vertex_diameter_bound - 2)));
    double omega = (c / (eps * eps)) * (log_term + 1.0 + std::log(1.0 / delta));
    return static_cast<std::uint64_t>(std::ceil(omega));
}

void calibrate(const StateFrame &calib, double delta, Vertex n, AllocatorKind kind,
               StoppingParams &params) {
    require(n >= 1, "calibrate: empty graph");
    require(delta > 0 && delta < 1, "calibrate: bad delta");
    params.delta = delta;
    params.delta_lower.assign(n, 0.0);
    params.delta_upper.assign(n, 0.0);

    bool uniform = kind == AllocatorKind::kUniform || calib.tau() == 0;
    if (!uniform) {
        double weight_sum = 0.0;
        for (Vertex v = 0; v < n; ++v)
            weight_sum += std::sqrt(static_cast<double>(calib.count(v)) /
                                    static_cast<double>(calib.tau()));
        if (weight_sum == 0.0) {
            uniform = true; // all-zero counts: no signal to redistribute
        } else {
            const double budget = delta * (1.0 - 1e-6);
            const double floor_per_vertex = delta / (2.0 * static_cast<double>(n));
            const double spare = budget - floor_per_vertex * static_cast<double>(n);
            for (Vertex v = 0; v < n; ++v) {
                double w = std::sqrt(static_cast<double>(calib.count(v)) /
                                     static_cast<double>(calib.tau()));
                double combined = floor_per_vertex + spare * (w / weight_sum);
                params.delta_lower[v] = combined / 2.0;
                params.delta_upper[v] = combined / 2.0;
            }
        }
    }
    if (uniform) {
        const double per_side = delta / (2.0 * static_cast<double>(n));
        for (Vertex v = 0; v < n; ++v) {
            params.delta_lower[v] = per_side;
            params.delta_upper[v] = per_side;
        }
    }

    // Rounding guard: the union-bound budget must hold exactly.
    long double total = 0.0L;
    for (Vertex v = 0; v < n; ++v)
        total += static_cast<long double>(params.delta_lower[v]) + params.delta_upper[v];
    if (total > static_cast<long double>(delta)) {
        double scale = static_cast<double>(static_cast<long double>(delta) / total) *
                       (1.0 - 1e-12);
        for (Vertex v = 0; v < n; ++v) {
            params.delta_lower[v] *= scale;
            params.delta_upper[v] *= scale;
        }
    }
}

namespace {

double bound_width(double b_est, double delta_v, std::uint64_t tau, BoundKind kind) {
    require(tau >= 2, "bound: tau must be at least 2");
    require(b_est >= 0.0 && b_est <= 1.0, "bound: estimate outside [0,1]");
    require(delta_v > 0.0 && delta_v < 1.0, "bound: bad per-vertex delta");
    const double t = static_cast<double>(tau);
    switch (kind) {
    case BoundKind::kHoeffding:
        return std::sqrt(std::log(1.0 / delta_v) / (2.0 * t));
    case BoundKind::kEmpiricalBernstein: {
        const double var = b_est * (1.0 - b_est);
        const double l = std::log(2.0 / delta_v);
        return std::sqrt(2.0 * var * l / t) + 7.0 * l / (3.0 * (t - 1.0));
    }
    }
    throw ContractViolation("bound: unknown kind");
}

} // namespace

double f_bound(double b_est, double delta_v, std::uint64_t /*omega*/, std::uint64_t tau,
               BoundKind kind) {
    return bound_width(b_est, delta_v, tau, kind);
}

double g_bound(double b_est, double delta_v, std::uint64_t /*omega*/, std::uint64_t tau,
               BoundKind kind) {
    return bound_width(b_est, delta_v, tau, kind);
}

bool check_stop(const StateFrame &aggregated, const StoppingParams &params, BoundKind kind) {
    const std::uint64_t tau = aggregated.tau();
    if (tau >= params.omega)
        return true;
    if (tau < 2)
        return false;
    const Vertex n = aggregated.num_vertices();
    require(params.delta_lower.size() == n && params.delta_upper.size() == n,
            "check_stop: calibration missing");
    for (Vertex v = 0; v < n; ++v) {
        double b = static_cast<double>(aggregated.count(v)) / static_cast<double>(tau);
        if (f_bound(b, params.delta_lower[v], params.omega, tau, kind) >= params.eps)
            return false;
        if (g_bound(b, params.delta_upper[v], params.omega, tau, kind) >= params.eps)
            return false;
    }
    return true;
}

} // namespace epochbc
