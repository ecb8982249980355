#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "epochbc/state_frame.hpp"
#include "epochbc/types.hpp"

namespace epochbc {

// Pluggable one-sided deviation bounds for means of i.i.d. [0,1] variables.
// Both are valid (1 - delta_v) widths; neither is assumed monotone by the
// engine (the empirical-Bernstein width is not monotone in the estimate).
enum class BoundKind {
    kHoeffding,
    kEmpiricalBernstein,
};

enum class AllocatorKind {
    kUniform,
    kWeighted,
};

BoundKind parse_bound_kind(const std::string &name);
AllocatorKind parse_allocator_kind(const std::string &name);
std::string to_string(BoundKind kind);
std::string to_string(AllocatorKind kind);

struct StoppingParams {
    double eps = 0.001;
    double delta = 0.1;
    std::uint64_t omega = 0;          // maximum sample count (termination fallback)
    std::vector<double> delta_lower;  // per-vertex failure budget, lower side
    std::vector<double> delta_upper;  // per-vertex failure budget, upper side
};

// Static sample budget: omega = ceil( (c/eps^2) * (floor(log2(VD - 2)) + 1 +
// ln(1/delta)) ) with c = 0.5; the log term is 0 for VD = 2.
// VD is the vertex diameter bound (max vertices on any shortest path).
std::uint64_t compute_omega(std::uint64_t vertex_diameter_bound, double eps, double delta);

// Allocates per-vertex failure probabilities from an aggregated calibration
// frame. Uniform: delta_L(x) = delta_U(x) = delta/(2n). Weighted: budget
// delta*(1-1e-6) redistributed proportional to sqrt(b_calib(x)) with floor
// delta/(4n) per side; falls back to uniform on an all-zero frame. Either
// way sum_x (delta_L + delta_U) <= delta afterwards.
void calibrate(const StateFrame &calibration_frame, double delta, Vertex n, AllocatorKind kind,
               StoppingParams &params);

// Deviation width for the estimate b at sample count tau.
// Hoeffding: sqrt(ln(1/delta_v) / (2 tau)).
// Empirical Bernstein (Maurer-Pontil): sqrt(2 b(1-b) ln(2/delta_v) / tau)
//   + 7 ln(2/delta_v) / (3 (tau - 1)).
double f_bound(double b_est, double delta_v, std::uint64_t omega, std::uint64_t tau,
               BoundKind kind);
double g_bound(double b_est, double delta_v, std::uint64_t omega, std::uint64_t tau,
               BoundKind kind);

// True iff tau >= omega, or both bounds fall below eps for every vertex.
// Must be called on a consistent (quiescent) snapshot; full O(n) scan.
bool check_stop(const StateFrame &aggregated, const StoppingParams &params, BoundKind kind);

} // namespace epochbc
