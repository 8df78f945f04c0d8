#ifndef CURVEFLOW_KERNELS_HPP
#define CURVEFLOW_KERNELS_HPP

#include <span>
#include <vector>

#include "curveflow/parallel.hpp"
#include "curveflow/problem.hpp"
#include "curveflow/profile.hpp"

namespace curveflow {

// Per-node work is a few hundred flops plus transcendental calls, so the
// OpenMP region pays off on much smaller grids than plain arithmetic loops.
inline constexpr std::size_t kNodeParallelThreshold = 64;

// Nodewise flow state for the problem's parametrization. values are s
// (support) or r (radial) at the grid nodes; derivatives are spectral.
// Throws the error of the lowest failing node.
void evaluate_nodes(const ProblemSpec& p, std::span<const double> values, const Derivatives& d,
                    std::span<NodeEval> out, Exec exec = Exec::Parallel);

struct NodeSummary {
    double max_coef = 0.0;
    double max_abs_speed = 0.0;
    double max_residual = 0.0;  // sup |F - f|
    double kappa_min = 0.0;
    double kappa_max = 0.0;
    double min_abs_x = 0.0;
    double max_abs_x = 0.0;
    double max_radius_sum = 0.0;
};

NodeSummary summarize(std::span<const NodeEval> nodes);

namespace reference {

// Straight serial loop; the parallel kernel must agree bitwise.
void evaluate_nodes(const ProblemSpec& p, std::span<const double> values, const Derivatives& d,
                    std::span<NodeEval> out);

}  // namespace reference

}  // namespace curveflow

#endif
