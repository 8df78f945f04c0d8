#include "curveflow/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>

namespace curveflow {

int max_threads() { return omp_get_max_threads(); }

namespace {

NodeEval node_at(const ProblemSpec& p, DomainKind domain, int M, std::span<const double> v, const Derivatives& d,
                 std::size_t j) {
    const double angle = grid_node(domain, M, static_cast<int>(j));
    if (p.parametrization() == Parametrization::Support)
        return evaluate_support_node(p, angle, v[j], d.d1[j], d.d2[j], j);
    return evaluate_radial_node(p, angle, v[j], d.d1[j], d.d2[j], j);
}

}  // namespace

void evaluate_nodes(const ProblemSpec& p, std::span<const double> values, const Derivatives& d,
                    std::span<NodeEval> out, Exec exec) {
    const std::size_t m = values.size();
    const int M = static_cast<int>(m);
    const DomainKind domain = p.domain();
    // Exceptions cannot cross the OpenMP region; park them per node.
    std::vector<std::exception_ptr> errors(m);
    for_each_index(
        exec, m,
        [&](std::size_t j) {
            try {
                out[j] = node_at(p, domain, M, values, d, j);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        },
        kNodeParallelThreshold);
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

NodeSummary summarize(std::span<const NodeEval> nodes) {
    NodeSummary s;
    s.kappa_min = INFINITY;
    s.min_abs_x = INFINITY;
    for (const NodeEval& e : nodes) {
        s.max_coef = std::max(s.max_coef, e.coef);
        s.max_abs_speed = std::max(s.max_abs_speed, std::abs(e.speed));
        s.max_residual = std::max(s.max_residual, std::abs(e.F - e.f));
        s.kappa_min = std::min(s.kappa_min, e.kappa_min);
        s.kappa_max = std::max(s.kappa_max, e.kappa_max);
        s.min_abs_x = std::min(s.min_abs_x, e.abs_x);
        s.max_abs_x = std::max(s.max_abs_x, e.abs_x);
        s.max_radius_sum = std::max(s.max_radius_sum, e.radius_sum);
    }
    return s;
}

namespace reference {

void evaluate_nodes(const ProblemSpec& p, std::span<const double> values, const Derivatives& d,
                    std::span<NodeEval> out) {
    const int M = static_cast<int>(values.size());
    for (int j = 0; j < M; ++j) out[j] = node_at(p, p.domain(), M, values, d, static_cast<std::size_t>(j));
}

}  // namespace reference

}  // namespace curveflow
