#include "curveflow/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "curveflow/error.hpp"
#include "curveflow/problem.hpp"

namespace curveflow {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Bisection for a sign change of g on [lo, hi].
std::optional<double> bisect(const std::function<double(double)>& g, double lo, double hi) {
    double glo = g(lo), ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0.0) == (ghi > 0.0)) return std::nullopt;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Worst case of sigma (f - F) on the slice for the given side.
double side_gap(const PrescribedData& data, const SpaceformConfig& space, double r, BarrierSide side) {
    const int sigma = space.signature();
    const bool use_inf = (side == BarrierSide::Lower) == (sigma > 0);
    return slice_gap(data, space, r, use_inf);
}

}  // namespace

double slice_gap(const PrescribedData& data, const SpaceformConfig& space, double r, bool use_inf) {
    const Warping w = warping_unchecked(space.kind(), r);
    const auto range = data.slice_range(space, r);
    const double f = use_inf ? range.inf : range.sup;
    return space.signature() * (f - data.n() * w.dtheta / w.theta);
}

BarrierPair find_spherical_barriers(const PrescribedData& data, const SpaceformConfig& space) {
    const double a = space.inner(), b = space.outer();
    const double nudge = 1e-6 * (b - a);
    BarrierPair bp;
    bp.r_lower = a + nudge;
    bp.r_upper = b - nudge;
    bp.margin_lower = side_gap(data, space, bp.r_lower, BarrierSide::Lower);
    bp.margin_upper = side_gap(data, space, bp.r_upper, BarrierSide::Upper);
    const auto range = data.slice_range(space, bp.r_lower);
    bp.surrogate = range.inf == range.sup ? "slice-constant" : "inf/sup over slice";
    if (bp.margin_lower < 0.0)
        throw NoBarrierError("inner slice r = " + fmt(bp.r_lower) + " is not a lower barrier (sigma (f - F) = " +
                             fmt(bp.margin_lower) + " < 0)");
    if (bp.margin_upper > 0.0)
        throw NoBarrierError("outer slice r = " + fmt(bp.r_upper) + " is not an upper barrier (sigma (f - F) = " +
                             fmt(bp.margin_upper) + " > 0)");
    bp.root_inf = bisect([&](double r) { return side_gap(data, space, r, BarrierSide::Lower); }, bp.r_lower,
                         bp.r_upper);
    bp.root_sup = bisect([&](double r) { return side_gap(data, space, r, BarrierSide::Upper); }, bp.r_lower,
                         bp.r_upper);
    return bp;
}

BarrierPair find_spherical_barriers(const ProblemSpec& problem) {
    return find_spherical_barriers(problem.data, problem.space);
}

std::optional<double> scaling_lambda(const PrescribedData& data, int max_doublings) {
    const auto e = data.scaling_exponent();
    if (!e || !(*e < -1.0)) return std::nullopt;
    double lambda = 2.0;
    for (int j = 0; j < max_doublings; ++j, lambda *= 2.0) {
        try {
            find_spherical_barriers(data, SpaceformConfig(SpaceKind::Euclid, 1.0 / lambda, lambda));
            return lambda;
        } catch (const NoBarrierError&) {
        }
    }
    return std::nullopt;
}

double admissible_constant(SpaceKind kind, int n, PhiBounds phi, double q, double anchor) {
    if (!(phi.sup > 0.0) || !std::isfinite(phi.sup)) throw ParameterError("sup phi must be positive and finite");
    switch (kind) {
        case SpaceKind::Sphere:
            if (!(q > 2.0))
                throw NoBarrierError("sphere barrier constant needs q > 2: for q = " + fmt(q) +
                                     " the inner barrier limit of c phi sin^(1-q) r - n cot r as r -> 0 is not positive");
            if (!(anchor > 0.0 && anchor <= std::numbers::pi / 2))
                throw DomainError("sphere anchor must lie in (0, pi/2]");
            return n * std::cos(anchor) / (phi.sup * std::pow(std::sin(anchor), 2.0 - q));
        case SpaceKind::DeSitter:
            if (!(q < 1.0))
                throw NoBarrierError("de Sitter barrier constant needs q < 1: for q = " + fmt(q) +
                                     " c phi cosh^(1-q) r does not dominate n tanh r at large r");
            if (!(anchor > 0.0)) throw DomainError("de Sitter anchor must be positive");
            return n * std::sinh(anchor) / (phi.sup * std::pow(std::cosh(anchor), 2.0 - q));
        default:
            throw UnsupportedError("admissible constant is defined for the sphere and de Sitter space only");
    }
}

double validate_barrier(const ProblemSpec& problem, const SupportProfile& profile, BarrierSide side) {
    const Derivatives d = profile.differentiate();
    const auto& s = profile.values();
    double out = side == BarrierSide::Lower ? INFINITY : -INFINITY;
    for (int j = 0; j < profile.size(); ++j) {
        const NodeEval e = evaluate_support_node(problem, profile.node(j), s[j], d.d1[j], d.d2[j], j);
        const double m = e.f - e.F;
        out = side == BarrierSide::Lower ? std::min(out, m) : std::max(out, m);
    }
    return out;
}

double validate_barrier(const ProblemSpec& problem, const RadialProfile& profile, BarrierSide side) {
    const Derivatives d = profile.differentiate();
    const auto& r = profile.values();
    double out = side == BarrierSide::Lower ? INFINITY : -INFINITY;
    for (int j = 0; j < profile.size(); ++j) {
        const NodeEval e = evaluate_radial_node(problem, profile.node(j), r[j], d.d1[j], d.d2[j], j);
        const double m = problem.space.signature() * (e.f - e.F);
        out = side == BarrierSide::Lower ? std::min(out, m) : std::max(out, m);
    }
    return out;
}

}  // namespace curveflow
