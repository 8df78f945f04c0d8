#include "curveflow/problem.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "curveflow/error.hpp"

namespace curveflow {

std::string to_string(FlowMode m) { return m == FlowMode::Contracting ? "contracting" : "expanding"; }

FlowMode flow_mode_from_string(std::string_view name) {
    if (name == "contracting") return FlowMode::Contracting;
    if (name == "expanding") return FlowMode::Expanding;
    throw ParameterError("unknown flow mode '" + std::string(name) + "' (expected contracting or expanding)");
}

std::string to_string(BarrierSide s) { return s == BarrierSide::Lower ? "lower" : "upper"; }

BarrierSide barrier_side_from_string(std::string_view name) {
    if (name == "lower") return BarrierSide::Lower;
    if (name == "upper") return BarrierSide::Upper;
    throw ParameterError("unknown start side '" + std::string(name) + "' (expected lower or upper)");
}

double Phi(FlowMode mode, double y) { return mode == FlowMode::Contracting ? y : -1.0 / y; }

double dPhi(FlowMode mode, double y) { return mode == FlowMode::Contracting ? 1.0 : 1.0 / (y * y); }

ProblemSpec::ProblemSpec(SpaceformConfig space_, CurvatureFunction F_, PrescribedData data_, FlowMode mode_,
                         BarrierSide start_)
    : space(space_), F(F_), F_dual(F_.dual()), data(std::move(data_)), mode(mode_), n(F_.n()), start(start_) {
    if (!space.riemannian())
        throw UnsupportedError("de Sitter space is supported for barrier arithmetic only, not for flow runs");
    if (data.n() != n)
        throw ParameterError("data dimension " + std::to_string(data.n()) + " differs from curvature dimension " +
                             std::to_string(n));
    if (space.kind() != SpaceKind::Euclid && n != 1)
        throw UnsupportedError("radial-graph flows in " + to_string(space.kind()) + " are implemented for n = 1 only");
}

Parametrization ProblemSpec::parametrization() const {
    return space.kind() == SpaceKind::Euclid ? Parametrization::Support : Parametrization::Radial;
}

void ProblemSpec::attach_barriers() {
    barriers = find_spherical_barriers(*this);
    barriers_set = true;
}

double ProblemSpec::start_radius() const {
    if (!barriers_set) throw ParameterError("problem has no barriers attached");
    return start == BarrierSide::Lower ? barriers.r_lower : barriers.r_upper;
}

namespace {

// Principal radii (r1, r2, ..., r2) of length n; small n keeps this on the stack.
struct RadiusVector {
    std::array<double, 16> r{};
    int n = 0;
    std::span<const double> view() const { return {r.data(), static_cast<std::size_t>(n)}; }
};

}  // namespace

NodeEval evaluate_support_node(const ProblemSpec& p, double theta, double s, double ds, double dds,
                               std::size_t node) {
    if (p.n > 16) throw UnsupportedError("dimension above 16");
    RadiusVector rv;
    rv.n = p.n;
    const double r1 = dds + s;
    if (!(r1 > 0.0)) throw ConvexityLossError(node, r1);
    rv.r[0] = r1;
    double r2 = r1;
    if (p.n >= 2) {
        r2 = radius_r2(theta, s, ds, dds);
        if (!(r2 > 0.0)) throw ConvexityLossError(node, r2);
        for (int i = 1; i < p.n; ++i) rv.r[i] = r2;
    }
    NodeEval e;
    const double Fstar = p.F_dual.eval(rv.view());
    e.F = 1.0 / Fstar;
    e.abs_x = std::hypot(s, ds);
    e.f = p.data.eval(DataPoint{s, e.abs_x, theta, theta + std::atan2(ds, s)});
    e.speed = Phi(p.mode, e.f) - Phi(p.mode, e.F);
    std::array<double, 16> g{};
    p.F_dual.grad(rv.view(), std::span<double>(g.data(), static_cast<std::size_t>(p.n)));
    double gsum = 0.0;
    for (int i = 0; i < p.n; ++i) gsum += g[i];
    e.coef = dPhi(p.mode, e.F) * e.F * e.F * gsum;
    const double rmin = std::min(r1, r2), rmax = std::max(r1, r2);
    e.kappa_min = 1.0 / rmax;
    e.kappa_max = 1.0 / rmin;
    e.radius_sum = r1 + (p.n - 1) * r2;
    return e;
}

NodeEval evaluate_radial_node(const ProblemSpec& p, double y, double r, double dr, double ddr, std::size_t node) {
    const double kappa = p.space.radial_graph_curvature(r, dr, ddr);
    if (!(kappa > 0.0)) throw ConvexityLossError(node, kappa > 0.0 ? 1.0 / kappa : kappa);
    const Warping w = p.space.warping(r);
    const double q = dr * dr + w.theta * w.theta;
    const double v = std::sqrt(q) / w.theta;
    NodeEval e;
    const double k1[1] = {kappa};
    e.F = p.F.eval(k1);
    double g[1];
    p.F.grad(k1, g);
    e.abs_x = r;
    const double s = w.theta / v;
    e.f = p.data.eval(DataPoint{s, r, y - std::atan2(dr, w.theta), y});
    e.speed = p.space.signature() * (Phi(p.mode, e.f) - Phi(p.mode, e.F)) * v;
    e.coef = dPhi(p.mode, e.F) * g[0] / q;
    e.kappa_min = e.kappa_max = kappa;
    e.radius_sum = 1.0 / kappa;
    return e;
}

}  // namespace curveflow
