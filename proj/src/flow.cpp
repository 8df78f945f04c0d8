#include "curveflow/flow.hpp"

#include <algorithm>
#include <cmath>

#include "curveflow/error.hpp"

namespace curveflow {

std::string to_string(FlowStatus s) {
    switch (s) {
        case FlowStatus::Converged: return "converged";
        case FlowStatus::MaxSteps: return "max_steps";
        case FlowStatus::Stalled: return "stalled";
        case FlowStatus::MonitorViolation: return "monitor_violation";
        case FlowStatus::Failed: return "failed";
    }
    return "unknown";
}

namespace {

std::vector<double> speeds_of(std::span<const NodeEval> nodes) {
    std::vector<double> v(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) v[j] = nodes[j].speed;
    return v;
}

std::vector<NodeEval> evaluate(const ProblemSpec& p, std::span<const double> values, Exec exec) {
    const Derivatives d = differentiate(p.domain(), values);
    std::vector<NodeEval> out(values.size());
    evaluate_nodes(p, values, d, out, exec);
    return out;
}

// Radial position of the hypersurface per node: |x| for support profiles, r for radial ones.
double position_of(const ProblemSpec& p, const NodeEval& e, double value) {
    return p.parametrization() == Parametrization::Support ? e.abs_x : value;
}

double slab_slack(const ProblemSpec& p) { return 1e-8 * (p.space.outer() - p.space.inner()); }

}  // namespace

std::vector<double> rhs_support(const ProblemSpec& p, const SupportProfile& profile, Exec exec) {
    if (p.parametrization() != Parametrization::Support)
        throw UnsupportedError("support-function flow is Euclidean only");
    return speeds_of(evaluate(p, profile.values(), exec));
}

std::vector<double> rhs_radial(const ProblemSpec& p, const RadialProfile& profile, Exec) {
    if (p.n != 1) throw UnsupportedError("radial-graph flow is implemented for n = 1");
    const Derivatives d = profile.differentiate();
    const auto& r = profile.values();
    std::vector<double> out(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) {
        if (!p.space.contains(r[j]))
            throw DomainError("radial profile left the annulus at node " + std::to_string(j) +
                              " (barrier sandwich violated)");
    }
    std::vector<NodeEval> nodes(r.size());
    for (std::size_t j = 0; j < r.size(); ++j)
        nodes[j] = evaluate_radial_node(p, profile.node(static_cast<int>(j)), r[j], d.d1[j], d.d2[j], j);
    return speeds_of(nodes);
}

void refresh(const ProblemSpec& p, FlowState& state, Exec exec) {
    if (state.nodes.size() != state.values.size()) state.nodes = evaluate(p, state.values, exec);
}

double adaptive_dt(const ProblemSpec& p, const FlowState& state, double safety) {
    std::vector<NodeEval> fresh;
    std::span<const NodeEval> nodes = state.nodes;
    if (state.nodes.size() != state.values.size()) nodes = fresh = evaluate(p, state.values, Exec::Parallel);
    const double h = grid_spacing(p.domain(), static_cast<int>(state.values.size()));
    const double coef = summarize(nodes).max_coef;
    const double dt = coef > 0.0 ? safety * h * h / coef : 1e-1;
    return std::clamp(dt, 1e-12, 1e-1);
}

StepResult step(const ProblemSpec& p, const FlowState& state, double dt, Exec exec) {
    if (!(dt >= kMinStep)) throw StallError("time step " + std::to_string(dt) + " below 1e-14");
    StepResult out;
    std::vector<NodeEval> fresh;
    std::span<const NodeEval> nodes0 = state.nodes;
    if (state.nodes.size() != state.values.size()) nodes0 = fresh = evaluate(p, state.values, exec);
    const FlowState& s0 = state;
    const std::size_t m = s0.values.size();
    std::vector<double> half(m), next(m);
    try {
        for (std::size_t j = 0; j < m; ++j) half[j] = s0.values[j] + 0.5 * dt * nodes0[j].speed;
        const std::vector<NodeEval> mid = evaluate(p, half, exec);
        for (std::size_t j = 0; j < m; ++j) next[j] = s0.values[j] + dt * mid[j].speed;
        for (std::size_t j = 0; j < m; ++j)
            if (!(next[j] > 0.0)) {
                out.reason = "non-positive value at node " + std::to_string(j);
                return out;
            }
        out.state.nodes = evaluate(p, next, exec);
    } catch (const Error& e) {
        out.reason = e.what();
        return out;
    }
    if (p.barriers_set) {
        const double slack = slab_slack(p);
        for (std::size_t j = 0; j < m; ++j) {
            const double x = position_of(p, out.state.nodes[j], next[j]);
            if (x < p.barriers.r_lower - slack || x > p.barriers.r_upper + slack) {
                out.reason = "node " + std::to_string(j) + " left the barrier slab";
                return out;
            }
        }
    }
    out.accepted = true;
    out.state.values = std::move(next);
    out.state.t = s0.t + dt;
    out.state.steps = s0.steps + 1;
    out.state.rejected = s0.rejected;
    out.state.dt_last = dt;
    return out;
}

SupportProfile FlowResult::support_profile() const { return {domain, n, state.values}; }

RadialProfile FlowResult::radial_profile(const SpaceformConfig& space) const { return {space, state.values}; }

FlowResult run(const ProblemSpec& p, const FlowOptions& o) {
    FlowResult res;
    res.parametrization = p.parametrization();
    res.domain = p.domain();
    res.n = p.n;
    const int M = o.grid;
    const bool from_barrier = !o.initial.has_value();
    if (o.initial) {
        if (static_cast<int>(o.initial->size()) != M) throw ParameterError("initial profile size differs from grid");
        res.state.values = *o.initial;
    } else {
        res.state.values.assign(static_cast<std::size_t>(M), p.start_radius());
    }
    // Profile constructors validate the grid.
    if (res.parametrization == Parametrization::Support)
        (void)SupportProfile(res.domain, p.n, res.state.values);
    else
        (void)RadialProfile(p.space, res.state.values);

    FlowState& st = res.state;
    try {
        refresh(p, st, o.exec);
    } catch (const Error& e) {
        res.status = FlowStatus::Failed;
        res.message = std::string("initial profile is not admissible: ") + e.what();
        return res;
    }
    const double dir = p.start == BarrierSide::Lower ? 1.0 : -1.0;
    std::vector<double> extreme = st.values;  // running max (lower start) or min (upper start)
    res.min_abs_x_seen = INFINITY;
    res.max_abs_x_seen = 0.0;

    auto record = [&](const NodeSummary& sm) {
        HistoryEntry h;
        h.step = st.steps;
        h.t = st.t;
        h.dt = st.dt_last;
        h.residual = sm.max_residual;
        h.max_speed = sm.max_abs_speed;
        h.kappa_min = sm.kappa_min;
        h.kappa_max = sm.kappa_max;
        h.pinching_B = sm.max_radius_sum;
        h.min_abs_x = sm.min_abs_x;
        h.max_abs_x = sm.max_abs_x;
        res.history.push_back(h);
    };
    auto observe = [&](const NodeSummary& sm) {
        res.max_pinching_ratio = std::max(res.max_pinching_ratio, sm.kappa_max / sm.kappa_min);
        res.max_pinching_B = std::max(res.max_pinching_B, sm.max_radius_sum);
        res.min_abs_x_seen = std::min(res.min_abs_x_seen, sm.min_abs_x);
        res.max_abs_x_seen = std::max(res.max_abs_x_seen, sm.max_abs_x);
    };

    NodeSummary sm = summarize(st.nodes);
    observe(sm);
    record(sm);
    res.status = FlowStatus::MaxSteps;
    while (true) {
        if (sm.max_residual < o.tol && sm.max_abs_speed < o.tol) {
            res.status = FlowStatus::Converged;
            break;
        }
        if (st.steps >= o.max_steps) break;
        double dt = adaptive_dt(p, st, o.safety);
        StepResult sr;
        std::string last_reason;
        bool stalled = false;
        while (true) {
            if (dt < kMinStep) {
                stalled = true;
                break;
            }
            sr = step(p, st, dt, o.exec);
            if (sr.accepted) break;
            last_reason = sr.reason;
            ++st.rejected;
            dt *= 0.5;
        }
        if (stalled) {
            res.status = FlowStatus::Stalled;
            res.message = "time step underflow after rejection: " + last_reason;
            if (last_reason.find("barrier") != std::string::npos) res.barrier_ok = false;
            break;
        }
        const long rejected = st.rejected;
        st = std::move(sr.state);
        st.rejected = rejected;
        sm = summarize(st.nodes);
        observe(sm);

        if (from_barrier) {
            for (std::size_t j = 0; j < st.values.size(); ++j) {
                const double v = st.values[j];
                res.worst_monotone_defect = std::max(res.worst_monotone_defect, dir * (extreme[j] - v));
                extreme[j] = dir > 0 ? std::max(extreme[j], v) : std::min(extreme[j], v);
            }
            if (res.worst_monotone_defect > o.monotone_tol) {
                res.status = FlowStatus::MonitorViolation;
                res.message = "monotone motion violated (defect " + std::to_string(res.worst_monotone_defect) + ")";
                break;
            }
        }
        const double ratio = sm.kappa_max / sm.kappa_min;
        if (!std::isfinite(ratio) || ratio > o.pinching_limit) {
            res.status = FlowStatus::MonitorViolation;
            res.message = "pinching ratio " + std::to_string(ratio) + " exceeds limit";
            break;
        }
        if (o.record_every > 0 && st.steps % o.record_every == 0) record(sm);
    }
    if (res.history.empty() || res.history.back().step != st.steps) record(sm);
    res.converged = res.status == FlowStatus::Converged;
    res.final_residual = sm.max_residual;
    res.final_speed = sm.max_abs_speed;
    if (res.converged) res.message = "residual and speed below tolerance";
    if (res.status == FlowStatus::MaxSteps) res.message = "step limit reached before convergence";

    // Residual behaviour over its last decade.
    const double floor = res.final_residual;
    double prev = INFINITY;
    for (const HistoryEntry& h : res.history) {
        if (h.residual > 10.0 * std::max(floor, o.tol)) continue;
        if (h.residual > prev) res.residual_tail_monotone = false;
        prev = h.residual;
    }
    return res;
}

namespace {

FlowDiagnostics diagnose(const ProblemSpec& p, std::span<const double> values, std::span<const double> r1,
                         std::span<const double> r2, std::span<const double> positions) {
    FlowDiagnostics dg;
    dg.min_radius = INFINITY;
    dg.max_radius = -INFINITY;
    dg.F_min = INFINITY;
    dg.F_max = -INFINITY;
    for (std::size_t j = 0; j < r1.size(); ++j) {
        const double a = r1[j];
        const double b = r2.empty() ? a : r2[j];
        dg.min_radius = std::min({dg.min_radius, a, b});
        dg.max_radius = std::max({dg.max_radius, a, b});
        dg.pinching_B = std::max(dg.pinching_B, a + (p.n - 1) * b);
    }
    try {
        const std::vector<NodeEval> nodes = evaluate(p, values, Exec::Serial);
        for (const NodeEval& e : nodes) {
            dg.F_min = std::min(dg.F_min, e.F);
            dg.F_max = std::max(dg.F_max, e.F);
            dg.residual = std::max(dg.residual, std::abs(e.F - e.f));
        }
    } catch (const Error&) {
        dg.residual = INFINITY;
    }
    dg.barrier_ok = p.barriers_set;
    if (p.barriers_set) {
        const double slack = slab_slack(p);
        for (double x : positions)
            if (x < p.barriers.r_lower - slack || x > p.barriers.r_upper + slack) dg.barrier_ok = false;
    }
    return dg;
}

}  // namespace

FlowDiagnostics diagnostics(const SupportProfile& profile, const ProblemSpec& p) {
    const Radii r = profile.radii();
    const Derivatives d = profile.differentiate();
    std::vector<double> pos(profile.values().size());
    for (std::size_t j = 0; j < pos.size(); ++j) pos[j] = std::hypot(profile.values()[j], d.d1[j]);
    return diagnose(p, profile.values(), r.r1, r.r2, pos);
}

FlowDiagnostics diagnostics(const RadialProfile& profile, const ProblemSpec& p) {
    std::vector<double> k = profile.curvatures();
    for (double& v : k) v = 1.0 / v;
    return diagnose(p, profile.values(), k, {}, profile.values());
}

}  // namespace curveflow
