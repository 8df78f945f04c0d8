#ifndef CURVEFLOW_FLOW_HPP
#define CURVEFLOW_FLOW_HPP

#include <optional>
#include <string>
#include <vector>

#include "curveflow/kernels.hpp"
#include "curveflow/problem.hpp"
#include "curveflow/profile.hpp"

namespace curveflow {

std::vector<double> rhs_support(const ProblemSpec& p, const SupportProfile& profile, Exec exec = Exec::Parallel);
std::vector<double> rhs_radial(const ProblemSpec& p, const RadialProfile& profile, Exec exec = Exec::Parallel);

struct FlowState {
    std::vector<double> values;
    double t = 0.0;
    long steps = 0;
    long rejected = 0;
    double dt_last = 0.0;
    std::vector<NodeEval> nodes;  // evaluation of `values`, filled lazily
};

// Evaluates the nodes of `state` if they are missing.
void refresh(const ProblemSpec& p, FlowState& state, Exec exec = Exec::Parallel);

inline constexpr double kMinStep = 1e-14;

struct StepResult {
    bool accepted = false;
    std::string reason;  // why a trial step was rejected
    FlowState state;
};

// One explicit midpoint (RK2) step. Rejected when the trial profile loses
// convexity or positivity or leaves the barrier slab. Throws StallError for dt < 1e-14.
StepResult step(const ProblemSpec& p, const FlowState& state, double dt, Exec exec = Exec::Parallel);

// safety h^2 / max_j coef_j, clamped to [1e-12, 1e-1].
double adaptive_dt(const ProblemSpec& p, const FlowState& state, double safety = 0.2);

struct FlowOptions {
    int grid = 128;
    double tol = 1e-8;
    long max_steps = 100000;
    int record_every = 100;
    double safety = 0.2;
    Exec exec = Exec::Parallel;
    std::optional<std::vector<double>> initial;  // replaces the barrier start profile
    double monotone_tol = 1e-9;
    double pinching_limit = 1e8;
};

struct HistoryEntry {
    long step = 0;
    double t = 0.0;
    double dt = 0.0;
    double residual = 0.0;
    double max_speed = 0.0;
    double kappa_min = 0.0;
    double kappa_max = 0.0;
    double pinching_B = 0.0;
    double min_abs_x = 0.0;
    double max_abs_x = 0.0;
};

enum class FlowStatus { Converged, MaxSteps, Stalled, MonitorViolation, Failed };

std::string to_string(FlowStatus s);

struct FlowResult {
    FlowStatus status = FlowStatus::Failed;
    bool converged = false;
    std::string message;
    Parametrization parametrization = Parametrization::Support;
    DomainKind domain = DomainKind::FullCircle;
    int n = 1;
    FlowState state;
    std::vector<HistoryEntry> history;
    double final_residual = 0.0;
    double final_speed = 0.0;
    double max_pinching_ratio = 0.0;
    double max_pinching_B = 0.0;
    double worst_monotone_defect = 0.0;
    double min_abs_x_seen = 0.0;
    double max_abs_x_seen = 0.0;
    bool barrier_ok = true;
    bool residual_tail_monotone = true;

    SupportProfile support_profile() const;
    RadialProfile radial_profile(const SpaceformConfig& space) const;
};

FlowResult run(const ProblemSpec& p, const FlowOptions& options);

struct FlowDiagnostics {
    double min_radius = 0.0;
    double max_radius = 0.0;
    double pinching_B = 0.0;  // max over nodes of the sum of principal radii
    double F_min = 0.0;
    double F_max = 0.0;
    double residual = 0.0;
    bool barrier_ok = false;
};

FlowDiagnostics diagnostics(const SupportProfile& profile, const ProblemSpec& p);
FlowDiagnostics diagnostics(const RadialProfile& profile, const ProblemSpec& p);

}  // namespace curveflow

#endif
