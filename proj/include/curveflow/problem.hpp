#ifndef CURVEFLOW_PROBLEM_HPP
#define CURVEFLOW_PROBLEM_HPP

#include <string>
#include <string_view>

#include "curveflow/anisotropy.hpp"
#include "curveflow/barrier.hpp"
#include "curveflow/curvfun.hpp"
#include "curveflow/profile.hpp"
#include "curveflow/spaceform.hpp"

namespace curveflow {

// Phi(y) = y (contracting) or -1/y (expanding).
enum class FlowMode { Contracting, Expanding };

std::string to_string(FlowMode m);
FlowMode flow_mode_from_string(std::string_view name);
std::string to_string(BarrierSide s);
BarrierSide barrier_side_from_string(std::string_view name);

double Phi(FlowMode mode, double y);
double dPhi(FlowMode mode, double y);

// Euclidean problems use the support function; sphere and hyperbolic
// problems use radial graphs (n = 1).
enum class Parametrization { Support, Radial };

struct ProblemSpec {
    ProblemSpec(SpaceformConfig space, CurvatureFunction F, PrescribedData data, FlowMode mode,
                BarrierSide start = BarrierSide::Lower);

    SpaceformConfig space;
    CurvatureFunction F;
    CurvatureFunction F_dual;
    PrescribedData data;
    FlowMode mode;
    int n;
    BarrierSide start;
    BarrierPair barriers;
    bool barriers_set = false;

    Parametrization parametrization() const;
    DomainKind domain() const { return n == 1 ? DomainKind::FullCircle : DomainKind::Latitude; }
    // Finds and stores slice barriers.
    void attach_barriers();
    // Starting slice radius (the start-side barrier).
    double start_radius() const;
};

// Pointwise state of the flow at one node.
struct NodeEval {
    double F = 0.0;       // curvature function value
    double f = 0.0;       // prescribed value
    double speed = 0.0;   // time derivative of s or r
    double coef = 0.0;    // diffusion coefficient of the linearization
    double kappa_min = 0.0;
    double kappa_max = 0.0;
    double radius_sum = 0.0;  // trace of the inverse Weingarten map
    double abs_x = 0.0;
};

// Support parametrization: derivatives of s at the angle theta.
NodeEval evaluate_support_node(const ProblemSpec& p, double theta, double s, double ds, double dds,
                               std::size_t node);
// Radial parametrization: derivatives of r at the angle y.
NodeEval evaluate_radial_node(const ProblemSpec& p, double y, double r, double dr, double ddr, std::size_t node);

}  // namespace curveflow

#endif
