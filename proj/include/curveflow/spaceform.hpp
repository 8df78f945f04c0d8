#ifndef CURVEFLOW_SPACEFORM_HPP
#define CURVEFLOW_SPACEFORM_HPP

#include <string>
#include <string_view>

namespace curveflow {

enum class SpaceKind { Euclid, Sphere, Hyperbolic, DeSitter };

std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(std::string_view name);

struct Warping {
    double theta;   // warping factor
    double dtheta;  // its radial derivative
};

// Ambient geometry of a strict annular region (a, b) x S^n with metric
// sigma dr^2 + theta(r)^2 g_round. The annulus is stored closed.
class SpaceformConfig {
public:
    SpaceformConfig(SpaceKind kind, double a, double b);

    SpaceKind kind() const { return kind_; }
    int sectional_curvature() const;  // K_N
    int signature() const;            // sigma
    double inner() const { return a_; }
    double outer() const { return b_; }
    bool riemannian() const { return kind_ != SpaceKind::DeSitter; }
    bool contains(double r) const;

    Warping warping(double r) const;
    double slice_curvature(double r) const;
    // dr is the squared tangential gradient norm |d r|^2 w.r.t. the round metric.
    double graph_support(double r, double dr) const;
    // Geodesic curvature of the radial graph {(r(y), y)} for n = 1.
    double radial_graph_curvature(double r, double dr, double ddr) const;

private:
    void require_inside(double r) const;

    SpaceKind kind_;
    double a_;
    double b_;
};

// Warping without annulus checks; used by barrier arithmetic on unbounded rays.
Warping warping_unchecked(SpaceKind kind, double r);

}  // namespace curveflow

#endif
