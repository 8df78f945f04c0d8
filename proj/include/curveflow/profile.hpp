#ifndef CURVEFLOW_PROFILE_HPP
#define CURVEFLOW_PROFILE_HPP

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "curveflow/spaceform.hpp"
#include "curveflow/spectral.hpp"

namespace curveflow {

// FullCircle: theta in [0, 2pi), nodes 2 pi j / M, n = 1.
// Latitude: theta in [-pi/2, pi/2], midpoint nodes -pi/2 + (j + 1/2) pi / M,
// even reflection through both poles.
enum class DomainKind { FullCircle, Latitude };

std::string to_string(DomainKind d);
DomainKind domain_from_string(std::string_view name);

double grid_node(DomainKind domain, int M, int j);
std::vector<double> grid_nodes(DomainKind domain, int M);
double grid_spacing(DomainKind domain, int M);

struct Derivatives {
    std::vector<double> d1;
    std::vector<double> d2;
};

// Spectral derivatives of nodal values on the given domain.
Derivatives differentiate(DomainKind domain, std::span<const double> values);

// Smooth interpolant of nodal values, evaluable at any angle (poles included).
class GridInterpolant {
public:
    GridInterpolant(DomainKind domain, std::span<const double> values);
    TrigInterpolant::Jet jet(double theta) const;
    double operator()(double theta) const { return jet(theta).value; }

private:
    TrigInterpolant trig_;
};

struct Radii {
    std::vector<double> r1;  // multiplicity 1
    std::vector<double> r2;  // multiplicity n - 1, empty for n = 1
};

struct ContactPoint {
    double x;  // meridian-plane coordinates
    double y;
    double abs_x;
    double position_angle;
};

// Radii of the axisymmetric body at one meridian angle.
double radius_r2(double theta, double s, double ds, double dds);

// Axisymmetric support function of a convex body (Gauss-map parametrization).
class SupportProfile {
public:
    SupportProfile(DomainKind domain, int n, std::vector<double> values);
    static SupportProfile sample(DomainKind domain, int n, int M, const std::function<double(double)>& s);
    static SupportProfile round(DomainKind domain, int n, int M, double R);

    DomainKind domain() const { return domain_; }
    int n() const { return n_; }
    int size() const { return static_cast<int>(values_.size()); }
    double node(int j) const { return grid_node(domain_, size(), j); }
    std::vector<double> nodes() const { return grid_nodes(domain_, size()); }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    Derivatives differentiate() const;
    Radii radii() const;
    // Reciprocal radii; throws ConvexityLossError on the first non-positive radius.
    Radii curvatures() const;
    ContactPoint contact_point(double theta) const;
    GridInterpolant interpolant() const { return {domain_, values_}; }

private:
    DomainKind domain_;
    int n_;
    std::vector<double> values_;
};

// Radial graph r(y) over the circle, n = 1.
class RadialProfile {
public:
    RadialProfile(SpaceformConfig space, std::vector<double> values);
    static RadialProfile slice(SpaceformConfig space, int M, double r);

    const SpaceformConfig& space() const { return space_; }
    int size() const { return static_cast<int>(values_.size()); }
    double node(int j) const { return grid_node(DomainKind::FullCircle, size(), j); }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    Derivatives differentiate() const;
    std::vector<double> curvatures() const;  // geodesic curvature per node
    std::vector<double> supports() const;    // s = theta / v per node

private:
    SpaceformConfig space_;
    std::vector<double> values_;
};

}  // namespace curveflow

#endif
