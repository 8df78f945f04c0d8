#include "curveflow/spaceform.hpp"

#include <cmath>
#include <numbers>

#include "curveflow/error.hpp"

namespace curveflow {

std::string to_string(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::Euclid: return "euclid";
        case SpaceKind::Sphere: return "sphere";
        case SpaceKind::Hyperbolic: return "hyperbolic";
        case SpaceKind::DeSitter: return "desitter";
    }
    return "unknown";
}

SpaceKind space_kind_from_string(std::string_view name) {
    if (name == "euclid") return SpaceKind::Euclid;
    if (name == "sphere") return SpaceKind::Sphere;
    if (name == "hyperbolic") return SpaceKind::Hyperbolic;
    if (name == "desitter") return SpaceKind::DeSitter;
    throw ParameterError("unknown space kind '" + std::string(name) + "'");
}

Warping warping_unchecked(SpaceKind kind, double r) {
    switch (kind) {
        case SpaceKind::Euclid: return {r, 1.0};
        case SpaceKind::Sphere: return {std::sin(r), std::cos(r)};
        case SpaceKind::Hyperbolic: return {std::sinh(r), std::cosh(r)};
        case SpaceKind::DeSitter: return {std::cosh(r), std::sinh(r)};
    }
    return {r, 1.0};
}

SpaceformConfig::SpaceformConfig(SpaceKind kind, double a, double b) : kind_(kind), a_(a), b_(b) {
    if (!(a < b)) throw DomainError("annulus requires a < b");
    // De Sitter slices are spacelike for all r >= 0; the others need a > 0.
    if (kind != SpaceKind::DeSitter && !(a > 0.0)) throw DomainError("annulus requires a > 0");
    if (kind == SpaceKind::DeSitter && a < 0.0) throw DomainError("de Sitter annulus requires a >= 0");
    if (kind == SpaceKind::Sphere && !(b <= std::numbers::pi / 2))
        throw DomainError("hemisphere annulus requires b <= pi/2");
}

int SpaceformConfig::sectional_curvature() const {
    switch (kind_) {
        case SpaceKind::Euclid: return 0;
        case SpaceKind::Sphere: return 1;
        case SpaceKind::Hyperbolic: return -1;
        case SpaceKind::DeSitter: return 1;
    }
    return 0;
}

int SpaceformConfig::signature() const { return kind_ == SpaceKind::DeSitter ? -1 : 1; }

bool SpaceformConfig::contains(double r) const { return r >= a_ && r <= b_; }

void SpaceformConfig::require_inside(double r) const {
    if (!contains(r))
        throw DomainError("radius " + std::to_string(r) + " outside annulus [" + std::to_string(a_) + ", " +
                          std::to_string(b_) + "]");
}

Warping SpaceformConfig::warping(double r) const {
    require_inside(r);
    return warping_unchecked(kind_, r);
}

double SpaceformConfig::slice_curvature(double r) const {
    const Warping w = warping(r);
    return w.dtheta / w.theta;
}

double SpaceformConfig::graph_support(double r, double dr) const {
    const Warping w = warping(r);
    const double v2 = 1.0 + signature() * dr / (w.theta * w.theta);
    if (!(v2 > 0.0)) throw DomainError("graph is not spacelike");
    return w.theta / std::sqrt(v2);
}

double SpaceformConfig::radial_graph_curvature(double r, double dr, double ddr) const {
    if (kind_ == SpaceKind::DeSitter) throw UnsupportedError("radial graph curvature: de Sitter is barrier arithmetic only");
    const Warping w = warping(r);
    const double q = dr * dr + w.theta * w.theta;
    return (w.theta * w.theta * w.dtheta + 2.0 * w.dtheta * dr * dr - w.theta * ddr) / (q * std::sqrt(q));
}

}  // namespace curveflow
