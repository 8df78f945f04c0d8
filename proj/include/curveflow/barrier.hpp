#ifndef CURVEFLOW_BARRIER_HPP
#define CURVEFLOW_BARRIER_HPP

#include <optional>
#include <string>

#include "curveflow/anisotropy.hpp"
#include "curveflow/spaceform.hpp"

namespace curveflow {

struct ProblemSpec;
class SupportProfile;
class RadialProfile;

// Slice barriers {r} x S^n. Margins are sigma (f - F) at the slice, with the
// inf (lower) resp. sup (upper) of f over the slice.
struct BarrierPair {
    double r_lower = 0.0;
    double r_upper = 0.0;
    double margin_lower = 0.0;
    double margin_upper = 0.0;
    // Where the inf / sup surrogates cross zero, when bracketed.
    std::optional<double> root_inf;
    std::optional<double> root_sup;
    std::string surrogate;  // "slice-constant" or "inf/sup over slice"
};

// sigma (f - n theta'/theta) on the slice r, using inf or sup of f over the slice.
double slice_gap(const PrescribedData& data, const SpaceformConfig& space, double r, bool use_inf);

BarrierPair find_spherical_barriers(const PrescribedData& data, const SpaceformConfig& space);
BarrierPair find_spherical_barriers(const ProblemSpec& problem);

// Smallest lambda = 2^j with the annulus (1/lambda, lambda) admitting slice
// barriers, for the scaling families; nullopt when the exponent does not allow it.
std::optional<double> scaling_lambda(const PrescribedData& data, int max_doublings = 60);

struct PhiBounds {
    double inf;
    double sup;
};

// Supremum of admissible constants c in f = c s^(1-q) phi at the anchor:
//   Sphere   n cos b / (sup phi sin^(2-q) b), q > 2
//   DeSitter n sinh a / (sup phi cosh^(2-q) a), q < 1
double admissible_constant(SpaceKind kind, int n, PhiBounds phi, double q, double anchor);

enum class BarrierSide { Lower, Upper };

// min (lower) or max (upper) of sigma (f - F) over the nodes.
double validate_barrier(const ProblemSpec& problem, const SupportProfile& profile, BarrierSide side);
double validate_barrier(const ProblemSpec& problem, const RadialProfile& profile, BarrierSide side);

}  // namespace curveflow

#endif
