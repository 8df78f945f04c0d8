#ifndef CURVEFLOW_VERIFY_HPP
#define CURVEFLOW_VERIFY_HPP

#include <string>
#include <vector>

#include "curveflow/anisotropy.hpp"
#include "curveflow/problem.hpp"
#include "curveflow/profile.hpp"

namespace curveflow {

struct ResidualReport {
    double sup = 0.0;
    std::vector<double> nodewise;  // F(kappa) - f
};

ResidualReport residual(const SupportProfile& profile, const ProblemSpec& p);
ResidualReport residual(const RadialProfile& profile, const ProblemSpec& p);

struct ManufacturedPair {
    SupportProfile s_star;
    PrescribedData data;  // power law with the phi that makes s_star exact
    double q;
};

// n = 1, F = curvature: phi(theta) = kappa(theta) s*(theta)^(q-1) with
// kappa = 1 / (s*'' + s*) from a spectrally exact interpolant of the base.
ManufacturedPair make_manufactured(double q, const SphereFunction& base, int M);
ManufacturedPair make_manufactured(double q, const std::string& base_expression, int M);

struct OracleOptions {
    double omega = 0.5;
    double tol = 1e-12;
    int max_iterations = 10000;
};

struct OracleResult {
    SupportProfile profile;
    int iterations = 0;
    bool bordered = false;       // first harmonics pinned by multipliers
    double gauge_multiplier = 0.0;
    double final_update = 0.0;
};

// Damped Newton on the collocation system s'' + s = 1 / f(s, x, nu) built
// from dense Fourier differentiation matrices. Throws OracleError on failure.
OracleResult bvp_oracle_n1(const ProblemSpec& p, const SupportProfile& initial, const OracleOptions& o = {});

// Removes the discrete cos/sin first harmonics (translations of the body).
std::vector<double> remove_first_harmonics(std::span<const double> values);
double gauge_fixed_gap(std::span<const double> a, std::span<const double> b);

struct FireyCrosscheck {
    double sup_gap = 0.0;
    std::vector<double> G_quadrature;
    std::vector<double> G_product;
};

// psi = sigma_k of the principal radii; compares the integral G with
// C(n-1, k-1) r1 r2^(k-1) at the grid nodes.
FireyCrosscheck firey_crosscheck(const SupportProfile& profile, int k);

}  // namespace curveflow

#endif
