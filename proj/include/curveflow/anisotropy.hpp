#ifndef CURVEFLOW_ANISOTROPY_HPP
#define CURVEFLOW_ANISOTROPY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curveflow/profile.hpp"
#include "curveflow/spaceform.hpp"
#include "curveflow/sphere_function.hpp"

namespace curveflow {

class Expression;

// Arguments of the prescribed function f(s, x, nu) in the axisymmetric reduction.
struct DataPoint {
    double s;
    double abs_x;
    double normal_angle;
    double position_angle;
};

enum class DataFamily { PowerLaw, CurvatureMeasure, DualMinkowski, LpAleksandrov, Expression };

std::string to_string(DataFamily family);

// Prescribed curvature f > 0.
//   PowerLaw         f = c s^(1-q) phi(nu)
//   CurvatureMeasure sigma_k = s^p |x|^-(n+1) phi(x/|x|)
//   DualMinkowski    sigma_k = s |x|^(q-n-1) phi(nu)
//   LpAleksandrov    sigma_k = s^(1-p) |x|^-(n+1) phi(nu)
// The sigma_k families are stored as f = n C(n,k)^(-1/k) rhs^(1/k) so that
// they pair with the normalized power mean F = n (sigma_k / C(n,k))^(1/k).
class PrescribedData {
public:
    static PrescribedData power_law(int n, double q, SphereFunction phi, double c = 1.0);
    static PrescribedData curvature_measure(int n, double p, int k, SphereFunction phi);
    static PrescribedData dual_minkowski(int n, double q, int k, SphereFunction phi);
    static PrescribedData lp_aleksandrov(int n, double p, int k, SphereFunction phi);
    static PrescribedData expression(int n, const std::string& text);

    double eval(const DataPoint& x) const;
    double operator()(const DataPoint& x) const { return eval(x); }
    // Value without the positivity check.
    double eval_raw(const DataPoint& x) const;

    struct Partials {
        double ds;
        double dabs_x;
        double dnormal;
        double dposition;
    };
    // Central differences with relative step 1e-6.
    Partials partials(const DataPoint& x) const;

    DataFamily family() const { return family_; }
    int n() const { return n_; }
    double exponent() const { return exponent_; }  // q or p
    int k() const { return k_; }
    double constant() const { return c_; }
    const SphereFunction& phi() const { return phi_; }
    const std::string& source() const { return source_; }
    std::string describe() const;
    bool depends_on_abs_x() const;
    // Exponent e with f(lambda x) = lambda^e f(x) for the scaling families.
    std::optional<double> scaling_exponent() const;

    struct Range {
        double inf;
        double sup;
    };
    // Extrema of f over the slice r of the space (s = theta(r), |x| = r, nu = position).
    Range slice_range(const SpaceformConfig& space, double r, int samples = 256) const;

private:
    PrescribedData() = default;

    DataFamily family_ = DataFamily::PowerLaw;
    int n_ = 1;
    double exponent_ = 0.0;
    int k_ = 1;
    double c_ = 1.0;
    SphereFunction phi_;
    std::shared_ptr<const Expression> expr_;
    std::string source_;
};

// Normalization n C(n,k)^(-1/k) of the sigma_k families.
double sigma_k_factor(int n, int k);

struct ConditionVerdict {
    bool holds = false;
    double worst_margin = 0.0;  // signed, per the checked inequality
    double worst_r = 0.0;
    double worst_angle = 0.0;
    std::size_t samples = 0;
};

// Hessian of -1/f in x plus K_N (-1/f) g must be negative definite; s and nu
// are frozen at their slice values at each sample.
ConditionVerdict check_flow_main_condition(const PrescribedData& data, const SpaceformConfig& space,
                                           int radial_samples = 24, int angular_samples = 64);

enum class GuanMaVariant { CaseI, CaseII, DeSitter, FireyP };

std::string to_string(GuanMaVariant v);
GuanMaVariant guanma_variant_from_string(const std::string& name);

struct GuanMaVerdict {
    bool holds = false;
    double min_value = 0.0;  // minimum of the tested operator (sign-adjusted)
    double worst_theta = 0.0;
};

// Axisymmetric spherical Hessian condition on u = phi^(1/q):
//   CaseI u'' + u > 0, CaseII u'' + (q-1)/q u > 0, DeSitter u - u'' > 0.
// FireyP tests u'' + u >= 0 for u = phi^(-1/q), q playing p + k - 1.
// On the latitude domain (n >= 2) the azimuthal eigenvalue -tan(theta) u' is tested too.
GuanMaVerdict check_guanma(const SphereFunction& phi, double q, GuanMaVariant variant,
                           DomainKind domain = DomainKind::FullCircle, int M = 256);

// I(theta) = int_theta^{pi/2} psi(a) cos^(n-1)(a) sin(a) da.
double firey_integral(const SphereFunction& psi, int n, double theta);
// G(theta) = psi(theta) - (n - k) I(theta) / cos^n(theta).
double firey_G_at(const SphereFunction& psi, int n, int k, double theta);
std::vector<double> firey_G(const SphereFunction& psi, int n, int k, std::span<const double> theta_grid);

struct FireyReport {
    bool finite_limits = false;
    bool integral_positive = false;
    bool G_positive = false;
    double limit_minus = 0.0;
    double limit_plus = 0.0;
    double min_integral = 0.0;  // over the interior grid
    double pole_integral = 0.0;  // I(-pi/2)
    double min_G = 0.0;
    double worst_theta = 0.0;
    bool all() const { return finite_limits && integral_positive && G_positive; }
};

// Grid theta_j = -pi/2 + j pi / M, j = 1..M-1.
FireyReport check_firey(const SphereFunction& psi, int n, int k, int M = 256);

}  // namespace curveflow

#endif
