#include "curveflow/anisotropy.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "curveflow/curvfun.hpp"
#include "curveflow/error.hpp"
#include "curveflow/expr.hpp"
#include "curveflow/parallel.hpp"

namespace curveflow {

namespace {

constexpr double pi = std::numbers::pi;

void require_k(int n, int k) {
    if (k < 1 || k > n) throw ParameterError("sigma_k family needs 1 <= k <= n");
}

}  // namespace

std::string to_string(DataFamily family) {
    switch (family) {
        case DataFamily::PowerLaw: return "power_law";
        case DataFamily::CurvatureMeasure: return "curvature_measure";
        case DataFamily::DualMinkowski: return "dual_minkowski";
        case DataFamily::LpAleksandrov: return "lp_aleksandrov";
        case DataFamily::Expression: return "expression";
    }
    return "unknown";
}

double sigma_k_factor(int n, int k) { return n * std::pow(binomial(n, k), -1.0 / k); }

PrescribedData PrescribedData::power_law(int n, double q, SphereFunction phi, double c) {
    if (!(c > 0.0)) throw ParameterError("power-law constant must be positive");
    PrescribedData d;
    d.family_ = DataFamily::PowerLaw;
    d.n_ = n;
    d.exponent_ = q;
    d.c_ = c;
    d.phi_ = std::move(phi);
    return d;
}

PrescribedData PrescribedData::curvature_measure(int n, double p, int k, SphereFunction phi) {
    require_k(n, k);
    PrescribedData d;
    d.family_ = DataFamily::CurvatureMeasure;
    d.n_ = n;
    d.exponent_ = p;
    d.k_ = k;
    d.c_ = sigma_k_factor(n, k);
    d.phi_ = std::move(phi);
    return d;
}

PrescribedData PrescribedData::dual_minkowski(int n, double q, int k, SphereFunction phi) {
    require_k(n, k);
    PrescribedData d = curvature_measure(n, 0.0, k, std::move(phi));
    d.family_ = DataFamily::DualMinkowski;
    d.exponent_ = q;
    return d;
}

PrescribedData PrescribedData::lp_aleksandrov(int n, double p, int k, SphereFunction phi) {
    require_k(n, k);
    PrescribedData d = curvature_measure(n, 0.0, k, std::move(phi));
    d.family_ = DataFamily::LpAleksandrov;
    d.exponent_ = p;
    return d;
}

PrescribedData PrescribedData::expression(int n, const std::string& text) {
    PrescribedData d;
    d.family_ = DataFamily::Expression;
    d.n_ = n;
    d.expr_ = std::make_shared<Expression>(Expression::parse(text));
    d.source_ = text;
    return d;
}

double PrescribedData::eval_raw(const DataPoint& x) const {
    const double n1 = n_ + 1.0;
    switch (family_) {
        case DataFamily::PowerLaw: return c_ * std::pow(x.s, 1.0 - exponent_) * phi_(x.normal_angle);
        case DataFamily::CurvatureMeasure:
            return c_ * std::pow(std::pow(x.s, exponent_) * std::pow(x.abs_x, -n1) * phi_(x.position_angle), 1.0 / k_);
        case DataFamily::DualMinkowski:
            return c_ * std::pow(x.s * std::pow(x.abs_x, exponent_ - n1) * phi_(x.normal_angle), 1.0 / k_);
        case DataFamily::LpAleksandrov:
            return c_ * std::pow(std::pow(x.s, 1.0 - exponent_) * std::pow(x.abs_x, -n1) * phi_(x.normal_angle),
                                 1.0 / k_);
        case DataFamily::Expression:
            return expr_->eval(ExprVariables{x.normal_angle, x.s, x.abs_x, x.position_angle});
    }
    return 0.0;
}

double PrescribedData::eval(const DataPoint& x) const {
    if (!(x.s > 0.0)) throw DomainError("prescribed data needs s > 0");
    const double v = eval_raw(x);
    if (!(v > 0.0) || !std::isfinite(v))
        throw DataError("prescribed data is not positive (f = " + std::to_string(v) + " at theta = " +
                        std::to_string(x.normal_angle) + ")");
    return v;
}

PrescribedData::Partials PrescribedData::partials(const DataPoint& x) const {
    auto central = [&](double DataPoint::*field) {
        const double h = 1e-6 * std::max(1.0, std::abs(x.*field));
        DataPoint p = x, m = x;
        p.*field += h;
        m.*field -= h;
        return (eval(p) - eval(m)) / (2.0 * h);
    };
    return {central(&DataPoint::s), central(&DataPoint::abs_x), central(&DataPoint::normal_angle),
            central(&DataPoint::position_angle)};
}

std::string PrescribedData::describe() const {
    auto num = [](double v) {
        std::string s = std::to_string(v);
        s.erase(s.find_last_not_of('0') + 1);
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    };
    switch (family_) {
        case DataFamily::PowerLaw:
            return num(c_) + " * s^(1-" + num(exponent_) + ") * phi(nu), phi = " + phi_.describe();
        case DataFamily::CurvatureMeasure:
            return "sigma_" + std::to_string(k_) + " = s^" + num(exponent_) + " |x|^-" + std::to_string(n_ + 1) +
                   " phi(x/|x|), phi = " + phi_.describe();
        case DataFamily::DualMinkowski:
            return "|x|^(" + std::to_string(n_ + 1) + "-" + num(exponent_) + ") sigma_" + std::to_string(k_) +
                   " = s phi(nu), phi = " + phi_.describe();
        case DataFamily::LpAleksandrov:
            return "|x|^" + std::to_string(n_ + 1) + " sigma_" + std::to_string(k_) + " = s^(1-" + num(exponent_) +
                   ") phi(nu), phi = " + phi_.describe();
        case DataFamily::Expression: return "f = " + source_;
    }
    return {};
}

bool PrescribedData::depends_on_abs_x() const {
    switch (family_) {
        case DataFamily::PowerLaw: return false;
        case DataFamily::Expression: return expr_->depends_on_absx() || expr_->depends_on_psi();
        default: return true;
    }
}

std::optional<double> PrescribedData::scaling_exponent() const {
    const double n1 = n_ + 1.0;
    switch (family_) {
        case DataFamily::PowerLaw: return 1.0 - exponent_;
        case DataFamily::CurvatureMeasure: return (exponent_ - n1) / k_;
        case DataFamily::DualMinkowski: return (exponent_ - n_) / k_;
        case DataFamily::LpAleksandrov: return (-exponent_ - n_) / k_;
        case DataFamily::Expression: return std::nullopt;
    }
    return std::nullopt;
}

PrescribedData::Range PrescribedData::slice_range(const SpaceformConfig& space, double r, int samples) const {
    const double theta = warping_unchecked(space.kind(), r).theta;
    Range out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    const bool circle = n_ == 1;
    for (int j = 0; j < samples; ++j) {
        const double a = circle ? 2.0 * pi * j / samples : -0.5 * pi + (j + 0.5) * pi / samples;
        const double v = eval(DataPoint{theta, r, a, a});
        out.inf = std::min(out.inf, v);
        out.sup = std::max(out.sup, v);
    }
    return out;
}

ConditionVerdict check_flow_main_condition(const PrescribedData& data, const SpaceformConfig& space,
                                           int radial_samples, int angular_samples) {
    if (!space.riemannian()) throw UnsupportedError("flow condition: de Sitter is barrier arithmetic only");
    const int n = data.n();
    const double a = space.inner(), b = space.outer();
    const double hr = 1e-4 * (b - a);
    const double ha = 1e-4;
    const double K = space.sectional_curvature();
    ConditionVerdict v;
    v.worst_margin = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < radial_samples; ++i) {
        const double r = a + (i + 0.5) * (b - a) / radial_samples;
        const Warping w = space.warping(r);
        const double ratio = w.dtheta / w.theta;
        for (int j = 0; j < angular_samples; ++j) {
            const double psi =
                n == 1 ? 2.0 * pi * j / angular_samples : -0.5 * pi + (j + 0.5) * pi / angular_samples;
            // s and nu ride along as frozen parameters.
            auto phi = [&](double rr, double pp) { return -1.0 / data.eval(DataPoint{w.theta, rr, psi, pp}); };
            const double f0 = phi(r, psi);
            const double fr = (phi(r + hr, psi) - phi(r - hr, psi)) / (2 * hr);
            const double fp = (phi(r, psi + ha) - phi(r, psi - ha)) / (2 * ha);
            const double frr = (phi(r + hr, psi) - 2 * f0 + phi(r - hr, psi)) / (hr * hr);
            const double fpp = (phi(r, psi + ha) - 2 * f0 + phi(r, psi - ha)) / (ha * ha);
            const double frp = (phi(r + hr, psi + ha) - phi(r + hr, psi - ha) - phi(r - hr, psi + ha) +
                                phi(r - hr, psi - ha)) /
                               (4 * hr * ha);
            // Orthonormal frame (d_r, d_psi / theta) of the warped metric.
            const double h11 = frr + K * f0;
            const double h22 = fpp / (w.theta * w.theta) + ratio * fr + K * f0;
            const double h12 = (frp - ratio * fp) / w.theta;
            double top = 0.5 * (h11 + h22) + std::sqrt(0.25 * (h11 - h22) * (h11 - h22) + h12 * h12);
            if (n >= 2) top = std::max(top, ratio * fr - std::tan(psi) * fp / (w.theta * w.theta) + K * f0);
            ++v.samples;
            if (top > v.worst_margin) {
                v.worst_margin = top;
                v.worst_r = r;
                v.worst_angle = psi;
            }
        }
    }
    v.holds = v.worst_margin < -1e-10;
    return v;
}

std::string to_string(GuanMaVariant v) {
    switch (v) {
        case GuanMaVariant::CaseI: return "i";
        case GuanMaVariant::CaseII: return "ii";
        case GuanMaVariant::DeSitter: return "desitter";
        case GuanMaVariant::FireyP: return "firey_p";
    }
    return "?";
}

GuanMaVariant guanma_variant_from_string(const std::string& name) {
    if (name == "i") return GuanMaVariant::CaseI;
    if (name == "ii") return GuanMaVariant::CaseII;
    if (name == "desitter") return GuanMaVariant::DeSitter;
    if (name == "firey_p") return GuanMaVariant::FireyP;
    throw ParameterError("unknown Guan-Ma variant '" + name + "' (expected i, ii, desitter, firey_p)");
}

GuanMaVerdict check_guanma(const SphereFunction& phi, double q, GuanMaVariant variant, DomainKind domain, int M) {
    if (q == 0.0) throw ParameterError("Guan-Ma condition needs q != 0");
    const double e = variant == GuanMaVariant::FireyP ? -1.0 / q : 1.0 / q;
    const double c = variant == GuanMaVariant::CaseII ? (q - 1.0) / q : 1.0;
    const double sign = variant == GuanMaVariant::DeSitter ? -1.0 : 1.0;
    std::vector<double> u(static_cast<std::size_t>(M));
    const std::vector<double> t = grid_nodes(domain, M);
    for (int j = 0; j < M; ++j) {
        const double p = phi(t[j]);
        if (!(p > 0.0)) throw DataError("Guan-Ma check needs phi > 0");
        u[j] = std::pow(p, e);
    }
    const Derivatives d = differentiate(domain, u);
    GuanMaVerdict v;
    v.min_value = std::numeric_limits<double>::infinity();
    for (int j = 0; j < M; ++j) {
        // Eigenvalues of D^2 u in the meridian and azimuthal directions.
        double value = c * u[j] + sign * d.d2[j];
        if (domain == DomainKind::Latitude) value = std::min(value, c * u[j] - sign * std::tan(t[j]) * d.d1[j]);
        if (value < v.min_value) {
            v.min_value = value;
            v.worst_theta = t[j];
        }
    }
    v.holds = variant == GuanMaVariant::FireyP ? v.min_value >= -1e-10 : v.min_value > 1e-10;
    return v;
}

namespace {

using Gauss64 = boost::math::quadrature::gauss<double, 64>;

template <class Fn>
double composite(Fn&& g, double lo, double hi, double panel = 0.5) {
    if (hi <= lo) return 0.0;
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel)));
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = lo + (hi - lo) * i / panels;
        const double x1 = lo + (hi - lo) * (i + 1) / panels;
        sum += Gauss64::integrate(g, x0, x1);
    }
    return sum;
}

double alpha_form(const SphereFunction& psi, int n, double theta) {
    return composite([&](double a) { return psi(a) * std::pow(std::cos(a), n - 1) * std::sin(a); }, theta, 0.5 * pi);
}

// int_0^1 psi(sign * arccos(c w)) w^(n-1) dw
double scaled_form(const SphereFunction& psi, int n, double c, double sign) {
    return composite([&](double w) { return psi(sign * std::acos(c * w)) * std::pow(w, n - 1); }, 0.0, 1.0);
}

}  // namespace

double firey_integral(const SphereFunction& psi, int n, double theta) { return alpha_form(psi, n, theta); }

namespace {

// I(-pi/2), snapped to zero when it is at rounding level: near the south pole it
// is divided by cos^n and would otherwise dominate G.
double pole_total(const SphereFunction& psi, int n) {
    const double total = alpha_form(psi, n, -0.5 * pi);
    const double mass = composite(
        [&](double a) { return std::abs(psi(a) * std::pow(std::cos(a), n - 1) * std::sin(a)); }, -0.5 * pi, 0.5 * pi);
    return std::abs(total) <= 64 * std::numeric_limits<double>::epsilon() * mass ? 0.0 : total;
}

// total = I(-pi/2), needed only south of the equator.
double G_with_total(const SphereFunction& psi, int n, int k, double theta, double total) {
    const double c = std::max(0.0, std::cos(theta));
    double quotient;  // I(theta) / cos^n(theta)
    if (c >= 0.5) {
        quotient = alpha_form(psi, n, theta) / std::pow(c, n);
    } else if (theta > 0.0) {
        quotient = scaled_form(psi, n, c, 1.0);
    } else {
        quotient = scaled_form(psi, n, c, -1.0);
        if (c > 0.0)
            quotient += total / std::pow(c, n);
        else if (std::abs(total) > 1e-10)
            quotient = std::copysign(std::numeric_limits<double>::infinity(), total);
    }
    return psi(theta) - (n - k) * quotient;
}

}  // namespace

double firey_G_at(const SphereFunction& psi, int n, int k, double theta) {
    if (!(1 <= k && k <= n)) throw ParameterError("Firey G needs 1 <= k <= n");
    const double total = theta < 0.0 ? pole_total(psi, n) : 0.0;
    return G_with_total(psi, n, k, theta, total);
}

std::vector<double> firey_G(const SphereFunction& psi, int n, int k, std::span<const double> theta_grid) {
    if (!(1 <= k && k <= n)) throw ParameterError("Firey G needs 1 <= k <= n");
    const double total = pole_total(psi, n);
    std::vector<double> g(theta_grid.size());
    for_each_index(
        Exec::Parallel, theta_grid.size(),
        [&](std::size_t j) { g[j] = G_with_total(psi, n, k, theta_grid[j], total); }, 8);
    return g;
}

FireyReport check_firey(const SphereFunction& psi, int n, int k, int M) {
    FireyReport rep;
    // (i) limits at the poles: the values must settle as theta -> +-pi/2.
    auto limit = [&](double sign, double& out) {
        double prev = psi(sign * (0.5 * pi - 1e-3));
        bool ok = std::isfinite(prev);
        for (int e = 4; e <= 8 && ok; ++e) {
            const double v = psi(sign * (0.5 * pi - std::pow(10.0, -e)));
            ok = std::isfinite(v) && std::abs(v - prev) <= 1e-3 * (1.0 + std::abs(v));
            prev = v;
        }
        out = prev;
        return ok;
    };
    rep.finite_limits = limit(-1.0, rep.limit_minus) && limit(1.0, rep.limit_plus);

    rep.pole_integral = firey_integral(psi, n, -0.5 * pi);
    rep.min_integral = std::numeric_limits<double>::infinity();
    rep.min_G = std::numeric_limits<double>::infinity();
    std::vector<double> grid;
    for (int j = 1; j < M; ++j) grid.push_back(-0.5 * pi + j * pi / M);
    for (double t : grid) rep.min_integral = std::min(rep.min_integral, firey_integral(psi, n, t));
    rep.integral_positive = rep.min_integral > 0.0 && std::abs(rep.pole_integral) <= 1e-10;

    const std::vector<double> g = firey_G(psi, n, k, grid);
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (g[j] < rep.min_G) {
            rep.min_G = g[j];
            rep.worst_theta = grid[j];
        }
    }
    rep.G_positive = rep.min_G > 1e-10;
    return rep;
}

}  // namespace curveflow
