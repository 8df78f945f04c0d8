#include "curveflow/profile.hpp"

#include <cmath>
#include <numbers>

#include "curveflow/error.hpp"

namespace curveflow {

namespace {

constexpr double pi = std::numbers::pi;

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

void require_grid(DomainKind domain, std::size_t m) {
    if (m < 16) throw ParameterError("profile grids need at least 16 nodes");
    if (domain == DomainKind::FullCircle && !is_power_of_two(static_cast<int>(m)))
        throw ParameterError("full-circle grids must have a power-of-two size");
}

// Latitude samples continued through the poles to a 2M-periodic sequence.
std::vector<double> even_extension(std::span<const double> values) {
    const std::size_t m = values.size();
    std::vector<double> ext(2 * m);
    for (std::size_t j = 0; j < m; ++j) {
        ext[j] = values[j];
        ext[2 * m - 1 - j] = values[j];
    }
    return ext;
}

}  // namespace

std::string to_string(DomainKind d) { return d == DomainKind::FullCircle ? "full_circle" : "latitude"; }

DomainKind domain_from_string(std::string_view name) {
    if (name == "full_circle") return DomainKind::FullCircle;
    if (name == "latitude") return DomainKind::Latitude;
    throw ParameterError("unknown domain '" + std::string(name) + "' (expected full_circle or latitude)");
}

double grid_node(DomainKind domain, int M, int j) {
    if (domain == DomainKind::FullCircle) return 2.0 * pi * j / M;
    return -0.5 * pi + (j + 0.5) * pi / M;
}

std::vector<double> grid_nodes(DomainKind domain, int M) {
    std::vector<double> t(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) t[j] = grid_node(domain, M, j);
    return t;
}

double grid_spacing(DomainKind domain, int M) { return (domain == DomainKind::FullCircle ? 2.0 * pi : pi) / M; }

Derivatives differentiate(DomainKind domain, std::span<const double> values) {
    const std::size_t m = values.size();
    Derivatives d{std::vector<double>(m), std::vector<double>(m)};
    if (domain == DomainKind::FullCircle) {
        periodic_derivatives(values, d.d1, d.d2);
        return d;
    }
    const std::vector<double> ext = even_extension(values);
    std::vector<double> e1(ext.size()), e2(ext.size());
    periodic_derivatives(ext, e1, e2);
    std::copy_n(e1.begin(), m, d.d1.begin());
    std::copy_n(e2.begin(), m, d.d2.begin());
    return d;
}

GridInterpolant::GridInterpolant(DomainKind domain, std::span<const double> values) {
    if (domain == DomainKind::FullCircle) {
        trig_ = TrigInterpolant(values, 0.0);
    } else {
        const std::vector<double> ext = even_extension(values);
        trig_ = TrigInterpolant(ext, grid_node(domain, static_cast<int>(values.size()), 0));
    }
}

TrigInterpolant::Jet GridInterpolant::jet(double theta) const { return trig_.jet(theta); }

double radius_r2(double theta, double s, double ds, double dds) {
    const double c = std::cos(theta);
    // Umbilic limit at the poles.
    if (std::abs(c) < 1e-12) return s + dds;
    return s - ds * std::sin(theta) / c;
}

SupportProfile::SupportProfile(DomainKind domain, int n, std::vector<double> values)
    : domain_(domain), n_(n), values_(std::move(values)) {
    if (n < 1) throw ParameterError("profile dimension must be >= 1");
    if (domain == DomainKind::FullCircle && n != 1) throw ParameterError("full-circle profiles are curves (n = 1)");
    require_grid(domain, values_.size());
}

SupportProfile SupportProfile::sample(DomainKind domain, int n, int M, const std::function<double(double)>& s) {
    std::vector<double> v(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) v[j] = s(grid_node(domain, M, j));
    return {domain, n, std::move(v)};
}

SupportProfile SupportProfile::round(DomainKind domain, int n, int M, double R) {
    return {domain, n, std::vector<double>(static_cast<std::size_t>(M), R)};
}

Derivatives SupportProfile::differentiate() const { return curveflow::differentiate(domain_, values_); }

Radii SupportProfile::radii() const {
    const Derivatives d = differentiate();
    const std::size_t m = values_.size();
    Radii r;
    r.r1.resize(m);
    for (std::size_t j = 0; j < m; ++j) r.r1[j] = d.d2[j] + values_[j];
    if (n_ >= 2) {
        r.r2.resize(m);
        for (std::size_t j = 0; j < m; ++j)
            r.r2[j] = radius_r2(node(static_cast<int>(j)), values_[j], d.d1[j], d.d2[j]);
    }
    return r;
}

Radii SupportProfile::curvatures() const {
    Radii r = radii();
    auto invert = [](std::vector<double>& v) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (!(v[j] > 0.0)) throw ConvexityLossError(j, v[j]);
            v[j] = 1.0 / v[j];
        }
    };
    invert(r.r1);
    invert(r.r2);
    return r;
}

ContactPoint SupportProfile::contact_point(double theta) const {
    const auto j = interpolant().jet(theta);
    const double c = std::cos(theta), s = std::sin(theta);
    // x = s nu + s' nu_perp
    ContactPoint p;
    p.x = j.value * c - j.d1 * s;
    p.y = j.value * s + j.d1 * c;
    p.abs_x = std::hypot(j.value, j.d1);
    p.position_angle = theta + std::atan2(j.d1, j.value);
    return p;
}

RadialProfile::RadialProfile(SpaceformConfig space, std::vector<double> values)
    : space_(space), values_(std::move(values)) {
    if (!space_.riemannian()) throw UnsupportedError("de Sitter space supports barrier arithmetic only");
    require_grid(DomainKind::FullCircle, values_.size());
    for (double r : values_)
        if (!space_.contains(r)) throw DomainError("radial profile leaves the annulus (r = " + std::to_string(r) + ")");
}

RadialProfile RadialProfile::slice(SpaceformConfig space, int M, double r) {
    return {space, std::vector<double>(static_cast<std::size_t>(M), r)};
}

Derivatives RadialProfile::differentiate() const { return curveflow::differentiate(DomainKind::FullCircle, values_); }

std::vector<double> RadialProfile::curvatures() const {
    const Derivatives d = differentiate();
    std::vector<double> k(values_.size());
    for (std::size_t j = 0; j < values_.size(); ++j)
        k[j] = space_.radial_graph_curvature(values_[j], d.d1[j], d.d2[j]);
    return k;
}

std::vector<double> RadialProfile::supports() const {
    const Derivatives d = differentiate();
    std::vector<double> s(values_.size());
    for (std::size_t j = 0; j < values_.size(); ++j) s[j] = space_.graph_support(values_[j], d.d1[j] * d.d1[j]);
    return s;
}

}  // namespace curveflow
