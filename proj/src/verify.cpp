#include "curveflow/verify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "curveflow/curvfun.hpp"
#include "curveflow/error.hpp"
#include "curveflow/kernels.hpp"
#include "curveflow/spectral.hpp"

namespace curveflow {

namespace {

ResidualReport from_nodes(std::span<const NodeEval> nodes) {
    ResidualReport r;
    r.nodewise.resize(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        r.nodewise[j] = nodes[j].F - nodes[j].f;
        r.sup = std::max(r.sup, std::abs(r.nodewise[j]));
    }
    return r;
}

}  // namespace

ResidualReport residual(const SupportProfile& profile, const ProblemSpec& p) {
    if (p.parametrization() != Parametrization::Support) throw UnsupportedError("support residual is Euclidean only");
    std::vector<NodeEval> nodes(profile.values().size());
    evaluate_nodes(p, profile.values(), profile.differentiate(), nodes, Exec::Serial);
    return from_nodes(nodes);
}

ResidualReport residual(const RadialProfile& profile, const ProblemSpec& p) {
    const Derivatives d = profile.differentiate();
    const auto& r = profile.values();
    std::vector<NodeEval> nodes(r.size());
    for (std::size_t j = 0; j < r.size(); ++j)
        nodes[j] = evaluate_radial_node(p, profile.node(static_cast<int>(j)), r[j], d.d1[j], d.d2[j], j);
    return from_nodes(nodes);
}

ManufacturedPair make_manufactured(double q, const SphereFunction& base, int M) {
    constexpr int fine = 1024;
    const SupportProfile dense = SupportProfile::sample(DomainKind::FullCircle, 1, fine, base);
    const Radii r = dense.radii();
    for (int j = 0; j < fine; ++j) {
        if (!(dense.values()[j] > 0.0)) throw DomainError("manufactured base must be positive");
        if (!(r.r1[j] > 0.0)) throw ConvexityLossError(static_cast<std::size_t>(j), r.r1[j]);
    }
    auto interp = std::make_shared<GridInterpolant>(dense.interpolant());
    auto phi = SphereFunction::from_callable(
        [interp, q](double theta) {
            const auto j = interp->jet(theta);
            return std::pow(j.value, q - 1.0) / (j.d2 + j.value);
        },
        "manufactured from s* = " + base.describe(), base.even());
    return {SupportProfile::sample(DomainKind::FullCircle, 1, M, base), PrescribedData::power_law(1, q, phi), q};
}

ManufacturedPair make_manufactured(double q, const std::string& base_expression, int M) {
    return make_manufactured(q, SphereFunction::from_expression(base_expression), M);
}

std::vector<double> remove_first_harmonics(std::span<const double> values) {
    const std::size_t m = values.size();
    double a = 0.0, b = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double t = 2.0 * std::numbers::pi * j / m;
        a += values[j] * std::cos(t);
        b += values[j] * std::sin(t);
    }
    a *= 2.0 / m;
    b *= 2.0 / m;
    std::vector<double> out(values.begin(), values.end());
    for (std::size_t j = 0; j < m; ++j) {
        const double t = 2.0 * std::numbers::pi * j / m;
        out[j] -= a * std::cos(t) + b * std::sin(t);
    }
    return out;
}

double gauge_fixed_gap(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ParameterError("profiles on different grids");
    const auto pa = remove_first_harmonics(a);
    const auto pb = remove_first_harmonics(b);
    double g = 0.0;
    for (std::size_t j = 0; j < pa.size(); ++j) g = std::max(g, std::abs(pa[j] - pb[j]));
    return g;
}

OracleResult bvp_oracle_n1(const ProblemSpec& p, const SupportProfile& initial, const OracleOptions& o) {
    if (p.n != 1 || p.parametrization() != Parametrization::Support)
        throw UnsupportedError("the periodic oracle covers Euclidean curves (n = 1) only");
    const int M = initial.size();
    using Mat = Eigen::MatrixXd;
    using Vec = Eigen::VectorXd;
    const std::vector<double> d1 = fourier_diff_matrix(M, 1);
    const std::vector<double> d2 = fourier_diff_matrix(M, 2);
    const Mat D1 = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(d1.data(), M, M);
    const Mat D2 = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(d2.data(), M, M);
    Vec theta(M), c1(M), s1(M);
    for (int j = 0; j < M; ++j) {
        theta[j] = 2.0 * std::numbers::pi * j / M;
        c1[j] = std::cos(theta[j]);
        s1[j] = std::sin(theta[j]);
    }
    // 1/F for n = 1 curves is the radius; the equation reads s'' + s = 1/f.
    auto g = [&](int j, double s, double ds) {
        try {
            return 1.0 / p.data.eval(DataPoint{s, std::hypot(s, ds), theta[j], theta[j] + std::atan2(ds, s)});
        } catch (const Error& e) {
            throw OracleError(std::string("oracle iterate left the data domain: ") + e.what());
        }
    };
    Vec s = Eigen::Map<const Vec>(initial.values().data(), M);
    OracleResult res{initial};
    bool bordered = false;
    double mu_norm = 0.0;
    for (int it = 1; it <= o.max_iterations; ++it) {
        const Vec ds = D1 * s;
        Vec R = D2 * s + s;
        Vec gs(M), gd(M);
        for (int j = 0; j < M; ++j) {
            R[j] -= g(j, s[j], ds[j]);
            const double hs = 1e-7 * std::max(1.0, std::abs(s[j]));
            const double hd = 1e-7 * std::max(1.0, std::abs(ds[j]));
            gs[j] = (g(j, s[j] + hs, ds[j]) - g(j, s[j] - hs, ds[j])) / (2 * hs);
            gd[j] = (g(j, s[j], ds[j] + hd) - g(j, s[j], ds[j] - hd)) / (2 * hd);
        }
        Mat J = D2 + Mat::Identity(M, M);
        J.diagonal() -= gs;
        J -= gd.asDiagonal() * D1;
        Vec delta;
        if (!bordered) {
            Eigen::FullPivLU<Mat> lu(J);
            lu.setThreshold(1e-10);
            if (lu.rank() == M) {
                delta = lu.solve(-R);
            } else {
                bordered = true;
            }
        }
        if (bordered) {
            // Translations span the kernel; pin the first harmonics with multipliers.
            Mat A = Mat::Zero(M + 2, M + 2);
            A.topLeftCorner(M, M) = J;
            A.block(0, M, M, 1) = c1;
            A.block(0, M + 1, M, 1) = s1;
            A.block(M, 0, 1, M) = c1.transpose();
            A.block(M + 1, 0, 1, M) = s1.transpose();
            Vec rhs(M + 2);
            rhs.head(M) = -R;
            rhs[M] = -c1.dot(s);
            rhs[M + 1] = -s1.dot(s);
            const Vec sol = A.fullPivLu().solve(rhs);
            delta = sol.head(M);
            mu_norm = std::hypot(sol[M], sol[M + 1]);
        }
        const Vec update = o.omega * delta;
        s += update;
        const double size = update.cwiseAbs().maxCoeff();
        if (!std::isfinite(size) || s.cwiseAbs().maxCoeff() > 1e12)
            throw OracleError("oracle diverged at iteration " + std::to_string(it));
        res.iterations = it;
        res.final_update = size;
        if (size < o.tol) {
            res.profile = SupportProfile(DomainKind::FullCircle, 1, std::vector<double>(s.data(), s.data() + M));
            res.bordered = bordered;
            res.gauge_multiplier = mu_norm;
            if (bordered && mu_norm > 1e-8)
                throw OracleError("gauge defect: first-harmonic multiplier " + std::to_string(mu_norm) +
                                  " does not vanish");
            return res;
        }
    }
    throw OracleError("oracle did not converge in " + std::to_string(o.max_iterations) + " iterations");
}

FireyCrosscheck firey_crosscheck(const SupportProfile& profile, int k) {
    const int n = profile.n();
    if (profile.domain() != DomainKind::Latitude || n < 2)
        throw UnsupportedError("Firey cross-check needs an axisymmetric profile with n >= 2");
    if (!(1 <= k && k <= n)) throw ParameterError("Firey cross-check needs 1 <= k <= n");
    auto interp = std::make_shared<GridInterpolant>(profile.interpolant());
    auto psi = SphereFunction::from_callable(
        [interp, n, k](double theta) {
            const auto j = interp->jet(theta);
            const double r1 = j.d2 + j.value;
            const double r2 = radius_r2(theta, j.value, j.d1, j.d2);
            std::vector<double> r(static_cast<std::size_t>(n), r2);
            r[0] = r1;
            return elementary_symmetric(r, k);
        },
        "sigma_k of radii", true);
    const std::vector<double> nodes = profile.nodes();
    FireyCrosscheck out;
    out.G_quadrature = firey_G(psi, n, k, nodes);
    const Radii r = profile.radii();
    out.G_product.resize(nodes.size());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        out.G_product[j] = binomial(n - 1, k - 1) * r.r1[j] * std::pow(r.r2[j], k - 1);
        out.sup_gap = std::max(out.sup_gap, std::abs(out.G_quadrature[j] - out.G_product[j]));
    }
    return out;
}

}  // namespace curveflow
