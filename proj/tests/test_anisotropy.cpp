#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "curveflow/anisotropy.hpp"
#include "curveflow/curvfun.hpp"
#include "curveflow/error.hpp"

using namespace curveflow;
using std::numbers::pi;

namespace {

// psi = sigma_k(r1, r2, ..., r2) of the axisymmetric body s = 1 + a cos(2 theta):
// r1 = 1 - 3a cos(2 theta), r2 = 1 + a + 2a sin^2(theta).
SphereFunction cosine_body_psi(double a, int n, int k) {
    return SphereFunction::from_callable(
        [=](double t) {
            const double r1 = 1 - 3 * a * std::cos(2 * t);
            const double r2 = 1 + a + 2 * a * std::sin(t) * std::sin(t);
            return binomial(n - 1, k - 1) * r1 * std::pow(r2, k - 1) + binomial(n - 1, k) * std::pow(r2, k);
        },
        "cosine body", true);
}

}  // namespace

TEST_CASE("sphere functions") {
    const auto c = SphereFunction::constant(2.5);
    CHECK(c.is_constant());
    CHECK(c(1.0) == 2.5);
    const auto e = SphereFunction::from_expression("1 + 0.2*cos(2*theta)");
    CHECK(e(0.0) == doctest::Approx(1.2));
    CHECK(e.even());
    CHECK_FALSE(e.is_constant());
    CHECK_FALSE(SphereFunction::from_expression("2 + sin(theta)").even());
    CHECK(SphereFunction::from_expression("3").is_constant());
    const auto series = SphereFunction::from_cosine_series({1.0, 0.0, 0.3});
    CHECK(series(0.0) == doctest::Approx(1.3));
    const auto b = series.bounds(-pi, pi);
    CHECK(b.inf == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(b.sup == doctest::Approx(1.3).epsilon(1e-6));
    CHECK(series.pow(2.0)(0.0) == doctest::Approx(1.69));
    CHECK(series.scaled(2.0)(0.0) == doctest::Approx(2.6));
    CHECK_THROWS(SphereFunction::from_expression("s + theta"));
}

TEST_CASE("eval examples") {
    const auto pl = PrescribedData::power_law(1, 3.0, SphereFunction::constant(1.0));
    CHECK(pl({2.0, 2.0, 0.0, 0.0}) == doctest::Approx(0.25).epsilon(1e-15));
    const auto dm = PrescribedData::dual_minkowski(2, 0.0, 1, SphereFunction::constant(1.0));
    CHECK(dm({1.0, 1.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
    const auto cm = PrescribedData::curvature_measure(2, 1.0, 1, SphereFunction::constant(1.0));
    CHECK(cm({0.8, 1.25, 0.0, 0.0}) == doctest::Approx(0.4096).epsilon(1e-14));
    const auto ex = PrescribedData::expression(1, "s^(-2)*(1 + 0*absx)");
    CHECK(ex({2.0, 3.0, 0.0, 0.0}) == doctest::Approx(0.25));
    CHECK(ex.depends_on_abs_x());
}

TEST_CASE("sigma_k families carry the normalization factor") {
    // n = 3, k = 2: sigma_2 = s |x|^(q-n-1) phi, paired with F = 3 (sigma_2 / 3)^(1/2).
    const double s = 0.7, ax = 1.3;
    const auto dm = PrescribedData::dual_minkowski(3, 1.0, 2, SphereFunction::constant(1.0));
    const double rhs = s * std::pow(ax, 1.0 - 4.0);
    CHECK(dm({s, ax, 0.0, 0.0}) == doctest::Approx(3.0 * std::sqrt(rhs / 3.0)).epsilon(1e-14));
    CHECK(sigma_k_factor(3, 2) == doctest::Approx(3.0 / std::sqrt(3.0)));
    CHECK(sigma_k_factor(4, 1) == doctest::Approx(1.0));
    const auto la = PrescribedData::lp_aleksandrov(2, 2.0, 2, SphereFunction::constant(1.0));
    CHECK(la({s, ax, 0.0, 0.0}) == doctest::Approx(2.0 * std::sqrt(std::pow(s, -1.0) * std::pow(ax, -3.0))));
}

TEST_CASE("data errors") {
    const auto pl = PrescribedData::power_law(1, 3.0, SphereFunction::constant(1.0));
    CHECK_THROWS_AS(pl({0.0, 1.0, 0.0, 0.0}), DomainError);
    const auto neg = PrescribedData::expression(1, "-1 + 0*s");
    CHECK_THROWS_AS(neg({1.0, 1.0, 0.0, 0.0}), DataError);
    CHECK(neg.eval_raw({1.0, 1.0, 0.0, 0.0}) == -1.0);
}

TEST_CASE("power law scaling and partials") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.2, 3.0);
    const auto pl = PrescribedData::power_law(1, 3.5, SphereFunction::from_expression("1 + 0.3*cos(theta)"), 0.7);
    CHECK(*pl.scaling_exponent() == doctest::Approx(-2.5));
    for (int i = 0; i < 100; ++i) {
        const double s = u(rng), lambda = u(rng), th = u(rng);
        const double f = pl({s, s, th, th});
        CHECK(std::abs(pl({lambda * s, s, th, th}) - std::pow(lambda, -2.5) * f) <= 1e-12 * std::pow(lambda, -2.5) * f);
        const auto d = pl.partials({s, s, th, th});
        CHECK(d.ds == doctest::Approx(-2.5 * f / s).epsilon(1e-7));
        CHECK(d.dnormal == doctest::Approx(0.7 * std::pow(s, -2.5) * (-0.3 * std::sin(th))).epsilon(1e-6));
        CHECK(std::abs(d.dabs_x) < 1e-12);
    }
    CHECK(*PrescribedData::curvature_measure(2, 1.0, 1, SphereFunction()).scaling_exponent() == doctest::Approx(-2.0));
    CHECK(*PrescribedData::dual_minkowski(2, 0.0, 1, SphereFunction()).scaling_exponent() == doctest::Approx(-2.0));
    CHECK(*PrescribedData::lp_aleksandrov(2, 1.0, 1, SphereFunction()).scaling_exponent() == doctest::Approx(-3.0));
    CHECK_FALSE(PrescribedData::expression(1, "s").scaling_exponent().has_value());
}

TEST_CASE("flow main condition") {
    const SpaceformConfig euclid(SpaceKind::Euclid, 0.5, 2.0);
    const auto v1 = check_flow_main_condition(PrescribedData::expression(2, "absx^(-2)"), euclid);
    CHECK(v1.holds);
    CHECK(v1.worst_margin == doctest::Approx(-2.0).epsilon(1e-4));
    CHECK(check_flow_main_condition(PrescribedData::curvature_measure(1, 1.0, 1, SphereFunction()), euclid).holds);
    CHECK(check_flow_main_condition(PrescribedData::curvature_measure(3, 1.0, 2, SphereFunction()), euclid).holds);
    const SpaceformConfig sphere(SpaceKind::Sphere, 0.1, pi / 4);
    const auto v3 = check_flow_main_condition(PrescribedData::power_law(1, 1.0, SphereFunction::constant(2.0)), sphere);
    CHECK(v3.holds);
    CHECK(v3.worst_margin == doctest::Approx(-0.5).epsilon(1e-4));
    // Euclidean data without x-dependence has a vanishing Hessian: not strict.
    CHECK_FALSE(check_flow_main_condition(PrescribedData::power_law(1, 3.0, SphereFunction()), euclid).holds);
}

TEST_CASE("Guan-Ma conditions") {
    CHECK(check_guanma(SphereFunction(), 3.0, GuanMaVariant::CaseI).holds);
    const auto good = SphereFunction::from_expression("(1 + 0.2*cos(2*theta))^3");
    const auto v = check_guanma(good, 3.0, GuanMaVariant::CaseI);
    CHECK(v.holds);
    CHECK(v.min_value == doctest::Approx(0.4).epsilon(1e-10));
    const auto bad = SphereFunction::from_expression("(1 + 0.9*cos(2*theta))^3");
    const auto w = check_guanma(bad, 3.0, GuanMaVariant::CaseI);
    CHECK_FALSE(w.holds);
    CHECK(w.min_value == doctest::Approx(1.0 - 2.7).epsilon(1e-10));
    CHECK(std::cos(2 * w.worst_theta) == doctest::Approx(1.0).epsilon(1e-12));
    // Verdicts are invariant under scaling phi.
    for (double lambda : {0.1, 10.0}) {
        CHECK(check_guanma(good.scaled(lambda), 3.0, GuanMaVariant::CaseI).holds);
        CHECK_FALSE(check_guanma(bad.scaled(lambda), 3.0, GuanMaVariant::CaseI).holds);
    }
    // Case II: u'' + (2/3) u with u = 1 + a cos 2t is 2/3 + (2/3 - 4) a cos 2t.
    CHECK(check_guanma(SphereFunction::from_expression("(1 + 0.1*cos(2*theta))^3"), 3.0, GuanMaVariant::CaseII).holds);
    const auto ii = check_guanma(good, 3.0, GuanMaVariant::CaseII);
    CHECK_FALSE(ii.holds);
    CHECK(ii.min_value == doctest::Approx(2.0 / 3.0 - (10.0 / 3.0) * 0.2).epsilon(1e-9));
    // de Sitter: u - u'' = 1 + cos 2t (0.2 + 0.8) >= 0, equality at t = pi/2.
    CHECK(check_guanma(SphereFunction(), -1.0, GuanMaVariant::DeSitter).holds);
    CHECK_THROWS_AS(check_guanma(SphereFunction(), 0.0, GuanMaVariant::CaseI), ParameterError);
    CHECK(guanma_variant_from_string(to_string(GuanMaVariant::FireyP)) == GuanMaVariant::FireyP);
}

TEST_CASE("Firey G for constant psi") {
    for (int n = 3; n <= 5; ++n)
        for (int k = 2; k < n; ++k) {
            std::vector<double> grid;
            for (int j = 1; j < 64; ++j) grid.push_back(-pi / 2 + j * pi / 64);
            const auto G = firey_G(SphereFunction::constant(binomial(n, k)), n, k, grid);
            for (double g : G) CHECK(std::abs(g - binomial(n - 1, k - 1)) < 1e-10);
            const auto Gc = firey_G(SphereFunction::constant(1.7), n, k, grid);
            for (double g : Gc) CHECK(std::abs(g - 1.7 * k / n) < 1e-10);
        }
    CHECK(firey_G_at(SphereFunction(), 3, 2, pi / 2 - 1e-9) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(firey_G_at(SphereFunction(), 3, 2, -pi / 2 + 1e-9) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    const auto rep = check_firey(SphereFunction(), 3, 2);
    CHECK(rep.all());
    CHECK(rep.min_G == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(std::abs(rep.pole_integral) < 1e-10);
}

TEST_CASE("Firey G reproduces the product formula") {
    for (int n = 3; n <= 4; ++n)
        for (int k = 2; k < n; ++k) {
            const double a = 0.1;
            const auto psi = cosine_body_psi(a, n, k);
            for (int j = 1; j < 128; ++j) {
                const double t = -pi / 2 + j * pi / 128;
                const double r1 = 1 - 3 * a * std::cos(2 * t);
                const double r2 = 1 + a + 2 * a * std::sin(t) * std::sin(t);
                CHECK(std::abs(firey_G_at(psi, n, k, t) - binomial(n - 1, k - 1) * r1 * std::pow(r2, k - 1)) < 1e-8);
            }
            CHECK(check_firey(psi, n, k).all());
        }
    // Critical amplitude: r1 vanishes at theta = 0, so G(0) = 0 and condition (iii) fails.
    const auto crit = check_firey(cosine_body_psi(1.0 / 3.0, 3, 2), 3, 2);
    CHECK(crit.finite_limits);
    CHECK(crit.integral_positive);
    CHECK_FALSE(crit.G_positive);
    CHECK(std::abs(crit.min_G) < 1e-9);
    CHECK(std::abs(crit.worst_theta) < 1e-12);
}
