#include <doctest.h>

#include <cmath>
#include <numbers>

#include "curveflow/barrier.hpp"
#include "curveflow/error.hpp"
#include "curveflow/problem.hpp"

using namespace curveflow;
using std::numbers::pi;

namespace {

ProblemSpec euclid_q3(double a = 0.5, double b = 2.0) {
    return {SpaceformConfig(SpaceKind::Euclid, a, b), CurvatureFunction::mean(1),
            PrescribedData::power_law(1, 3.0, SphereFunction()), FlowMode::Contracting};
}

}  // namespace

TEST_CASE("Euclidean slice barriers") {
    const BarrierPair bp = find_spherical_barriers(euclid_q3());
    CHECK(bp.r_lower == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(bp.r_upper == doctest::Approx(2.0).epsilon(1e-5));
    CHECK(bp.margin_lower == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(bp.margin_upper == doctest::Approx(-0.25).epsilon(1e-4));
    CHECK(bp.margin_lower * bp.margin_upper < 0.0);
    REQUIRE(bp.root_inf.has_value());
    CHECK(*bp.root_inf == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(bp.surrogate == "slice-constant");
    CHECK(bp.r_lower > 0.5);
    CHECK(bp.r_upper < 2.0);
    // The fixed point is outside (1.5, 2): no lower barrier.
    CHECK_THROWS_AS(find_spherical_barriers(euclid_q3(1.5, 2.0)), NoBarrierError);
}

TEST_CASE("anisotropic data uses inf and sup over the slice") {
    const auto data = PrescribedData::power_law(1, 3.0, SphereFunction::from_expression("1 + 0.5*cos(theta)"));
    const BarrierPair bp = find_spherical_barriers(data, SpaceformConfig(SpaceKind::Euclid, 0.3, 3.0));
    CHECK(bp.surrogate == "inf/sup over slice");
    CHECK(*bp.root_inf == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(*bp.root_sup == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("sphere barrier from the admissible constant") {
    const double b = pi / 4;
    const double cmax = admissible_constant(SpaceKind::Sphere, 1, {1.0, 1.0}, 3.0, b);
    CHECK(std::abs(cmax - 0.5) < 1e-12);
    for (int n = 1; n <= 4; ++n) CHECK(std::abs(admissible_constant(SpaceKind::Sphere, n, {1, 1}, 3.0, b) - n / 2.0) < 1e-12);
    const auto data = PrescribedData::power_law(1, 3.0, SphereFunction(), 0.9 * cmax);
    const BarrierPair bp = find_spherical_barriers(data, SpaceformConfig(SpaceKind::Sphere, 0.1, b));
    // c phi sin^(1-q) b - cot b < 0 at the upper slice.
    CHECK(bp.margin_upper < 0.0);
    CHECK(bp.margin_lower > 0.0);
    CHECK_THROWS_AS(admissible_constant(SpaceKind::Sphere, 1, {1, 1}, 2.0, b), NoBarrierError);
    CHECK_THROWS_AS(admissible_constant(SpaceKind::Euclid, 1, {1, 1}, 3.0, 1.0), UnsupportedError);
    // Linear in 1/sup phi.
    CHECK(admissible_constant(SpaceKind::Sphere, 2, {1, 2.0}, 3.0, b) ==
          doctest::Approx(0.5 * admissible_constant(SpaceKind::Sphere, 2, {1, 1.0}, 3.0, b)).epsilon(1e-15));
}

TEST_CASE("de Sitter barrier arithmetic") {
    for (int n = 1; n <= 3; ++n) {
        const double cmax = admissible_constant(SpaceKind::DeSitter, n, {1, 1}, -1.0, 1.0);
        const double expected = n * std::sinh(1.0) / std::pow(std::cosh(1.0), 3.0);
        CHECK(std::abs(cmax - expected) < 1e-12);
    }
    const double c = 0.5 * admissible_constant(SpaceKind::DeSitter, 1, {1, 1}, -1.0, 1.0);
    const auto data = PrescribedData::power_law(1, -1.0, SphereFunction(), c);
    const BarrierPair bp = find_spherical_barriers(data, SpaceformConfig(SpaceKind::DeSitter, 1.0, 3.0));
    const double a = bp.r_lower;
    CHECK(bp.margin_lower == doctest::Approx(std::tanh(a) - c * std::pow(std::cosh(a), 2.0)).epsilon(1e-12));
    CHECK(bp.margin_lower > 0.0);
    CHECK_THROWS_AS(admissible_constant(SpaceKind::DeSitter, 1, {1, 1}, 1.0, 1.0), NoBarrierError);
}

TEST_CASE("validate_barrier on round profiles") {
    const ProblemSpec p = euclid_q3();
    const auto round = [](double R) { return SupportProfile::round(DomainKind::FullCircle, 1, 32, R); };
    CHECK(validate_barrier(p, round(0.5), BarrierSide::Lower) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(std::abs(validate_barrier(p, round(1.0), BarrierSide::Lower)) < 1e-10);
    CHECK(std::abs(validate_barrier(p, round(1.0), BarrierSide::Upper)) < 1e-10);
    CHECK(validate_barrier(p, round(2.0), BarrierSide::Lower) < 0.0);
    CHECK(validate_barrier(p, round(2.0), BarrierSide::Upper) == doctest::Approx(-0.25).epsilon(1e-13));
    const auto concave = SupportProfile::sample(DomainKind::FullCircle, 1, 32, [](double t) { return 1 + 0.4 * std::cos(2 * t); });
    CHECK_THROWS_AS(validate_barrier(p, concave, BarrierSide::Lower), ConvexityLossError);
}

TEST_CASE("scaling search for an annulus") {
    const auto lambda = scaling_lambda(PrescribedData::power_law(1, 3.0, SphereFunction::constant(5.0)));
    REQUIRE(lambda.has_value());
    // Fixed point s = phi^(1/(q-2)) = 5 needs lambda > 5.
    CHECK(*lambda == 8.0);
    CHECK_FALSE(scaling_lambda(PrescribedData::power_law(1, 1.5, SphereFunction())).has_value());
    CHECK(scaling_lambda(PrescribedData::curvature_measure(2, 0.0, 1, SphereFunction())).has_value());
}
