#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curveflow/error.hpp"
#include "curveflow/flow.hpp"
#include "curveflow/verify.hpp"

using namespace curveflow;
using std::numbers::pi;

namespace {

ProblemSpec euclid_q3(FlowMode mode = FlowMode::Contracting, SphereFunction phi = SphereFunction()) {
    ProblemSpec p(SpaceformConfig(SpaceKind::Euclid, 0.5, 2.0), CurvatureFunction::mean(1),
                  PrescribedData::power_law(1, 3.0, std::move(phi)), mode);
    p.attach_barriers();
    return p;
}

ProblemSpec sphere_cor36(FlowMode mode = FlowMode::Expanding) {
    const double b = pi / 4;
    const auto phi = SphereFunction::from_expression("1 + 0.1*cos(2*theta)");
    const auto bd = phi.bounds(-pi, pi);
    const double c = 0.5 * admissible_constant(SpaceKind::Sphere, 1, {bd.inf, bd.sup}, 3.0, b);
    ProblemSpec p(SpaceformConfig(SpaceKind::Sphere, 0.1, b), CurvatureFunction::mean(1),
                  PrescribedData::power_law(1, 3.0, phi, c), mode);
    p.attach_barriers();
    return p;
}

FlowState state_of(std::vector<double> v) {
    FlowState s;
    s.values = std::move(v);
    return s;
}

double sup_dist(const std::vector<double>& a, double c) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v - c));
    return m;
}

}  // namespace

TEST_CASE("support speed on round profiles") {
    const auto p = euclid_q3();
    for (double R : {0.6, 1.0, 1.7}) {
        const auto speed = rhs_support(p, SupportProfile::round(DomainKind::FullCircle, 1, 32, R));
        for (double v : speed) CHECK(std::abs(v - (1 / (R * R) - 1 / R)) < 1e-13);
    }
    CHECK(rhs_support(p, SupportProfile::round(DomainKind::FullCircle, 1, 32, 0.6))[0] ==
          doctest::Approx(1.1111111111).epsilon(1e-9));
    // Expanding: phi - Phi(F) = -1/f + 1/F.
    const auto e = euclid_q3(FlowMode::Expanding);
    for (double v : rhs_support(e, SupportProfile::round(DomainKind::FullCircle, 1, 32, 0.6)))
        CHECK(v == doctest::Approx(-0.36 + 0.6).epsilon(1e-13));
}

TEST_CASE("manufactured pair is a steady state") {
    const auto m = make_manufactured(3.0, "4 + cos(2*theta)", 256);
    for (auto mode : {FlowMode::Contracting, FlowMode::Expanding}) {
        const ProblemSpec p(SpaceformConfig(SpaceKind::Euclid, 1.0, 30.0), CurvatureFunction::mean(1), m.data, mode);
        CHECK(sup_dist(rhs_support(p, m.s_star), 0.0) < 1e-10);
    }
}

TEST_CASE("radial and support speeds agree on Euclidean circles") {
    const auto p = euclid_q3();
    for (double R : {0.7, 1.3}) {
        const auto rs = rhs_radial(p, RadialProfile::slice(p.space, 32, R));
        const auto ss = rhs_support(p, SupportProfile::round(DomainKind::FullCircle, 1, 32, R));
        for (std::size_t j = 0; j < rs.size(); ++j) CHECK(std::abs(rs[j] - ss[j]) < 1e-10);
    }
}

TEST_CASE("sphere slices bracket the flow") {
    const auto p = sphere_cor36();
    for (double v : rhs_radial(p, RadialProfile::slice(p.space, 64, p.barriers.r_lower))) CHECK(v >= 0.0);
    for (double v : rhs_radial(p, RadialProfile::slice(p.space, 64, p.barriers.r_upper))) CHECK(v <= 0.0);
    CHECK_THROWS_AS(RadialProfile::slice(p.space, 64, 1.0), DomainError);
}

TEST_CASE("adaptive time step") {
    const double h = 2 * pi / 128;
    for (double R : {0.6, 1.5}) {
        const auto p = euclid_q3();
        FlowState st = state_of(std::vector<double>(128, R));
        CHECK(adaptive_dt(p, st) == doctest::Approx(0.2 * h * h * R * R).epsilon(1e-12));
        const auto e = euclid_q3(FlowMode::Expanding);
        FlowState se = state_of(std::vector<double>(128, R));
        CHECK(adaptive_dt(e, se) == doctest::Approx(0.2 * h * h).epsilon(1e-12));
    }
    // s = 1 + a cos 2t has r1 = 1 - 3a cos 2t; Contracting coefficient 1/r1^2.
    const auto p = euclid_q3();
    for (double a : {0.3, 0.33}) {
        const auto s = SupportProfile::sample(DomainKind::FullCircle, 1, 128, [a](double t) { return 1 + a * std::cos(2 * t); });
        FlowState st = state_of(s.values());
        const double rmin = 1 - 3 * a;
        CHECK(adaptive_dt(p, st) == doctest::Approx(0.2 * h * h * rmin * rmin).epsilon(1e-9));
    }
}

TEST_CASE("single steps") {
    const auto p = euclid_q3();
    const double dt = 1e-3;
    const auto r = step(p, state_of(std::vector<double>(64, 0.6)), dt);
    REQUIRE(r.accepted);
    // RK2 on s' = s^-2 - s^-1 from 0.6.
    const auto g = [](double s) { return 1 / (s * s) - 1 / s; };
    const double rk2 = 0.6 + dt * g(0.6 + 0.5 * dt * g(0.6));
    for (double v : r.state.values) CHECK(std::abs(v - rk2) < 1e-14);
    CHECK(r.state.values[0] > 0.6);
    CHECK(r.state.t == dt);
    CHECK(r.state.steps == 1);

    const auto m = make_manufactured(3.0, "4 + cos(2*theta)", 256);
    ProblemSpec pm(SpaceformConfig(SpaceKind::Euclid, 1.0, 30.0), CurvatureFunction::mean(1), m.data, FlowMode::Contracting);
    pm.attach_barriers();
    const auto rm = step(pm, state_of(m.s_star.values()), dt);
    REQUIRE(rm.accepted);
    for (std::size_t j = 0; j < rm.state.values.size(); ++j)
        CHECK(std::abs(rm.state.values[j] - m.s_star.values()[j]) < 1e-9 * dt);

    // A huge step overshoots the upper barrier slice.
    const auto big = step(p, state_of(std::vector<double>(64, 0.6)), 5.0);
    CHECK_FALSE(big.accepted);
    CHECK_FALSE(big.reason.empty());
    // A nearly degenerate profile loses convexity under a coarse step.
    const auto s = SupportProfile::sample(DomainKind::FullCircle, 1, 64, [](double t) { return 1 + 0.33 * std::cos(2 * t); });
    CHECK_FALSE(step(p, state_of(s.values()), 0.05).accepted);
    CHECK_THROWS_AS(step(p, state_of(std::vector<double>(64, 0.6)), 1e-15), StallError);
}

TEST_CASE("run converges to the round steady state") {
    const auto p = euclid_q3();
    FlowOptions o;
    o.grid = 64;
    o.initial = std::vector<double>(64, 0.6);
    const auto r = run(p, o);
    REQUIRE(r.converged);
    CHECK(r.status == FlowStatus::Converged);
    CHECK(sup_dist(r.state.values, 1.0) < 1e-6);
    CHECK(r.final_residual < 1e-8);
    CHECK(r.barrier_ok);
    CHECK(r.worst_monotone_defect <= 1e-9);
    CHECK(r.residual_tail_monotone);
    CHECK(std::isfinite(r.max_pinching_ratio));
    CHECK(!r.history.empty());
    for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i].step > r.history[i - 1].step);

    FlowOptions few = o;
    few.max_steps = 10;
    const auto capped = run(p, few);
    CHECK_FALSE(capped.converged);
    CHECK(capped.status == FlowStatus::MaxSteps);
    CHECK_FALSE(capped.message.empty());
}

TEST_CASE("grid refinement of an anisotropic steady state") {
    const auto p = euclid_q3(FlowMode::Contracting, SphereFunction::from_expression("1 + 0.2*cos(2*theta)"));
    FlowOptions o;
    o.tol = 1e-10;
    o.max_steps = 400000;
    o.grid = 32;
    const auto coarse = run(p, o);
    o.grid = 64;
    const auto fine = run(p, o);
    REQUIRE(coarse.converged);
    REQUIRE(fine.converged);
    const auto ci = coarse.support_profile().interpolant();
    const auto fs = fine.support_profile();
    double gap = 0.0;
    for (int j = 0; j < fs.size(); ++j) gap = std::max(gap, std::abs(ci(fs.node(j)) - fs.values()[j]));
    CHECK(gap < 1e-8);
}

TEST_CASE("sphere run stays inside the annulus") {
    const auto p = sphere_cor36();
    FlowOptions o;
    o.grid = 64;
    const auto r = run(p, o);
    REQUIRE(r.converged);
    CHECK(r.final_residual < 1e-6);
    CHECK(r.barrier_ok);
    CHECK(r.worst_monotone_defect <= 1e-9);
    for (double v : r.state.values) CHECK((v > p.space.inner() && v < p.space.outer()));
    const auto rp = r.radial_profile(p.space);
    CHECK(residual(rp, p).sup < 1e-6);
}

TEST_CASE("scope") {
    CHECK_THROWS_AS(ProblemSpec(SpaceformConfig(SpaceKind::DeSitter, 1.0, 3.0), CurvatureFunction::mean(1),
                                PrescribedData::power_law(1, -1.0, SphereFunction(), 0.1), FlowMode::Expanding),
                    UnsupportedError);
    CHECK(Phi(FlowMode::Expanding, 2.0) == -0.5);
    CHECK(dPhi(FlowMode::Expanding, 2.0) == 0.25);
    CHECK(Phi(FlowMode::Contracting, 2.0) == 2.0);
    CHECK(to_string(FlowStatus::Converged) == "converged");
}
