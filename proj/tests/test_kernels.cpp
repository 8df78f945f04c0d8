#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "curveflow/error.hpp"
#include "curveflow/kernels.hpp"

using namespace curveflow;
using std::numbers::pi;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

void compare(const ProblemSpec& p, const std::vector<double>& values) {
    const Derivatives d = differentiate(p.domain(), values);
    std::vector<NodeEval> par(values.size()), ref(values.size());
    evaluate_nodes(p, values, d, par, Exec::Parallel);
    reference::evaluate_nodes(p, values, d, ref);
    for (std::size_t j = 0; j < values.size(); ++j) {
        CHECK(same_bits(par[j].F, ref[j].F));
        CHECK(same_bits(par[j].f, ref[j].f));
        CHECK(same_bits(par[j].speed, ref[j].speed));
        CHECK(same_bits(par[j].coef, ref[j].coef));
        CHECK(same_bits(par[j].radius_sum, ref[j].radius_sum));
        CHECK(same_bits(par[j].abs_x, ref[j].abs_x));
    }
}

}  // namespace

TEST_CASE("parallel node kernel matches the serial reference bitwise") {
    omp_set_num_threads(4);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> amp(-0.05, 0.05);
    const auto phi = SphereFunction::from_expression("1 + 0.2*cos(2*theta)");
    for (int M : {64, 256, 1024}) {
        ProblemSpec e(SpaceformConfig(SpaceKind::Euclid, 0.5, 2.0), CurvatureFunction::mean(1),
                      PrescribedData::power_law(1, 3.0, phi), FlowMode::Contracting);
        const double a = amp(rng), b = amp(rng);
        const auto s = SupportProfile::sample(DomainKind::FullCircle, 1, M, [&](double t) {
            return 1 + a * std::cos(2 * t) + b * std::sin(3 * t);
        });
        compare(e, s.values());

        ProblemSpec l(SpaceformConfig(SpaceKind::Euclid, 0.5, 2.0), CurvatureFunction::quotient(3, 3, 1),
                      PrescribedData::curvature_measure(3, 1.0, 2, phi), FlowMode::Expanding);
        const auto sl = SupportProfile::sample(DomainKind::Latitude, 3, M, [&](double t) { return 1 + a * std::cos(2 * t); });
        compare(l, sl.values());

        ProblemSpec r(SpaceformConfig(SpaceKind::Hyperbolic, 0.2, 2.0), CurvatureFunction::mean(1),
                      PrescribedData::power_law(1, 3.0, phi), FlowMode::Expanding);
        std::vector<double> rv(static_cast<std::size_t>(M));
        for (int j = 0; j < M; ++j) rv[j] = 1 + a * std::cos(grid_node(DomainKind::FullCircle, M, j));
        compare(r, rv);
    }
}

TEST_CASE("both kernels report the lowest failing node") {
    omp_set_num_threads(4);
    ProblemSpec e(SpaceformConfig(SpaceKind::Euclid, 0.5, 2.0), CurvatureFunction::mean(1),
                  PrescribedData::power_law(1, 3.0, SphereFunction()), FlowMode::Contracting);
    const auto s = SupportProfile::sample(DomainKind::FullCircle, 1, 256, [](double t) { return 1 + 0.5 * std::cos(2 * t); });
    const Derivatives d = s.differentiate();
    std::vector<NodeEval> out(256);
    std::string par_msg, ref_msg;
    try {
        evaluate_nodes(e, s.values(), d, out, Exec::Parallel);
    } catch (const ConvexityLossError& err) {
        par_msg = err.what();
    }
    try {
        reference::evaluate_nodes(e, s.values(), d, out);
    } catch (const ConvexityLossError& err) {
        ref_msg = err.what();
    }
    CHECK_FALSE(par_msg.empty());
    CHECK(par_msg == ref_msg);
}

TEST_CASE("summary extrema") {
    std::vector<NodeEval> nodes(3);
    nodes[0].coef = 2;
    nodes[1].speed = -5;
    nodes[2].F = 3;
    nodes[2].f = 1;
    for (auto& n : nodes) {
        n.kappa_min = 1;
        n.kappa_max = 2;
        n.abs_x = 1;
    }
    nodes[1].kappa_min = 0.5;
    const auto s = summarize(nodes);
    CHECK(s.max_coef == 2);
    CHECK(s.max_abs_speed == 5);
    CHECK(s.max_residual == 2);
    CHECK(s.kappa_min == 0.5);
    CHECK(s.kappa_max == 2);
}
