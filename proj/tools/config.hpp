#ifndef CURVEFLOW_TOOLS_CONFIG_HPP
#define CURVEFLOW_TOOLS_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curveflow/error.hpp"
#include "curveflow/io.hpp"
#include "curveflow/kernels.hpp"
#include "curveflow/problem.hpp"
#include "curveflow/verify.hpp"

namespace curveflow::cli {

// Schema violation in a run configuration; the message names the key path.
class ConfigError : public Error {
public:
    using Error::Error;
};

struct CurvatureSpec {
    std::string family = "mean";  // mean, gauss, power_mean, quotient
    int k = 1;
    int l = 1;
    bool dual = false;

    CurvatureFunction build(int n) const;
};

CurvatureSpec curvature_spec_from(const json& j, const std::string& where);

struct DataSpec {
    std::string family;  // power_law, curvature_measure, dual_minkowski, lp_aleksandrov, expression, manufactured
    double q = 0.0;
    double p = 0.0;
    int k = 1;
    json phi = 1.0;  // number or expression in theta
    std::optional<double> c;
    std::optional<double> c_fraction;  // of the admissible constant at the anchor
    std::optional<double> anchor;
    std::string text;  // expression family
    std::string base;  // manufactured family: s* in theta
};

struct ProblemConfig {
    SpaceKind kind = SpaceKind::Euclid;
    std::optional<std::pair<double, double>> annulus;  // empty: choose by scaling
    int n = 1;
    CurvatureSpec curvature;
    FlowMode mode = FlowMode::Contracting;
    BarrierSide start = BarrierSide::Lower;
    DataSpec data;
};

struct NumericsConfig {
    int M = 128;
    double tol = 1e-8;
    long max_steps = 100000;
    int record_every = 100;
    std::uint64_t seed = 1;
    Exec exec = Exec::Parallel;
    double safety = 0.2;
};

struct CheckSpec {
    std::string kind;  // structure, lambda_eps, firey, guanma, flow_main, barrier_constant
    json params;
};

struct RunConfig {
    std::string name;  // file stem
    json echo;         // effective configuration, embedded in every artifact
    std::optional<ProblemConfig> problem;
    NumericsConfig numerics;
    std::string out_dir;
    std::vector<CheckSpec> checks;
};

struct Overrides {
    std::optional<int> grid;
    std::optional<double> tol;
    std::optional<long> max_steps;
    std::optional<std::uint64_t> seed;
};

// Validates the whole document; unknown keys are errors.
RunConfig parse_config(const json& doc, const std::string& name);
RunConfig load_config(const std::filesystem::path& path);
void apply_overrides(RunConfig& cfg, const Overrides& o);

SphereFunction sphere_function_from(const json& value, const std::string& where);

struct BuiltProblem {
    ProblemSpec spec;
    std::optional<ManufacturedPair> manufactured;
    json resolved;  // annulus and constants actually used
};

// Assembles the problem; barriers are attached unless `with_barriers` is false.
BuiltProblem build_problem(const ProblemConfig& pc, int M, bool with_barriers = true);

}  // namespace curveflow::cli

#endif
