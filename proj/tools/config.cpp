#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>

#include "curveflow/barrier.hpp"

namespace curveflow::cli {

namespace {

std::string join(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    require_object(j, where);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
        if (!known) throw ConfigError(join(where, it.key()) + ": unknown key");
    }
}

const json* find(const json& j, const char* key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

const json& need(const json& j, const char* key, const std::string& where) {
    const json* v = find(j, key);
    if (!v) throw ConfigError(join(where, key) + ": required key missing");
    return *v;
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(where + ": expected a finite number");
    return x;
}

long as_integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
    return v.get<long>();
}

std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) throw ConfigError(where + ": expected a string");
    return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& where) {
    if (!v.is_boolean()) throw ConfigError(where + ": expected true or false");
    return v.get<bool>();
}

double number_or(const json& j, const char* key, const std::string& where, double fallback) {
    const json* v = find(j, key);
    return v ? as_number(*v, join(where, key)) : fallback;
}

long integer_or(const json& j, const char* key, const std::string& where, long fallback) {
    const json* v = find(j, key);
    return v ? as_integer(*v, join(where, key)) : fallback;
}

void require_sphere_function(const json& v, const std::string& where) {
    if (!v.is_number() && !v.is_string()) throw ConfigError(where + ": expected a number or an expression in theta");
}

CurvatureSpec parse_curvature_block(const json& j, const std::string& where) {
    allow_keys(j, where, {"family", "k", "l", "dual"});
    CurvatureSpec c;
    c.family = as_string(need(j, "family", where), join(where, "family"));
    if (c.family != "mean" && c.family != "gauss" && c.family != "power_mean" && c.family != "quotient")
        throw ConfigError(join(where, "family") + ": unknown curvature family '" + c.family +
                          "' (mean, gauss, power_mean, quotient)");
    c.k = static_cast<int>(integer_or(j, "k", where, c.family == "quotient" ? 0 : 1));
    c.l = static_cast<int>(integer_or(j, "l", where, 1));
    if (const json* d = find(j, "dual")) c.dual = as_bool(*d, join(where, "dual"));
    if (c.family == "quotient" && !find(j, "l")) throw ConfigError(join(where, "l") + ": quotient needs l");
    return c;
}

DataSpec parse_data(const json& j, const std::string& where) {
    require_object(j, where);
    DataSpec d;
    d.family = as_string(need(j, "family", where), join(where, "family"));
    auto phi = [&] {
        if (const json* v = find(j, "phi")) {
            require_sphere_function(*v, join(where, "phi"));
            d.phi = *v;
        }
    };
    if (d.family == "power_law") {
        allow_keys(j, where, {"family", "q", "phi", "c", "c_fraction", "anchor"});
        d.q = as_number(need(j, "q", where), join(where, "q"));
        phi();
        if (const json* v = find(j, "c")) d.c = as_number(*v, join(where, "c"));
        if (const json* v = find(j, "c_fraction")) d.c_fraction = as_number(*v, join(where, "c_fraction"));
        if (const json* v = find(j, "anchor")) d.anchor = as_number(*v, join(where, "anchor"));
        if (d.c && d.c_fraction) throw ConfigError(where + ": give either c or c_fraction, not both");
    } else if (d.family == "curvature_measure" || d.family == "lp_aleksandrov") {
        allow_keys(j, where, {"family", "p", "k", "phi"});
        d.p = as_number(need(j, "p", where), join(where, "p"));
        d.k = static_cast<int>(as_integer(need(j, "k", where), join(where, "k")));
        phi();
    } else if (d.family == "dual_minkowski") {
        allow_keys(j, where, {"family", "q", "k", "phi"});
        d.q = as_number(need(j, "q", where), join(where, "q"));
        d.k = static_cast<int>(as_integer(need(j, "k", where), join(where, "k")));
        phi();
    } else if (d.family == "expression") {
        allow_keys(j, where, {"family", "text"});
        d.text = as_string(need(j, "text", where), join(where, "text"));
    } else if (d.family == "manufactured") {
        allow_keys(j, where, {"family", "q", "base"});
        d.q = as_number(need(j, "q", where), join(where, "q"));
        d.base = as_string(need(j, "base", where), join(where, "base"));
    } else {
        throw ConfigError(join(where, "family") + ": unknown data family '" + d.family + "'");
    }
    return d;
}

ProblemConfig parse_problem(const json& j) {
    const std::string where = "problem";
    allow_keys(j, where, {"space", "n", "curvature", "mode", "start", "data"});
    ProblemConfig pc;
    const json& space = need(j, "space", where);
    allow_keys(space, "problem.space", {"kind", "annulus"});
    try {
        pc.kind = space_kind_from_string(as_string(need(space, "kind", "problem.space"), "problem.space.kind"));
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("problem.space.kind: ") + e.what());
    }
    const json& ann = need(space, "annulus", "problem.space");
    if (ann.is_string()) {
        if (ann.get<std::string>() != "auto") throw ConfigError("problem.space.annulus: expected [a, b] or \"auto\"");
    } else {
        if (!ann.is_array() || ann.size() != 2) throw ConfigError("problem.space.annulus: expected [a, b] or \"auto\"");
        pc.annulus = std::pair{as_number(ann[0], "problem.space.annulus[0]"),
                               as_number(ann[1], "problem.space.annulus[1]")};
    }
    pc.n = static_cast<int>(integer_or(j, "n", where, 1));
    if (pc.n < 1) throw ConfigError("problem.n: must be >= 1");
    pc.curvature = parse_curvature_block(need(j, "curvature", where), "problem.curvature");
    try {
        if (const json* v = find(j, "mode")) pc.mode = flow_mode_from_string(as_string(*v, "problem.mode"));
        if (const json* v = find(j, "start")) pc.start = barrier_side_from_string(as_string(*v, "problem.start"));
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("problem: ") + e.what());
    }
    pc.data = parse_data(need(j, "data", where), "problem.data");
    return pc;
}

NumericsConfig parse_numerics(const json& j) {
    const std::string where = "numerics";
    allow_keys(j, where, {"M", "tol", "max_steps", "record_every", "seed", "exec", "safety"});
    NumericsConfig nc;
    nc.M = static_cast<int>(integer_or(j, "M", where, nc.M));
    nc.tol = number_or(j, "tol", where, nc.tol);
    nc.max_steps = integer_or(j, "max_steps", where, nc.max_steps);
    nc.record_every = static_cast<int>(integer_or(j, "record_every", where, nc.record_every));
    nc.seed = static_cast<std::uint64_t>(integer_or(j, "seed", where, static_cast<long>(nc.seed)));
    nc.safety = number_or(j, "safety", where, nc.safety);
    if (const json* v = find(j, "exec")) {
        const std::string e = as_string(*v, "numerics.exec");
        if (e == "parallel") nc.exec = Exec::Parallel;
        else if (e == "serial") nc.exec = Exec::Serial;
        else throw ConfigError("numerics.exec: expected parallel or serial");
    }
    if (nc.M < 4) throw ConfigError("numerics.M: must be >= 4");
    if (!(nc.tol > 0.0)) throw ConfigError("numerics.tol: must be positive");
    if (nc.max_steps < 0) throw ConfigError("numerics.max_steps: must be >= 0");
    if (nc.record_every < 1) throw ConfigError("numerics.record_every: must be >= 1");
    if (!(nc.safety > 0.0 && nc.safety <= 1.0)) throw ConfigError("numerics.safety: must lie in (0, 1]");
    return nc;
}

CheckSpec parse_check(const json& j, std::size_t index, bool has_problem) {
    const std::string where = "checks[" + std::to_string(index) + "]";
    require_object(j, where);
    CheckSpec c;
    c.kind = as_string(need(j, "kind", where), join(where, "kind"));
    if (c.kind == "structure") {
        allow_keys(j, where, {"kind", "name", "curvature", "n", "samples", "expect"});
        parse_curvature_block(need(j, "curvature", where), join(where, "curvature"));
        as_integer(need(j, "n", where), join(where, "n"));
        if (const json* e = find(j, "expect")) {
            allow_keys(*e, join(where, "expect"), {"inverse_concave", "concave", "dual_vanishes"});
            for (auto it = e->begin(); it != e->end(); ++it) as_bool(*it, join(where, "expect." + it.key()));
        }
    } else if (c.kind == "lambda_eps") {
        allow_keys(j, where, {"kind", "name", "curvature", "n", "eps", "samples", "gamma"});
        parse_curvature_block(need(j, "curvature", where), join(where, "curvature"));
        as_integer(need(j, "n", where), join(where, "n"));
    } else if (c.kind == "firey") {
        allow_keys(j, where, {"kind", "name", "psi", "n", "k", "M"});
        require_sphere_function(need(j, "psi", where), join(where, "psi"));
        as_integer(need(j, "n", where), join(where, "n"));
        as_integer(need(j, "k", where), join(where, "k"));
    } else if (c.kind == "guanma") {
        allow_keys(j, where, {"kind", "name", "phi", "q", "variant", "domain", "M"});
        require_sphere_function(need(j, "phi", where), join(where, "phi"));
        as_number(need(j, "q", where), join(where, "q"));
        as_string(need(j, "variant", where), join(where, "variant"));
    } else if (c.kind == "flow_main") {
        allow_keys(j, where, {"kind", "name", "radial_samples", "angular_samples"});
        if (!has_problem) throw ConfigError(where + ": flow_main needs a problem block");
    } else if (c.kind == "barrier_constant") {
        allow_keys(j, where, {"kind", "name", "space", "n", "phi", "q", "anchor", "expect", "tol", "expect_rejection"});
        as_string(need(j, "space", where), join(where, "space"));
        as_integer(need(j, "n", where), join(where, "n"));
        as_number(need(j, "q", where), join(where, "q"));
        as_number(need(j, "anchor", where), join(where, "anchor"));
        if (const json* v = find(j, "phi")) require_sphere_function(*v, join(where, "phi"));
    } else {
        throw ConfigError(join(where, "kind") + ": unknown check kind '" + c.kind + "'");
    }
    for (const char* key : {"samples", "M", "radial_samples", "angular_samples"})
        if (const json* v = find(j, key)) as_integer(*v, join(where, key));
    for (const char* key : {"eps", "gamma", "expect", "tol"})
        if (const json* v = find(j, key); v && !v->is_object()) as_number(*v, join(where, key));
    if (const json* v = find(j, "expect_rejection")) as_bool(*v, join(where, "expect_rejection"));
    if (const json* v = find(j, "name")) as_string(*v, join(where, "name"));
    c.params = j;
    return c;
}

}  // namespace

CurvatureSpec curvature_spec_from(const json& j, const std::string& where) {
    return parse_curvature_block(j, where);
}

CurvatureFunction CurvatureSpec::build(int n) const {
    CurvatureFunction F = CurvatureFunction::mean(n);
    if (family == "gauss") F = CurvatureFunction::gauss(n);
    else if (family == "power_mean") F = CurvatureFunction::power_mean(n, k);
    else if (family == "quotient") F = CurvatureFunction::quotient(n, l, k);
    return dual ? F.dual() : F;
}

RunConfig parse_config(const json& doc, const std::string& name) {
    allow_keys(doc, "", {"problem", "numerics", "outputs", "checks"});
    RunConfig cfg;
    cfg.name = name;
    cfg.echo = doc;
    if (const json* p = find(doc, "problem")) cfg.problem = parse_problem(*p);
    if (const json* n = find(doc, "numerics")) cfg.numerics = parse_numerics(*n);
    cfg.out_dir = "out/" + name;
    if (const json* o = find(doc, "outputs")) {
        allow_keys(*o, "outputs", {"dir"});
        if (const json* d = find(*o, "dir")) cfg.out_dir = as_string(*d, "outputs.dir");
    }
    if (const json* c = find(doc, "checks")) {
        if (!c->is_array()) throw ConfigError("checks: expected an array");
        for (std::size_t i = 0; i < c->size(); ++i) cfg.checks.push_back(parse_check((*c)[i], i, cfg.problem.has_value()));
    }
    if (!cfg.problem && cfg.checks.empty()) throw ConfigError("configuration needs a problem block or checks");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_json_file(path), path.stem().string());
}

void apply_overrides(RunConfig& cfg, const Overrides& o) {
    json& num = cfg.echo["numerics"];
    if (!num.is_object()) num = json::object();
    if (o.grid) {
        if (*o.grid < 4) throw ConfigError("--grid: must be >= 4");
        cfg.numerics.M = *o.grid;
        num["M"] = *o.grid;
    }
    if (o.tol) {
        if (!(*o.tol > 0.0)) throw ConfigError("--tol: must be positive");
        cfg.numerics.tol = *o.tol;
        num["tol"] = *o.tol;
    }
    if (o.max_steps) {
        if (*o.max_steps < 0) throw ConfigError("--max-steps: must be >= 0");
        cfg.numerics.max_steps = *o.max_steps;
        num["max_steps"] = *o.max_steps;
    }
    if (o.seed) {
        cfg.numerics.seed = *o.seed;
        num["seed"] = *o.seed;
    }
}

SphereFunction sphere_function_from(const json& value, const std::string& where) {
    if (value.is_number()) {
        const double c = value.get<double>();
        if (!(c > 0.0)) throw ConfigError(where + ": constant must be positive");
        return SphereFunction::constant(c);
    }
    if (value.is_string()) return SphereFunction::from_expression(value.get<std::string>());
    throw ConfigError(where + ": expected a number or an expression in theta");
}

BuiltProblem build_problem(const ProblemConfig& pc, int M, bool with_barriers) {
    const DataSpec& d = pc.data;
    const CurvatureFunction F = pc.curvature.build(pc.n);
    json resolved = json::object();
    std::optional<ManufacturedPair> manufactured;

    std::optional<PrescribedData> data;
    if (d.family == "manufactured") {
        if (pc.n != 1 || pc.kind != SpaceKind::Euclid)
            throw ConfigError("problem.data: manufactured solutions are built for Euclidean curves (n = 1)");
        manufactured = make_manufactured(d.q, d.base, M);
        data = manufactured->data;
    } else if (d.family == "expression") {
        data = PrescribedData::expression(pc.n, d.text);
    } else {
        const SphereFunction phi = sphere_function_from(d.phi, "problem.data.phi");
        if (d.family == "power_law") {
            double c = d.c.value_or(1.0);
            if (d.c_fraction) {
                if (!pc.annulus) throw ConfigError("problem.data.c_fraction: needs an explicit annulus");
                const double anchor = d.anchor.value_or(pc.kind == SpaceKind::DeSitter ? pc.annulus->first
                                                                                      : pc.annulus->second);
                const double lim = pc.n == 1 ? std::numbers::pi : std::numbers::pi / 2;
                const auto b = phi.bounds(-lim, lim);
                const double cmax = admissible_constant(pc.kind, pc.n, {b.inf, b.sup}, d.q, anchor);
                c = *d.c_fraction * cmax;
                resolved["c_max"] = cmax;
                resolved["anchor"] = anchor;
            }
            resolved["c"] = c;
            data = PrescribedData::power_law(pc.n, d.q, phi, c);
        } else if (d.family == "curvature_measure") {
            data = PrescribedData::curvature_measure(pc.n, d.p, d.k, phi);
        } else if (d.family == "dual_minkowski") {
            data = PrescribedData::dual_minkowski(pc.n, d.q, d.k, phi);
        } else {
            data = PrescribedData::lp_aleksandrov(pc.n, d.p, d.k, phi);
        }
    }

    std::pair<double, double> ann;
    if (pc.annulus) {
        ann = *pc.annulus;
    } else {
        if (pc.kind != SpaceKind::Euclid) throw ConfigError("problem.space.annulus: \"auto\" is for Euclidean problems");
        const auto lambda = scaling_lambda(*data);
        if (!lambda) throw NoBarrierError("no annulus (1/lambda, lambda) with slice barriers for this data");
        ann = {1.0 / *lambda, *lambda};
        resolved["lambda"] = *lambda;
    }
    resolved["annulus"] = {ann.first, ann.second};

    ProblemSpec spec(SpaceformConfig(pc.kind, ann.first, ann.second), F, *data, pc.mode, pc.start);
    if (!with_barriers) return BuiltProblem{std::move(spec), std::move(manufactured), std::move(resolved)};
    spec.attach_barriers();
    resolved["barriers"] = {{"r_lower", spec.barriers.r_lower},
                            {"r_upper", spec.barriers.r_upper},
                            {"margin_lower", spec.barriers.margin_lower},
                            {"margin_upper", spec.barriers.margin_upper}};
    return BuiltProblem{std::move(spec), std::move(manufactured), std::move(resolved)};
}

}  // namespace curveflow::cli
