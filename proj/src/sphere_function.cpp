#include "curveflow/sphere_function.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "curveflow/error.hpp"
#include "curveflow/expr.hpp"

namespace curveflow {

namespace {

std::string shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return {buf, ptr};
}

}  // namespace

SphereFunction::SphereFunction() : fn_([](double) { return 1.0; }), description_("1"), constant_(1.0) {}

SphereFunction SphereFunction::constant(double c) {
    SphereFunction f;
    f.fn_ = [c](double) { return c; };
    f.description_ = shortest(c);
    f.constant_ = c;
    return f;
}

SphereFunction SphereFunction::from_expression(const std::string& text) {
    auto e = std::make_shared<Expression>(Expression::parse(text));
    if (e->depends_on_s() || e->depends_on_absx() || e->depends_on_psi())
        throw ParameterError("a sphere function may only depend on theta: '" + text + "'");
    SphereFunction f;
    f.fn_ = [e](double theta) { return e->eval(ExprVariables{theta, 1.0, 1.0, 0.0}); };
    f.description_ = text;
    f.constant_.reset();
    const double probe[] = {0.1, 0.7, 1.3, 2.9};
    f.even_ = true;
    for (double t : probe)
        if (std::abs(f.fn_(t) - f.fn_(-t)) > 1e-14 * (1.0 + std::abs(f.fn_(t)))) f.even_ = false;
    bool flat = true;
    for (double t : probe)
        if (f.fn_(t) != f.fn_(0.0)) flat = false;
    if (flat) f.constant_ = f.fn_(0.0);
    return f;
}

SphereFunction SphereFunction::from_cosine_series(std::vector<double> coefficients) {
    if (coefficients.empty()) throw ParameterError("empty cosine series");
    SphereFunction f;
    std::string d;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
        if (k) d += " + ";
        d += shortest(coefficients[k]) + "*cos(" + std::to_string(k) + "*theta)";
    }
    const bool flat = std::all_of(coefficients.begin() + 1, coefficients.end(), [](double a) { return a == 0.0; });
    f.constant_.reset();
    if (flat) f.constant_ = coefficients[0];
    f.fn_ = [a = std::move(coefficients)](double theta) {
        double v = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) v += a[k] * std::cos(static_cast<double>(k) * theta);
        return v;
    };
    f.description_ = d;
    return f;
}

SphereFunction SphereFunction::from_callable(std::function<double(double)> fn, std::string description, bool even) {
    SphereFunction f;
    f.fn_ = std::move(fn);
    f.description_ = std::move(description);
    f.constant_.reset();
    f.even_ = even;
    return f;
}

SphereFunction SphereFunction::pow(double exponent) const {
    SphereFunction f = *this;
    f.fn_ = [g = fn_, exponent](double theta) { return std::pow(g(theta), exponent); };
    f.description_ = "(" + description_ + ")^" + shortest(exponent);
    if (constant_) f.constant_ = std::pow(*constant_, exponent);
    return f;
}

SphereFunction SphereFunction::scaled(double factor) const {
    SphereFunction f = *this;
    f.fn_ = [g = fn_, factor](double theta) { return factor * g(theta); };
    f.description_ = shortest(factor) + "*(" + description_ + ")";
    if (constant_) f.constant_ = factor * *constant_;
    return f;
}

SphereFunction::Bounds SphereFunction::bounds(double lo, double hi, int samples) const {
    if (constant_) return {*constant_, *constant_};
    Bounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (int j = 0; j <= samples; ++j) {
        const double v = fn_(lo + (hi - lo) * j / samples);
        b.inf = std::min(b.inf, v);
        b.sup = std::max(b.sup, v);
    }
    return b;
}

}  // namespace curveflow
