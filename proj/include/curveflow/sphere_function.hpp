#ifndef CURVEFLOW_SPHERE_FUNCTION_HPP
#define CURVEFLOW_SPHERE_FUNCTION_HPP

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace curveflow {

class Expression;

// Axisymmetric positive function on the sphere, given by its value on the
// normal (or position) angle theta in radians.
class SphereFunction {
public:
    SphereFunction();  // constant 1

    static SphereFunction constant(double c);
    // Expression in theta only.
    static SphereFunction from_expression(const std::string& text);
    // sum_k a_k cos(k theta)
    static SphereFunction from_cosine_series(std::vector<double> coefficients);
    static SphereFunction from_callable(std::function<double(double)> fn, std::string description,
                                        bool even = false);

    double operator()(double theta) const { return fn_(theta); }
    bool is_constant() const { return constant_.has_value(); }
    double constant_value() const { return constant_.value_or(0.0); }
    // Even in theta: symmetric under reflection through the equator.
    bool even() const { return even_; }
    const std::string& describe() const { return description_; }

    // Pointwise power, keeping metadata.
    SphereFunction pow(double exponent) const;
    SphereFunction scaled(double factor) const;

    struct Bounds {
        double inf;
        double sup;
    };
    // Extrema over a dense sample of [lo, hi].
    Bounds bounds(double lo, double hi, int samples = 2048) const;

private:
    std::function<double(double)> fn_;
    std::string description_;
    std::optional<double> constant_;
    bool even_ = true;
};

}  // namespace curveflow

#endif
