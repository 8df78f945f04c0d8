#ifndef CURVEFLOW_SPECTRAL_HPP
#define CURVEFLOW_SPECTRAL_HPP

#include <span>
#include <vector>

namespace curveflow {

// Fourier differentiation of samples f_j = f(x0 + 2 pi j / N) of a
// 2pi-periodic function. The Nyquist mode is dropped from the first
// derivative and kept in the second. Either output may be empty.
void periodic_derivatives(std::span<const double> f, std::span<double> d1, std::span<double> d2);

// Same operation through dense Fourier collocation matrices; O(N^2), kept as
// an independent route for tests and the elliptic oracle.
std::vector<double> fourier_diff_matrix(int N, int order);

// Trigonometric interpolant of samples on a uniform periodic grid.
class TrigInterpolant {
public:
    TrigInterpolant() = default;
    TrigInterpolant(std::span<const double> samples, double x0);

    struct Jet {
        double value;
        double d1;
        double d2;
    };

    double operator()(double x) const { return jet(x).value; }
    Jet jet(double x) const;
    int size() const { return n_; }
    // Real coefficients of cos(k (x - x0)) and sin(k (x - x0)).
    const std::vector<double>& cos_coefficients() const { return a_; }
    const std::vector<double>& sin_coefficients() const { return b_; }

private:
    int n_ = 0;
    double x0_ = 0.0;
    std::vector<double> a_;
    std::vector<double> b_;
};

}  // namespace curveflow

#endif
