#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "curveflow/spectral.hpp"

using namespace curveflow;
using std::numbers::pi;

namespace {

std::vector<double> matvec(const std::vector<double>& D, const std::vector<double>& f) {
    const std::size_t N = f.size();
    std::vector<double> out(N, 0.0);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) out[i] += D[i * N + j] * f[j];
    return out;
}

}  // namespace

TEST_CASE("harmonics are differentiated exactly") {
    const int N = 64;
    for (int k = 0; k <= N / 4; ++k) {
        std::vector<double> f(N), d1(N), d2(N);
        for (int j = 0; j < N; ++j) f[j] = std::cos(k * 2 * pi * j / N) + 0.5 * std::sin(k * 2 * pi * j / N);
        periodic_derivatives(f, d1, d2);
        for (int j = 0; j < N; ++j) {
            const double x = 2 * pi * j / N;
            CHECK(std::abs(d1[j] - k * (-std::sin(k * x) + 0.5 * std::cos(k * x))) < 1e-12 * (1 + k));
            CHECK(std::abs(d2[j] + k * k * f[j]) < 1e-12 * (1 + k * k));
        }
    }
}

TEST_CASE("Nyquist mode: dropped from d1, kept in d2") {
    const int N = 16;
    std::vector<double> f(N), d1(N), d2(N);
    for (int j = 0; j < N; ++j) f[j] = (j % 2 == 0) ? 1.0 : -1.0;
    periodic_derivatives(f, d1, d2);
    for (int j = 0; j < N; ++j) {
        CHECK(std::abs(d1[j]) < 1e-12);
        CHECK(d2[j] == doctest::Approx(-64.0 * f[j]));
    }
}

TEST_CASE("FFT and collocation matrices agree") {
    for (int N : {16, 32, 64}) {
        std::vector<double> f(N), d1(N), d2(N);
        for (int j = 0; j < N; ++j) f[j] = std::exp(std::sin(2 * pi * j / N));
        periodic_derivatives(f, d1, d2);
        const auto m1 = matvec(fourier_diff_matrix(N, 1), f);
        const auto m2 = matvec(fourier_diff_matrix(N, 2), f);
        for (int j = 0; j < N; ++j) {
            CHECK(std::abs(d1[j] - m1[j]) < 1e-11);
            CHECK(std::abs(d2[j] - m2[j]) < 1e-10);
        }
    }
    CHECK_THROWS(fourier_diff_matrix(15, 1));
    CHECK_THROWS(fourier_diff_matrix(16, 3));
}

TEST_CASE("trigonometric interpolant") {
    const int N = 64;
    const double x0 = 0.3;
    std::vector<double> f(N);
    for (int j = 0; j < N; ++j) f[j] = std::exp(std::cos(x0 + 2 * pi * j / N));
    const TrigInterpolant I(f, x0);
    for (double x : {0.0, 0.1234, 1.0, 2.5, 6.0}) {
        const auto jet = I.jet(x);
        const double e = std::exp(std::cos(x));
        CHECK(jet.value == doctest::Approx(e).epsilon(1e-13));
        CHECK(jet.d1 == doctest::Approx(-std::sin(x) * e).epsilon(1e-11));
        CHECK(jet.d2 == doctest::Approx((std::sin(x) * std::sin(x) - std::cos(x)) * e).epsilon(1e-10));
    }
    for (int j = 0; j < N; ++j) CHECK(I(x0 + 2 * pi * j / N) == doctest::Approx(f[j]).epsilon(1e-13));
}

TEST_CASE("interpolant keeps long coefficient lists accurate") {
    // 512 modes exercise the re-seeded rotation recurrence.
    const int N = 1024;
    std::vector<double> f(N);
    for (int j = 0; j < N; ++j) {
        const double x = 2 * pi * j / N;
        f[j] = std::cos(300 * x) + 1e-3 * std::sin(511 * x);
    }
    const TrigInterpolant I(f, 0.0);
    for (double x : {0.01, 1.7, 4.2}) CHECK(std::abs(I(x) - (std::cos(300 * x) + 1e-3 * std::sin(511 * x))) < 1e-11);
}
