#include "curveflow/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "curveflow/error.hpp"

namespace curveflow {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    ~PlanPair() {
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
    }
};

std::mutex plan_mutex;

const PlanPair& plans_for(int n) {
    static std::map<int, std::unique_ptr<PlanPair>> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto& slot = cache[n];
    if (!slot) {
        slot = std::make_unique<PlanPair>();
        double* re = fftw_alloc_real(static_cast<std::size_t>(n));
        fftw_complex* co = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        slot->forward = fftw_plan_dft_r2c_1d(n, re, co, flags);
        slot->backward = fftw_plan_dft_c2r_1d(n, co, re, flags | FFTW_DESTROY_INPUT);
        fftw_free(co);
        fftw_free(re);
    }
    return *slot;
}

using cplx = std::complex<double>;

void forward(int n, std::span<const double> f, std::vector<cplx>& c) {
    const PlanPair& p = plans_for(n);
    std::vector<double> in(f.begin(), f.end());
    c.assign(static_cast<std::size_t>(n / 2 + 1), cplx{});
    fftw_execute_dft_r2c(p.forward, in.data(), reinterpret_cast<fftw_complex*>(c.data()));
}

void backward(int n, std::vector<cplx> c, std::span<double> out) {
    const PlanPair& p = plans_for(n);
    fftw_execute_dft_c2r(p.backward, reinterpret_cast<fftw_complex*>(c.data()), out.data());
}

}  // namespace

void periodic_derivatives(std::span<const double> f, std::span<double> d1, std::span<double> d2) {
    const int n = static_cast<int>(f.size());
    if (n < 4) throw ParameterError("spectral differentiation needs at least 4 samples");
    std::vector<cplx> c;
    forward(n, f, c);
    const double inv = 1.0 / n;
    const int half = n / 2;
    const bool even = n % 2 == 0;
    if (!d1.empty()) {
        std::vector<cplx> c1(c.size());
        for (int k = 0; k <= half; ++k) c1[k] = cplx(0.0, k * inv) * c[k];
        if (even) c1[half] = 0.0;
        backward(n, std::move(c1), d1);
    }
    if (!d2.empty()) {
        std::vector<cplx> c2(c.size());
        for (int k = 0; k <= half; ++k) c2[k] = -(static_cast<double>(k) * k * inv) * c[k];
        backward(n, std::move(c2), d2);
    }
}

std::vector<double> fourier_diff_matrix(int N, int order) {
    if (N % 2 != 0 || N < 4) throw ParameterError("collocation matrices need even N >= 4");
    if (order != 1 && order != 2) throw ParameterError("collocation order must be 1 or 2");
    const double h = 2.0 * std::numbers::pi / N;
    std::vector<double> D(static_cast<std::size_t>(N) * N, 0.0);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            const int d = i - j;
            double& e = D[static_cast<std::size_t>(i) * N + j];
            const double sign = (d % 2 == 0) ? 1.0 : -1.0;
            if (d == 0) {
                e = order == 1 ? 0.0 : -std::numbers::pi * std::numbers::pi / (3.0 * h * h) - 1.0 / 6.0;
            } else if (order == 1) {
                e = 0.5 * sign / std::tan(0.5 * d * h);
            } else {
                const double s = std::sin(0.5 * d * h);
                e = -0.5 * sign / (s * s);
            }
        }
    }
    return D;
}

TrigInterpolant::TrigInterpolant(std::span<const double> samples, double x0)
    : n_(static_cast<int>(samples.size())), x0_(x0) {
    if (n_ < 1) throw ParameterError("interpolant needs samples");
    std::vector<cplx> c;
    const int half = n_ / 2;
    if (n_ < 4) {
        // Tiny grids: plain DFT.
        c.assign(static_cast<std::size_t>(half + 1), cplx{});
        for (int k = 0; k <= half; ++k)
            for (int j = 0; j < n_; ++j)
                c[k] += samples[j] * std::polar(1.0, -2.0 * std::numbers::pi * k * j / n_);
    } else {
        forward(n_, samples, c);
    }
    a_.assign(static_cast<std::size_t>(half + 1), 0.0);
    b_.assign(static_cast<std::size_t>(half + 1), 0.0);
    for (int k = 0; k <= half; ++k) {
        const bool edge = k == 0 || (n_ % 2 == 0 && k == half);
        const double w = (edge ? 1.0 : 2.0) / n_;
        a_[k] = w * c[k].real();
        b_[k] = edge ? 0.0 : -w * c[k].imag();
    }
    // Drop the trailing plateau of coefficients at rounding level.
    double scale = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k) scale = std::max(scale, std::abs(a_[k]) + std::abs(b_[k]));
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    std::size_t keep = a_.size();
    while (keep > 1 && std::abs(a_[keep - 1]) + std::abs(b_[keep - 1]) <= floor) --keep;
    a_.resize(keep);
    b_.resize(keep);
}

TrigInterpolant::Jet TrigInterpolant::jet(double x) const {
    Jet j{0.0, 0.0, 0.0};
    const double t = x - x0_;
    // cos(k t), sin(k t) by rotation; re-seeded every 64 terms to bound drift.
    const double c1 = std::cos(t), s1 = std::sin(t);
    double ck = 1.0, sk = 0.0;
    for (std::size_t k = 0; k < a_.size(); ++k) {
        if (k % 64 == 0 && k > 0) {
            ck = std::cos(static_cast<double>(k) * t);
            sk = std::sin(static_cast<double>(k) * t);
        }
        const double kk = static_cast<double>(k);
        const double v = a_[k] * ck + b_[k] * sk;
        j.value += v;
        j.d1 += kk * (b_[k] * ck - a_[k] * sk);
        j.d2 -= kk * kk * v;
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
    }
    return j;
}

}  // namespace curveflow
