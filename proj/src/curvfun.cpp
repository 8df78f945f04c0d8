#include "curveflow/curvfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "curveflow/error.hpp"
#include "curveflow/parallel.hpp"

namespace curveflow {

namespace {

// Recurrence e[j] += x_i e[j-1] over the entries (skipping `skip`), in the
// caller's scratch of size k + 1.
double sigma_recurrence(std::span<const double> x, int k, std::size_t skip, double* e) {
    std::fill_n(e, k + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i == skip) continue;
        const double xi = x[i];
        for (int j = k; j >= 1; --j) e[j] += xi * e[j - 1];
    }
    return e[k];
}

double sigma(std::span<const double> x, int k, std::size_t skip) {
    if (k < 0) return 0.0;
    if (k == 0) return 1.0;
    constexpr int kLocal = 32;
    if (k < kLocal) {
        double e[kLocal];
        return sigma_recurrence(x, k, skip, e);
    }
    std::vector<double> e(static_cast<std::size_t>(k) + 1);
    return sigma_recurrence(x, k, skip, e.data());
}

// Stack scratch for reciprocal vectors in the dimensions in use.
class SmallBuffer {
public:
    explicit SmallBuffer(std::size_t size) : size_(size) {
        if (size > kLocal) heap_.resize(size);
    }
    std::span<double> view() { return size_ > kLocal ? std::span<double>(heap_) : std::span<double>(local_, size_); }

private:
    static constexpr std::size_t kLocal = 32;
    std::size_t size_;
    double local_[kLocal];
    std::vector<double> heap_;
};

}  // namespace

double elementary_symmetric(std::span<const double> x, int k) {
    if (static_cast<std::size_t>(std::max(k, 0)) > x.size()) return 0.0;
    return sigma(x, k, x.size());
}

double elementary_symmetric_without(std::span<const double> x, int k, std::size_t skip) {
    return sigma(x, k, skip);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return std::round(b);
}

CurvatureFunction::CurvatureFunction(CurvatureFamily family, int n, int l, int k)
    : family_(family), n_(n), l_(l), k_(k) {
    if (n < 1) throw ParameterError("curvature function needs n >= 1");
    if (!(0 <= k && k < l && l <= n)) throw ParameterError("curvature function needs 0 <= k < l <= n");
    binom_l_ = binomial(n, l);
    binom_k_ = binomial(n, k);
    norm_ = n * std::pow(binom_k_ / binom_l_, 1.0 / (l - k));
}

CurvatureFunction CurvatureFunction::power_mean(int n, int k) { return {CurvatureFamily::PowerMean, n, k, 0}; }
CurvatureFunction CurvatureFunction::quotient(int n, int l, int k) { return {CurvatureFamily::Quotient, n, l, k}; }
CurvatureFunction CurvatureFunction::mean(int n) { return {CurvatureFamily::Mean, n, 1, 0}; }
CurvatureFunction CurvatureFunction::gauss(int n) { return {CurvatureFamily::Gauss, n, n, 0}; }

std::string CurvatureFunction::name() const {
    std::string base;
    switch (family_) {
        case CurvatureFamily::PowerMean: base = "power_mean_" + std::to_string(l_); break;
        case CurvatureFamily::Quotient: base = "quotient_" + std::to_string(l_) + "_" + std::to_string(k_); break;
        case CurvatureFamily::Mean: base = "mean"; break;
        case CurvatureFamily::Gauss: base = "gauss"; break;
    }
    return dual_ ? base + "_dual" : base;
}

namespace {

void require_cone(std::span<const double> kappa, int n) {
    if (kappa.size() != static_cast<std::size_t>(n))
        throw DomainError("curvature vector has " + std::to_string(kappa.size()) + " entries, expected " +
                          std::to_string(n));
    for (double v : kappa)
        if (!(v > 0.0)) throw DomainError("argument outside the positive cone");
}

}  // namespace

double CurvatureFunction::eval_primal(std::span<const double> kappa) const {
    const double ratio = (elementary_symmetric(kappa, l_) / binom_l_) / (elementary_symmetric(kappa, k_) / binom_k_);
    switch (l_ - k_) {
        case 1: return n_ * ratio;
        case 2: return n_ * std::sqrt(ratio);
        default: return n_ * std::pow(ratio, 1.0 / (l_ - k_));
    }
}

void CurvatureFunction::grad_primal(std::span<const double> kappa, std::span<double> out) const {
    // dF/dk_i = F/(l-k) * (sigma_{l-1}(k|i)/sigma_l - sigma_{k-1}(k|i)/sigma_k)
    const double F = eval_primal(kappa);
    const double sl = elementary_symmetric(kappa, l_);
    const double sk = elementary_symmetric(kappa, k_);
    for (std::size_t i = 0; i < kappa.size(); ++i) {
        const double dl = elementary_symmetric_without(kappa, l_ - 1, i) / sl;
        const double dk = k_ > 0 ? elementary_symmetric_without(kappa, k_ - 1, i) / sk : 0.0;
        out[i] = F / (l_ - k_) * (dl - dk);
    }
}

double CurvatureFunction::eval(std::span<const double> kappa) const {
    require_cone(kappa, n_);
    if (!dual_) return eval_primal(kappa);
    SmallBuffer buf(kappa.size());
    auto inv = buf.view();
    std::transform(kappa.begin(), kappa.end(), inv.begin(), [](double r) { return 1.0 / r; });
    return 1.0 / eval_primal(inv);
}

void CurvatureFunction::grad(std::span<const double> kappa, std::span<double> out) const {
    require_cone(kappa, n_);
    if (out.size() != kappa.size()) throw ParameterError("gradient buffer size mismatch");
    if (!dual_) {
        grad_primal(kappa, out);
        return;
    }
    // F_*(r) = 1/F(1/r)  =>  dF_*/dr_i = F_*^2 F^{ii}(1/r) / r_i^2
    SmallBuffer buf(kappa.size());
    auto inv = buf.view();
    std::transform(kappa.begin(), kappa.end(), inv.begin(), [](double r) { return 1.0 / r; });
    const double Fs = 1.0 / eval_primal(inv);
    grad_primal(inv, out);
    for (std::size_t i = 0; i < kappa.size(); ++i) out[i] *= Fs * Fs / (kappa[i] * kappa[i]);
}

std::vector<double> CurvatureFunction::grad(std::span<const double> kappa) const {
    std::vector<double> g(kappa.size());
    grad(kappa, g);
    return g;
}

CurvatureFunction CurvatureFunction::dual() const {
    CurvatureFunction d = *this;
    d.dual_ = !dual_;
    return d;
}

namespace {

std::vector<double> log_uniform_points(std::size_t count, int n, double lo, double hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    std::vector<double> pts(count * static_cast<std::size_t>(n));
    for (double& p : pts) p = std::exp(u(rng));
    return pts;
}

}  // namespace

SampledVerdict check_midpoint_concave(const SymmetricFunction& g, int n, std::size_t sample_count,
                                      std::uint64_t seed) {
    if (sample_count < 1) throw ParameterError("sample_count must be >= 1");
    const auto nn = static_cast<std::size_t>(n);
    const std::vector<double> a = log_uniform_points(sample_count, n, 1e-3, 1e3, seed);
    const std::vector<double> b = log_uniform_points(sample_count, n, 1e-3, 1e3, seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<double> margin(sample_count);
    for_each_index(Exec::Parallel, sample_count, [&](std::size_t s) {
        std::span<const double> x(a.data() + s * nn, nn);
        std::span<const double> y(b.data() + s * nn, nn);
        std::vector<double> mid(nn);
        for (std::size_t i = 0; i < nn; ++i) mid[i] = 0.5 * (x[i] + y[i]);
        margin[s] = g(mid) - 0.5 * (g(x) + g(y));
    });
    SampledVerdict v;
    v.samples = sample_count;
    const auto worst = std::min_element(margin.begin(), margin.end());
    v.worst_margin = *worst;
    const auto w = static_cast<std::size_t>(worst - margin.begin());
    v.worst_point.assign(a.begin() + w * nn, a.begin() + (w + 1) * nn);
    v.worst_point.insert(v.worst_point.end(), b.begin() + w * nn, b.begin() + (w + 1) * nn);
    v.holds = v.worst_margin >= -kStructureTolerance;
    return v;
}

SampledVerdict check_inverse_concave(const CurvatureFunction& F, std::size_t sample_count, std::uint64_t seed) {
    const CurvatureFunction Fs = F.dual();
    return check_midpoint_concave([&Fs](std::span<const double> r) { return Fs.eval(r); }, F.n(), sample_count, seed);
}

SampledVerdict check_concave(const CurvatureFunction& F, std::size_t sample_count, std::uint64_t seed) {
    return check_midpoint_concave([&F](std::span<const double> k) { return F.eval(k); }, F.n(), sample_count, seed);
}

std::vector<double> default_boundary_sequence() {
    std::vector<double> t;
    for (int j = 1; j <= 300; ++j) t.push_back(std::pow(10.0, -j));
    return t;
}

DualBoundaryReport check_dual_boundary(const CurvatureFunction& F, std::span<const double> t_sequence) {
    DualBoundaryReport rep;
    const CurvatureFunction Fs = F.dual();
    std::vector<double> r(static_cast<std::size_t>(F.n()), 1.0);
    for (double t : t_sequence) {
        r[0] = t;
        rep.t.push_back(t);
        rep.values.push_back(Fs.eval(r));
    }
    if (rep.values.empty()) return rep;
    rep.monotone = true;
    for (std::size_t i = 1; i < rep.values.size(); ++i)
        if (rep.values[i] > rep.values[i - 1] * (1.0 + 1e-12)) rep.monotone = false;
    rep.final_value = rep.values.back();
    if (rep.values.size() >= 2) {
        const std::size_t i = rep.values.size() - 1;
        rep.decay_exponent =
            std::log(rep.values[i] / rep.values[i - 1]) / std::log(rep.t[i] / rep.t[i - 1]);
    }
    rep.vanishes = rep.monotone && rep.final_value < 1e-6;
    return rep;
}

DualBoundaryReport check_dual_boundary(const CurvatureFunction& F) {
    const std::vector<double> t = default_boundary_sequence();
    return check_dual_boundary(F, t);
}

double lambda_eps_constant(int n, int l, int k, double eps, double normalization) {
    // max_i F^{ii} k_i^2 <= (k+1)/(l-k) sigma_{k+1}/sigma_k F  (unnormalized), and on
    // Gamma_eps sigma_{p-1}/sigma_p <= n/(eps (n-p+1)) chains sigma_{k+1} up to sigma_l.
    double c = static_cast<double>(k + 1) / (l - k);
    for (int p = k + 2; p <= l; ++p) c *= n / (eps * (n - p + 1));
    return c * std::pow(normalization, -(l - k));
}

LambdaEpsReport check_lambda_eps(const CurvatureFunction& F, double eps, std::size_t sample_count,
                                 std::uint64_t seed, std::optional<double> gamma) {
    if (!(eps > 0.0)) throw ParameterError("lambda_eps check needs eps > 0");
    if (F.is_dual()) throw ParameterError("lambda_eps check applies to curvature functions, not duals");
    LambdaEpsReport rep;
    rep.eps = eps;
    rep.samples = sample_count;
    const bool quotient_like = F.family() == CurvatureFamily::Quotient || F.family() == CurvatureFamily::Mean;
    if (gamma) {
        rep.gamma = *gamma;
    } else if (quotient_like) {
        rep.gamma = F.upper_index() - F.lower_index() + 1;
    } else {
        return rep;  // not classified
    }
    rep.classified = true;
    if (quotient_like && rep.gamma == F.upper_index() - F.lower_index() + 1)
        rep.theoretical_constant =
            lambda_eps_constant(F.n(), F.upper_index(), F.lower_index(), eps, F.normalization());

    const auto nn = static_cast<std::size_t>(F.n());
    const std::vector<double> pts = log_uniform_points(sample_count, F.n(), eps, 1e3, seed);
    std::vector<double> ratio(sample_count);
    for_each_index(Exec::Parallel, sample_count, [&](std::size_t s) {
        std::span<const double> k(pts.data() + s * nn, nn);
        std::vector<double> g(nn);
        F.grad(k, g);
        double worst = 0.0;
        for (std::size_t i = 0; i < nn; ++i) worst = std::max(worst, g[i] * k[i] * k[i]);
        ratio[s] = worst / std::pow(F.eval(k), rep.gamma);
    });
    rep.fitted_constant = sample_count ? *std::max_element(ratio.begin(), ratio.end()) : 0.0;
    if (rep.theoretical_constant > 0.0)
        rep.holds = rep.fitted_constant <= 10.0 * rep.theoretical_constant;
    else
        rep.holds = std::isfinite(rep.fitted_constant);
    return rep;
}

StructureReport structure_report(const CurvatureFunction& F, std::size_t sample_count, std::uint64_t seed,
                                 std::optional<double> lambda_eps) {
    StructureReport rep;
    rep.inverse_concave = check_inverse_concave(F, sample_count, seed);
    rep.concave = check_concave(F, sample_count, seed + 1);
    rep.dual_boundary = check_dual_boundary(F);
    rep.samples_used = 2 * sample_count;
    if (lambda_eps) {
        rep.lambda_eps = check_lambda_eps(F, *lambda_eps, sample_count, seed + 2);
        rep.samples_used += sample_count;
    }
    return rep;
}

}  // namespace curveflow
