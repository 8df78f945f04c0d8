#ifndef CURVEFLOW_CURVFUN_HPP
#define CURVEFLOW_CURVFUN_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace curveflow {

// sigma_k of x; sigma_0 = 1, sigma_k = 0 for k > size.
double elementary_symmetric(std::span<const double> x, int k);
// sigma_k of x with entry `skip` removed.
double elementary_symmetric_without(std::span<const double> x, int k, std::size_t skip);
double binomial(int n, int k);

enum class CurvatureFamily { PowerMean, Quotient, Mean, Gauss };

// Symmetric 1-homogeneous curvature function on the positive cone,
// normalized to F(1,...,1) = n. dual() yields F_*(r) = 1 / F(1/r).
class CurvatureFunction {
public:
    static CurvatureFunction power_mean(int n, int k);
    // (sigma_l / sigma_k)^(1/(l-k)), 0 <= k < l <= n.
    static CurvatureFunction quotient(int n, int l, int k);
    static CurvatureFunction mean(int n);
    static CurvatureFunction gauss(int n);

    double operator()(std::span<const double> kappa) const { return eval(kappa); }
    double eval(std::span<const double> kappa) const;
    void grad(std::span<const double> kappa, std::span<double> out) const;
    std::vector<double> grad(std::span<const double> kappa) const;

    CurvatureFunction dual() const;

    bool is_dual() const { return dual_; }
    CurvatureFamily family() const { return family_; }
    int n() const { return n_; }
    // Every family is (sigma_l / sigma_k)^(1/(l-k)) up to normalization;
    // power means have k = 0.
    int upper_index() const { return l_; }
    int lower_index() const { return k_; }
    // Multiplicative constant c with F = c * raw, raw the unnormalized family member.
    double normalization() const { return norm_; }
    std::string name() const;

private:
    CurvatureFunction(CurvatureFamily family, int n, int l, int k);

    double eval_primal(std::span<const double> kappa) const;
    void grad_primal(std::span<const double> kappa, std::span<double> out) const;

    CurvatureFamily family_;
    int n_;
    int l_;
    int k_;
    double norm_;
    double binom_l_;
    double binom_k_;
    bool dual_ = false;
};

// Evidence-carrying verdict of a sampled structural check.
struct SampledVerdict {
    bool holds = false;
    double worst_margin = 0.0;  // most negative slack found
    std::size_t samples = 0;
    std::vector<double> worst_point;
};

struct DualBoundaryReport {
    bool vanishes = false;
    bool monotone = false;
    std::vector<double> t;
    std::vector<double> values;  // F_*(t, 1, ..., 1)
    double final_value = 0.0;
    double decay_exponent = 0.0;  // log-log slope over the last decade
};

struct LambdaEpsReport {
    bool classified = false;
    bool holds = false;
    double eps = 0.0;
    double gamma = 0.0;
    double fitted_constant = 0.0;       // max_i F^{ii} kappa_i^2 / F^gamma over samples
    double theoretical_constant = 0.0;  // constructive bound, 0 if unknown
    std::size_t samples = 0;
};

struct StructureReport {
    SampledVerdict inverse_concave;
    SampledVerdict concave;
    DualBoundaryReport dual_boundary;
    std::optional<LambdaEpsReport> lambda_eps;
    std::size_t samples_used = 0;
};

using SymmetricFunction = std::function<double(std::span<const double>)>;

inline constexpr double kStructureTolerance = 1e-10;

// Midpoint concavity of g on random pairs drawn log-uniformly from [1e-3, 1e3]^n.
SampledVerdict check_midpoint_concave(const SymmetricFunction& g, int n, std::size_t sample_count,
                                      std::uint64_t seed);
SampledVerdict check_inverse_concave(const CurvatureFunction& F, std::size_t sample_count, std::uint64_t seed = 1);
SampledVerdict check_concave(const CurvatureFunction& F, std::size_t sample_count, std::uint64_t seed = 1);

// Default sequence t = 10^-1, ..., 10^-300.
std::vector<double> default_boundary_sequence();
DualBoundaryReport check_dual_boundary(const CurvatureFunction& F, std::span<const double> t_sequence);
DualBoundaryReport check_dual_boundary(const CurvatureFunction& F);

// Constructive constant of the quotient lemma for the normalized quotient.
double lambda_eps_constant(int n, int l, int k, double eps, double normalization);
LambdaEpsReport check_lambda_eps(const CurvatureFunction& F, double eps, std::size_t sample_count,
                                 std::uint64_t seed = 1, std::optional<double> gamma = std::nullopt);

StructureReport structure_report(const CurvatureFunction& F, std::size_t sample_count, std::uint64_t seed,
                                 std::optional<double> lambda_eps = std::nullopt);

}  // namespace curveflow

#endif
