#ifndef SRKHS_MEMBERSHIP_HPP
#define SRKHS_MEMBERSHIP_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "srkhs/kernel.hpp"
#include "srkhs/scaling.hpp"

namespace srkhs {

enum class SampleProbability { Zero, One, Undetermined };

/// Outcome of the sample-membership dichotomy: P[X in H(K_{A,Phi})] is one
/// iff sum 1/alpha_n converges, zero iff it diverges.
struct MembershipVerdict {
    SampleProbability probability = SampleProbability::Undetermined;
    ConvergenceVerdict reason;
};

std::string to_string(SampleProbability p);

MembershipVerdict verdict_from(const ConvergenceVerdict& reason);

/// Dichotomy for the spec's kernel: requires the d_K-metric assumption flag
/// on the basis family (throws MetricAssumptionUnmet otherwise).
MembershipVerdict sample_membership(const ScaledKernelSpec& k);

enum class CoefficientKind { Constant, Hyperharmonic, SubsequenceIndicator, Monomial, Explicit };

/// Basis-coefficient family (f_n) of a function f = sum f_n phi_n.
class CoefficientFamily {
  public:
    static CoefficientFamily constant(double c);
    static CoefficientFamily hyperharmonic(double rho);       // f_n = n^rho, rho may be negative
    /// f = sum_k phi_{2^k} expanded in the natural ordering: f_n = 1 iff n = 2^k.
    static CoefficientFamily indicator_powers_of_two();
    /// The same function expanded in the interleaved ordering Psi
    /// (psi_{2n+1} = phi_{2^n}): coefficients are 1 exactly at odd indices.
    static CoefficientFamily indicator_odd();
    static CoefficientFamily indicator_custom(std::function<bool(std::int64_t)> rule,
                                              std::string label = "indicator");
    static CoefficientFamily monomial(int p, double ell);     // Gaussian-basis coefficients of t^p
    static CoefficientFamily explicit_fn(std::function<double(std::int64_t)> gen,
                                         std::string label = "explicit");

    CoefficientKind kind() const { return kind_; }
    std::int64_t index_origin() const { return origin_; }
    std::string label() const { return label_; }
    double term(std::int64_t n) const;
    double log_sq(std::int64_t n) const;  // log f_n^2 (exact for indicator zeros)

    double constant_value() const { return c_; }
    double hyper_rho() const { return rho_; }
    int monomial_p() const { return p_; }
    double monomial_ell() const { return ell_; }
    bool indicator_symbolic() const { return indicator_symbolic_; }
    bool indicator_is_pow2() const { return indicator_pow2_; }

  private:
    CoefficientKind kind_ = CoefficientKind::Constant;
    std::int64_t origin_ = 1;
    double c_ = 0.0;
    double rho_ = 0.0;
    int p_ = 0;
    double ell_ = 1.0;
    bool indicator_pow2_ = true;
    bool indicator_symbolic_ = true;
    std::function<bool(std::int64_t)> indicator_rule_;
    std::function<double(std::int64_t)> explicit_gen_;
    std::string label_;
};

struct NormResult {
    double partial = 0.0;  // sum_{n<=N} f_n^2 / alpha_n
    ConvergenceVerdict verdict;
};

/// Scaled-RKHS norm ||f||^2_{K_{A,Phi}} = sum f_n^2 / alpha_n: partial sum up
/// to N plus the symbolic verdict when both families are cataloged.
NormResult rkhs_norm_sq(const CoefficientFamily& f, const ScalingFamily& a, std::int64_t N);

enum class SupportMembership { Member, NotMember, Undetermined };
enum class SupportReason { LiminfZero, SupInfinite };

struct WindowStats {
    double min_sq = 0.0;
    double max_sq = 0.0;
    std::int64_t window = 0;
};

/// Classification against the sample-support characterisation
/// liminf f_n^2 > 0 and sup f_n^2 < infinity.
struct SupportClassification {
    SupportMembership value = SupportMembership::Undetermined;
    std::optional<SupportReason> reason;
    std::optional<WindowStats> stats;
};

std::string to_string(SupportMembership m);
std::string to_string(SupportReason r);

SupportClassification support_set_classify(const CoefficientFamily& f);

/// Samples of the power-series GP with weights w lie in the RKHS with
/// weights w_bar iff sum w_n / w_bar_n < infinity.
MembershipVerdict power_series_membership(const WeightSequence& w, const WeightSequence& w_bar);

/// Coefficient of phi_{2n+p} in the Gaussian-basis expansion of t^p:
/// ell^p sqrt((2n+p)!) / (2^n n!), computed in log space.
double monomial_coefficient(int p, double ell, std::int64_t n);
/// Coefficient of phi_m (zero unless m = 2n + p).
double monomial_coefficient_at_index(int p, double ell, std::int64_t m);

struct FunctionMembership {
    SupportMembership value = SupportMembership::Undetermined;
    ConvergenceVerdict reason;
};

/// t^p in H(K_{A,Phi}) for the Gaussian basis: hyperharmonic scalings decide
/// exactly (member iff rho > p + 1/2); other families report partial sums of
/// sum alpha_{2n+p}^{-1} (2n+p)! / (2^{2n} (n!)^2).
FunctionMembership monomial_membership(int p, const ScalingFamily& a);

/// [(2n+p)!/(2^{2n}(n!)^2)] / [(2^p/sqrt(pi)) n^{p-1/2}] -> 1 as n -> infinity.
double stirling_ratio(int p, std::int64_t n);

}  // namespace srkhs

#endif
