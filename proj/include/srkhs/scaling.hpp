#ifndef SRKHS_SCALING_HPP
#define SRKHS_SCALING_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace srkhs {

enum class VerdictValue { Converges, Diverges, Inconclusive };

struct Evidence {
    double partial_sum = 0.0;       // sum of 1/alpha_n up to n = N
    double tail_bound = 0.0;        // declared/analytic bound on the rest (inf if none)
    std::int64_t terms = 0;         // N
};

/// Three-valued convergence verdict for a positive series. Converges and
/// Diverges come from exact symbolic rules or carried analytic certificates;
/// numeric evidence alone is reported as Inconclusive.
struct ConvergenceVerdict {
    VerdictValue value = VerdictValue::Inconclusive;
    std::optional<Evidence> evidence;

    bool converges() const { return value == VerdictValue::Converges; }
    bool diverges() const { return value == VerdictValue::Diverges; }
};

std::string to_string(VerdictValue v);

/// Symbolic growth profile alpha_n ~ exp(g n) * n^p * prod_j log_j(n)^{L_j}.
/// Lexicographic order on (g, p, L_1, L_2, ...) decides asymptotic dominance.
struct GrowthDescriptor {
    double geometric_rate = 0.0;           // log tau^2 for geometric factors
    double poly_exponent = 0.0;
    std::vector<double> log_exponents;     // exponents of log, loglog, ...

    // -1 / 0 / +1 : grows strictly slower / norm-equivalent / strictly faster
    int compare(const GrowthDescriptor& other) const;
};

/// Convergence of sum_n exp(g n) n^p prod log_j^{L_j}(n) by the Abel--Dini
/// (Bertrand) series scale.
bool series_converges(const GrowthDescriptor& term_growth);

enum class ScalingKind { Hyperharmonic, Geometric, IteratedLog, LogPower, Spliced, Explicit };

/// Certified analytic tail machinery an Explicit scaling may carry for the
/// reciprocal series sum_{l>=n} 1/alpha_l (log-space bounds).
struct ReciprocalTailRule {
    std::function<double(std::int64_t)> log_tail_upper;
    std::function<double(std::int64_t)> log_tail_lower;  // optional, may be null
};

/// Symbolic positive scaling sequence (alpha_n). Values are exact per the
/// family formula; classification and comparison are symbolic, never numeric.
class ScalingFamily {
  public:
    // alpha_n = n^rho, with alpha = 1 at the origin index (convention 0^rho = 1).
    static ScalingFamily hyperharmonic(double rho, std::int64_t origin = 1);
    // alpha_n = tau^{2n}
    static ScalingFamily geometric(double tau, std::int64_t origin = 0);
    // alpha_n = (n+q) log(n+q) ... log_{p-1}(n+q) log_p(n+q)^rho
    static ScalingFamily iterated_log(int p, double q, double rho, std::int64_t origin = 1);
    // alpha_n = n log(n+1)^c
    static ScalingFamily log_power(double c, std::int64_t origin = 1);
    // base family with finitely many index -> value overrides
    static ScalingFamily spliced(ScalingFamily base, std::map<std::int64_t, double> overrides);
    // generator with optionally certified reciprocal-sum machinery
    static ScalingFamily explicit_log(std::function<double(std::int64_t)> log_alpha,
                                      std::int64_t origin,
                                      std::optional<ReciprocalTailRule> reciprocal_tail = {},
                                      bool reciprocal_sum_certified = false,
                                      std::string label = "explicit");

    static ScalingFamily identity(std::int64_t origin = 1) { return hyperharmonic(0.0, origin); }

    ScalingKind kind() const { return kind_; }
    std::int64_t index_origin() const { return origin_; }
    bool symbolic() const { return kind_ != ScalingKind::Explicit; }
    std::string label() const;

    double term(std::int64_t n) const;
    double log_term(std::int64_t n) const;

    /// Growth descriptor; throws UnsupportedFamily for Explicit scalings.
    GrowthDescriptor descriptor() const;

    /// Upper bound on alpha_{m+1}/alpha_m valid for all m >= n (catalog
    /// families have eventually decreasing ratios; valid from ratio_valid_from()).
    double ratio_upper(std::int64_t n) const;
    std::int64_t ratio_valid_from() const;

    /// Polynomial majorant alpha_n <= C n^e for n >= n0 (log C returned).
    /// Throws UnsupportedFamily when none exists (geometric growth, explicit).
    struct PolyMajorant {
        double log_c;
        double exponent;
        std::int64_t from;
    };
    PolyMajorant poly_majorant() const;

    /// Index from which forward differences of alpha_n * n^{-s} behave like a
    /// completely monotone sequence (used by the sine-family tail machinery).
    std::int64_t cm_start() const;

    // Certified log-space brackets for sum_{l>=n} 1/alpha_l; only for symbolic
    // families whose reciprocal sum converges, or Explicit with declared rules.
    double log_reciprocal_tail_upper(std::int64_t n) const;
    double log_reciprocal_tail_lower(std::int64_t n) const;
    bool has_reciprocal_tail_rule() const;
    bool reciprocal_sum_certified() const { return reciprocal_certified_; }

    double hyper_rho() const { return rho_; }
    double geo_tau() const { return tau_; }

  private:
    ScalingKind kind_ = ScalingKind::Hyperharmonic;
    std::int64_t origin_ = 1;
    double rho_ = 0.0;                       // Hyperharmonic / IteratedLog / LogPower exponent
    double tau_ = 1.0;                       // Geometric
    int itlog_p_ = 1;
    double itlog_q_ = 0.0;
    std::shared_ptr<const ScalingFamily> base_;              // Spliced
    std::map<std::int64_t, double> overrides_;               // Spliced
    std::function<double(std::int64_t)> explicit_log_;       // Explicit
    std::optional<ReciprocalTailRule> reciprocal_rule_;      // Explicit
    bool reciprocal_certified_ = false;
    std::string label_;
};

/// Exact symbolic verdict for sum_n 1/alpha_n per the family catalog;
/// Explicit families yield Inconclusive with numeric evidence (plus any
/// declared tail bound), unless they carry an analytic certificate.
ConvergenceVerdict classify_reciprocal_sum(const ScalingFamily& a);

enum class ScalingOrder {
    EqualUpToNormEquivalence,
    AProperSubsetOfB,   // H(K_{a,Phi}) is a proper subset of H(K_{b,Phi})
    BProperSubsetOfA,
    Incomparable,
};

/// RKHS inclusion direction from the lexicographic descriptor comparison
/// (larger scaling => larger RKHS). Throws UnsupportedFamily for Explicit.
ScalingOrder compare_scalings(const ScalingFamily& a, const ScalingFamily& b);

std::string to_string(ScalingOrder o);

}  // namespace srkhs

#endif
