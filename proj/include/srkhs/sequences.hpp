#ifndef SRKHS_SEQUENCES_HPP
#define SRKHS_SEQUENCES_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "srkhs/scaling.hpp"

namespace srkhs {

/// Handle for a positive summable sequence with certified log-space tail
/// brackets: log_tail_upper(n) >= log sum_{l>=n} a_l >= log_tail_lower(n).
/// Terms may underflow doubles (e.g. 2^-n on a 10^6 window), so everything
/// is carried in log space.
class SummableSequence {
  public:
    SummableSequence() = default;
    SummableSequence(std::int64_t origin,
                     std::function<double(std::int64_t)> log_term,
                     std::function<double(std::int64_t)> log_tail_upper,
                     std::function<double(std::int64_t)> log_tail_lower = nullptr);

    /// a_n = c * r^n with r < 1; tails are exact.
    static SummableSequence geometric(double first_log_term, double log_ratio,
                                      std::int64_t origin = 1);
    /// a_n = 1/alpha_n for a scaling whose reciprocal sum converges with a
    /// certified tail rule. Throws NotSummable otherwise.
    static SummableSequence reciprocal_of(const ScalingFamily& a);

    std::int64_t index_origin() const { return origin_; }
    double log_term(std::int64_t n) const;
    double term(std::int64_t n) const;
    double log_tail_upper(std::int64_t n) const;
    double log_tail_lower(std::int64_t n) const;
    /// Certified upper bound for the whole sum (log space).
    double log_total_upper() const { return log_tail_upper(origin_); }

    /// sum_{n=origin}^{N} a_n evaluated termwise (underflowed terms add 0).
    double partial_sum(std::int64_t N) const;

  private:
    std::int64_t origin_ = 1;
    std::function<double(std::int64_t)> log_term_;
    std::function<double(std::int64_t)> log_tail_upper_;
    std::function<double(std::int64_t)> log_tail_lower_;
};

/// Dini refinement a_n = a'_n / (sum_{l>=n} a'_l)^c for 0 <= c < 1, taken
/// against the certified upper tail bracket. Output carries the analytic
/// bound sum a_n <= (sum a'_n)^{1-c} / (1-c) and a_n / a'_n -> infinity.
SummableSequence dini_refine(const SummableSequence& a_prime, double c);

struct DominatingResult {
    SummableSequence sequence;       // the convergent dominating sequence
    SummableSequence spliced;        // intermediate a' before the Dini step
    std::vector<std::int64_t> knots; // n_m with sum_{n>=n_m} abar_m <= 2^-m, m>=2
};

/// Proof construction of the no-series-boundary lemma: splice the partial
/// sums abar_{m,n} = sum_{k<=m} a_{k,n} at knots chosen so the tail budget
/// sum_{n>=n_m} abar_{m,n} <= 2^-m holds, then Dini-refine with c = 1/2.
/// The result satisfies sum a_n < infinity and a_n / a_{m,n} -> infinity.
DominatingResult dominating_convergent(const std::vector<SummableSequence>& inputs);

/// Theorem-level envelope: a scaling A with H(K_{A,Phi}) properly inside
/// every H(K_{A_m,Phi}) and sum 1/alpha_n < infinity certified. Inputs must
/// classify Converges for their reciprocal sums.
ScalingFamily strictly_smaller_envelope(const std::vector<ScalingFamily>& convergent_scalings);

/// Strictly increasing positive integer index sequence g with declared gap
/// growth bound g_{m+1} - g_m <= C (g_m - g_{m-1}).
struct IndexSequence {
    std::function<std::int64_t(std::int64_t)> g;  // m >= 0
    double growth_constant = 2.0;                 // C

    static IndexSequence powers_of_two();         // g_m = 2^m, C = 2
    static IndexSequence consecutive();           // g_m = m + 1, C = 1
};

/// Condensation sequence a_{g_m} = g_{m+1} - g_m, a_n = 0 otherwise
/// (Schloemilch / Cauchy condensation). Validates monotonicity and the
/// growth bound on the materialized window.
class CondensationSequence {
  public:
    CondensationSequence(IndexSequence g, std::int64_t window);

    double term(std::int64_t n) const;            // n >= 1
    double growth_constant() const { return c_; }
    /// (1/N) sum_{n<=N} a_n
    double average(std::int64_t N) const;
    const std::vector<std::int64_t>& knots() const { return g_values_; }

  private:
    std::vector<std::int64_t> g_values_;
    std::vector<double> cumulative_;  // prefix sums of a_n on the window
    double c_ = 0.0;
    std::int64_t window_ = 0;
};

CondensationSequence condensation_sequence(const IndexSequence& g, std::int64_t window = 1 << 21);

}  // namespace srkhs

#endif
