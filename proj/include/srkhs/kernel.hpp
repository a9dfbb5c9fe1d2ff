#ifndef SRKHS_KERNEL_HPP
#define SRKHS_KERNEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srkhs/basis.hpp"
#include "srkhs/scaling.hpp"

namespace srkhs {

struct TruncationPolicy {
    double rel_tol = 1e-12;
    double abs_floor = 1e-300;
    std::int64_t n_max = 100000;
    std::optional<std::int64_t> fixed_n;  // term count override; Figure-style runs use 5000

    static TruncationPolicy fixed(std::int64_t n) {
        TruncationPolicy p;
        p.fixed_n = n;
        return p;
    }
};

struct KernelValue {
    double value = 0.0;
    std::int64_t terms_used = 0;
    double tail_bound = 0.0;  // certified bound on |K - value|; NaN under fixed_n
};

/// The computable scaled kernel K_{A,Phi}: basis + scaling + truncation.
/// Construction verifies index-origin agreement and the family-specific
/// scaling validity rule (sum_n alpha_n phi_n(t)^2 < infinity).
class ScaledKernelSpec {
  public:
    ScaledKernelSpec(BasisFamily basis, ScalingFamily scaling, TruncationPolicy policy = {});

    const BasisFamily& basis() const { return basis_; }
    const ScalingFamily& scaling() const { return scaling_; }
    const TruncationPolicy& policy() const { return policy_; }
    std::string label() const;

    KernelValue eval(double t, double t_prime) const;
    /// Second derivative in the first argument (sine family only):
    /// d2/dt2 K(t,t') = -sum alpha_n (pi n)^2 phi_n(t) phi_n(t').
    KernelValue eval_d2(double t, double t_prime) const;

  private:
    BasisFamily basis_;
    ScalingFamily scaling_;
    TruncationPolicy policy_;
};

KernelValue eval_kernel(const ScaledKernelSpec& k, double t, double t_prime);

/// Canonical pseudometric d_K(t,t') = sqrt(K(t,t) - 2 K(t,t') + K(t',t')).
double d_k(const ScaledKernelSpec& k, double t, double t_prime);

enum class ClosedFormId {
    BrownianBridge,   // min{t,t'} - t t'
    IBBEven,          // order 2s via Bernoulli polynomials, 2s <= 8
    Gauss,
    GaussHyp,         // rho in 1..4
    GaussGeo,
    Mehler,
    Szego,
    Exponential,
    SzegoCounter,
};

/// Closed-form registry entry used as an oracle against series evaluation.
class ClosedFormKernel {
  public:
    static ClosedFormKernel brownian_bridge();
    static ClosedFormKernel ibb_even(int s);                  // kernel order 2s, s in 1..4
    static ClosedFormKernel gauss(double ell);
    static ClosedFormKernel gauss_hyp(int rho, double ell);   // rho in 1..4
    static ClosedFormKernel gauss_geo(double tau, double ell);
    static ClosedFormKernel mehler(double r);
    static ClosedFormKernel szego();
    static ClosedFormKernel exponential();
    static ClosedFormKernel szego_counter();

    ClosedFormId id() const { return id_; }
    std::string label() const;
    Interval domain() const { return domain_; }

    double eval(double t, double t_prime) const;

    double length_scale() const { return ell_; }
    double tau() const { return tau_; }
    double mehler_r() const { return r_; }
    int order() const { return order_; }

  private:
    ClosedFormId id_ = ClosedFormId::BrownianBridge;
    double ell_ = 1.0;
    double tau_ = 1.0;
    double r_ = 0.5;
    int order_ = 1;
    Interval domain_{0.0, 1.0};
};

double eval_closed_form(const ClosedFormKernel& c, double t, double t_prime);

double d_k(const ClosedFormKernel& c, double t, double t_prime);

/// Bernoulli polynomial B_{2s}(x) from explicit coefficient tables, 2s <= 8.
double bernoulli_poly_even(int two_s, double x);

struct TranslateTable {
    std::vector<double> grid;
    std::vector<double> k_values;
    std::vector<double> d2_values;  // empty unless requested
};

/// Rows (t, K(t,t'), optional d2/dt2 K(t,t')) over a grid; when
/// normalize_d2_min is set the d2 column is divided by |min| so its minimum
/// is exactly -1.
TranslateTable translate_profile(const ScaledKernelSpec& k, double t_prime,
                                 const std::vector<double>& grid, bool with_d2,
                                 bool normalize_d2_min);
TranslateTable translate_profile(const ClosedFormKernel& c, double t_prime,
                                 const std::vector<double>& grid);

}  // namespace srkhs

#endif
