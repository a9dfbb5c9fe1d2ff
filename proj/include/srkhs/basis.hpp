#ifndef SRKHS_BASIS_HPP
#define SRKHS_BASIS_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "srkhs/numeric.hpp"

namespace srkhs {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    bool contains(double t) const { return t >= lo && t <= hi; }
};

enum class WeightKind { Szego, Exponential, SzegoCounter, Custom };

/// Positive weight sequence (w_n) of a power-series kernel
/// K(t,t') = sum_n w_n (tt')^n / (n!)^2. Weights are only ever touched in
/// log space; custom sequences must therefore supply log w_n directly.
class WeightSequence {
  public:
    static WeightSequence szego();           // w_n = (n!)^2
    static WeightSequence exponential();     // w_n = n!
    static WeightSequence szego_counter();   // w_0 = 1, w_n = n! * n
    static WeightSequence custom(std::function<double(std::int64_t)> log_w,
                                 std::string label = "custom");

    WeightKind kind() const { return kind_; }
    double log_w(std::int64_t n) const;
    const std::string& label() const { return label_; }

    /// Growth profile (factorial order, polynomial exponent): w_n asymptotic
    /// to (n!)^factorial_order * n^poly_exponent. Drives the symbolic
    /// membership rules; not available for custom sequences.
    int factorial_order() const { return factorial_order_; }
    double poly_exponent() const { return poly_exponent_; }

  private:
    WeightKind kind_ = WeightKind::Szego;
    int factorial_order_ = 2;
    double poly_exponent_ = 0.0;
    std::string label_ = "szego";
    std::function<double(std::int64_t)> custom_log_w_;
};

enum class BasisKind { SineIBB, GaussianExp, PowerSeries };

/// Orthonormal basis family of H(K) with stable log-space evaluation.
///
/// SineIBB(s):    phi_n(t) = sqrt(2) (pi n)^{-s/2} sin(pi n t),  n >= 1, T=[0,1]
/// GaussianExp:   phi_n(t) = t^n / (ell^n sqrt(n!)) e^{-t^2/(2 ell^2)}, n >= 0
/// PowerSeries:   phi_n(t) = t^n sqrt(w_n) / n!,                 n >= 0
class BasisFamily {
  public:
    static BasisFamily sine_ibb(int s);
    static BasisFamily gaussian(double ell, Interval domain = {-1.0, 1.0});
    static BasisFamily power_series(WeightSequence w, Interval domain);

    BasisKind kind() const { return kind_; }
    std::int64_t index_origin() const { return origin_; }
    Interval domain() const { return domain_; }
    int sine_order() const { return s_; }
    double length_scale() const { return ell_; }
    const WeightSequence& weights() const { return weights_; }
    std::string label() const;

    /// Whether d_K(t,t') = ||K(.,t)-K(.,t')||_K is assumed to be a metric on
    /// the family's domain. Holds for every cataloged family; recorded as an
    /// assumption flag rather than verified computationally.
    bool dk_metric() const { return dk_metric_; }
    BasisFamily with_dk_metric(bool v) const;

    double eval(std::int64_t n, double t) const;
    SignedLog log_abs(std::int64_t n, double t) const;
    /// Term-wise second derivative; sine family only: phi_n'' = -(pi n)^2 phi_n.
    double eval_d2(std::int64_t n, double t) const;

    void require_in_domain(double t) const;

  private:
    BasisKind kind_ = BasisKind::SineIBB;
    std::int64_t origin_ = 1;
    Interval domain_{0.0, 1.0};
    int s_ = 2;
    double ell_ = 1.0;
    WeightSequence weights_;
    bool dk_metric_ = true;
};

}  // namespace srkhs

#endif
