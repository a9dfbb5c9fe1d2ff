#include "srkhs/membership.hpp"

#include <cmath>

#include "srkhs/errors.hpp"
#include "srkhs/numeric.hpp"

namespace srkhs {

std::string to_string(SampleProbability p) {
    switch (p) {
        case SampleProbability::Zero: return "0";
        case SampleProbability::One: return "1";
        case SampleProbability::Undetermined: return "undetermined";
    }
    return "?";
}

std::string to_string(SupportMembership m) {
    switch (m) {
        case SupportMembership::Member: return "member";
        case SupportMembership::NotMember: return "not-member";
        case SupportMembership::Undetermined: return "undetermined";
    }
    return "?";
}

std::string to_string(SupportReason r) {
    switch (r) {
        case SupportReason::LiminfZero: return "liminf-zero";
        case SupportReason::SupInfinite: return "sup-infinite";
    }
    return "?";
}

MembershipVerdict verdict_from(const ConvergenceVerdict& reason) {
    MembershipVerdict v;
    v.reason = reason;
    switch (reason.value) {
        case VerdictValue::Converges: v.probability = SampleProbability::One; break;
        case VerdictValue::Diverges: v.probability = SampleProbability::Zero; break;
        case VerdictValue::Inconclusive: v.probability = SampleProbability::Undetermined; break;
    }
    return v;
}

MembershipVerdict sample_membership(const ScaledKernelSpec& k) {
    if (!k.basis().dk_metric())
        throw MetricAssumptionUnmet(
            "the d_K-metric assumption flag is not set for this basis family");
    return verdict_from(classify_reciprocal_sum(k.scaling()));
}

// ---------------------------------------------------------------------------
// coefficient families
// ---------------------------------------------------------------------------

CoefficientFamily CoefficientFamily::constant(double c) {
    CoefficientFamily f;
    f.kind_ = CoefficientKind::Constant;
    f.origin_ = 1;
    f.c_ = c;
    f.label_ = "const";
    return f;
}

CoefficientFamily CoefficientFamily::hyperharmonic(double rho) {
    CoefficientFamily f;
    f.kind_ = CoefficientKind::Hyperharmonic;
    f.origin_ = 1;
    f.rho_ = rho;
    f.label_ = "hyp";
    return f;
}

CoefficientFamily CoefficientFamily::indicator_powers_of_two() {
    CoefficientFamily f;
    f.kind_ = CoefficientKind::SubsequenceIndicator;
    f.origin_ = 1;
    f.indicator_pow2_ = true;
    f.indicator_symbolic_ = true;
    f.label_ = "ind:pow2";
    return f;
}

CoefficientFamily CoefficientFamily::indicator_odd() {
    CoefficientFamily f;
    f.kind_ = CoefficientKind::SubsequenceIndicator;
    f.origin_ = 1;
    f.indicator_pow2_ = false;
    f.indicator_symbolic_ = true;
    f.label_ = "ind:odd";
    return f;
}

CoefficientFamily CoefficientFamily::indicator_custom(std::function<bool(std::int64_t)> rule,
                                                      std::string label) {
    CoefficientFamily f;
    f.kind_ = CoefficientKind::SubsequenceIndicator;
    f.origin_ = 1;
    f.indicator_symbolic_ = false;
    f.indicator_rule_ = std::move(rule);
    f.label_ = std::move(label);
    return f;
}

CoefficientFamily CoefficientFamily::monomial(int p, double ell) {
    if (p < 0) throw InvalidSpec("monomial degree must be >= 0");
    if (!(ell > 0.0)) throw InvalidSpec("monomial coefficients need a positive length-scale");
    CoefficientFamily f;
    f.kind_ = CoefficientKind::Monomial;
    f.origin_ = 0;
    f.p_ = p;
    f.ell_ = ell;
    f.label_ = "mono";
    return f;
}

CoefficientFamily CoefficientFamily::explicit_fn(std::function<double(std::int64_t)> gen,
                                                 std::string label) {
    CoefficientFamily f;
    f.kind_ = CoefficientKind::Explicit;
    f.origin_ = 1;
    f.explicit_gen_ = std::move(gen);
    f.label_ = std::move(label);
    return f;
}

namespace {

bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

double CoefficientFamily::term(std::int64_t n) const {
    if (n < origin_) throw IndexError("coefficient index below origin");
    switch (kind_) {
        case CoefficientKind::Constant:
            return c_;
        case CoefficientKind::Hyperharmonic:
            return std::pow(static_cast<double>(n), rho_);
        case CoefficientKind::SubsequenceIndicator:
            if (!indicator_symbolic_) return indicator_rule_(n) ? 1.0 : 0.0;
            if (indicator_pow2_) return is_power_of_two(n) ? 1.0 : 0.0;
            return (n % 2 == 1) ? 1.0 : 0.0;
        case CoefficientKind::Monomial:
            return monomial_coefficient_at_index(p_, ell_, n);
        case CoefficientKind::Explicit:
            return explicit_gen_(n);
    }
    return 0.0;
}

double CoefficientFamily::log_sq(std::int64_t n) const {
    const double v = term(n);
    if (v == 0.0) return kNegInf;
    return 2.0 * std::log(std::abs(v));
}

// ---------------------------------------------------------------------------
// rkhs_norm_sq
// ---------------------------------------------------------------------------

namespace {

// Convergence class of sum_n f_n^2 / alpha_n for cataloged pairs; nullopt
// when only numeric evidence is possible.
std::optional<VerdictValue> symbolic_norm_verdict(const CoefficientFamily& f,
                                                  const ScalingFamily& a) {
    if (!a.symbolic()) return std::nullopt;
    const GrowthDescriptor da = a.descriptor();
    switch (f.kind()) {
        case CoefficientKind::Constant: {
            if (f.constant_value() == 0.0) return VerdictValue::Converges;
            return classify_reciprocal_sum(a).value;
        }
        case CoefficientKind::Hyperharmonic: {
            GrowthDescriptor term{-da.geometric_rate, 2.0 * f.hyper_rho() - da.poly_exponent, {}};
            for (double L : da.log_exponents) term.log_exponents.push_back(-L);
            return series_converges(term) ? VerdictValue::Converges : VerdictValue::Diverges;
        }
        case CoefficientKind::SubsequenceIndicator: {
            if (!f.indicator_symbolic()) return std::nullopt;
            if (!f.indicator_is_pow2()) {
                // odd indices inherit the full-series class
                return classify_reciprocal_sum(a).value;
            }
            // sum over n = 2^k of 1/alpha_n
            if (da.geometric_rate != 0.0)
                return da.geometric_rate > 0.0 ? VerdictValue::Converges : VerdictValue::Diverges;
            if (da.poly_exponent != 0.0)
                return da.poly_exponent > 0.0 ? VerdictValue::Converges : VerdictValue::Diverges;
            GrowthDescriptor in_k{0.0, 0.0, {}};
            if (!da.log_exponents.empty()) {
                in_k.poly_exponent = -da.log_exponents.front();
                for (std::size_t j = 1; j < da.log_exponents.size(); ++j)
                    in_k.log_exponents.push_back(-da.log_exponents[j]);
            }
            return series_converges(in_k) ? VerdictValue::Converges : VerdictValue::Diverges;
        }
        case CoefficientKind::Monomial:
            return std::nullopt;  // handled by monomial_membership
        case CoefficientKind::Explicit:
            return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

NormResult rkhs_norm_sq(const CoefficientFamily& f, const ScalingFamily& a, std::int64_t N) {
    if (f.index_origin() != a.index_origin())
        throw IndexMismatch("coefficient and scaling index origins differ");
    if (N < 1) throw IndexError("rkhs_norm_sq needs N >= 1");

    CompensatedSum acc;
    auto add_index = [&](std::int64_t n) {
        const double lsq = f.log_sq(n);
        if (lsq == kNegInf) return;
        const double lv = lsq - a.log_term(n);
        if (lv > -745.0) acc.add(std::exp(lv));
    };

    // indicator and monomial families have sparse support: walk it directly
    if (f.kind() == CoefficientKind::SubsequenceIndicator && f.indicator_symbolic() &&
        f.indicator_is_pow2()) {
        for (std::int64_t n = 1; n <= N && n > 0; n *= 2) add_index(n);
    } else if (f.kind() == CoefficientKind::SubsequenceIndicator && f.indicator_symbolic()) {
        for (std::int64_t n = 1; n <= N; n += 2) add_index(n);
    } else if (f.kind() == CoefficientKind::Monomial) {
        for (std::int64_t n = f.monomial_p(); n <= N; n += 2) add_index(n);
    } else {
        if (N > (std::int64_t{1} << 26))
            throw IndexError("dense norm accumulation capped at 2^26 terms");
        for (std::int64_t n = f.index_origin(); n <= N; ++n) add_index(n);
    }

    NormResult out;
    out.partial = acc.value();
    if (f.kind() == CoefficientKind::Monomial) {
        out.verdict = monomial_membership(f.monomial_p(), a).reason;
        return out;
    }
    if (auto v = symbolic_norm_verdict(f, a)) {
        out.verdict = {*v, {}};
    } else {
        Evidence ev;
        ev.partial_sum = out.partial;
        ev.tail_bound = kInf;
        ev.terms = N;
        out.verdict = {VerdictValue::Inconclusive, ev};
    }
    return out;
}

// ---------------------------------------------------------------------------
// support-set classification
// ---------------------------------------------------------------------------

SupportClassification support_set_classify(const CoefficientFamily& f) {
    switch (f.kind()) {
        case CoefficientKind::Constant:
            if (f.constant_value() == 0.0)
                return {SupportMembership::NotMember, SupportReason::LiminfZero, {}};
            return {SupportMembership::Member, {}, {}};
        case CoefficientKind::Hyperharmonic: {
            const double rho = f.hyper_rho();
            if (rho < 0.0) return {SupportMembership::NotMember, SupportReason::LiminfZero, {}};
            if (rho > 0.0) return {SupportMembership::NotMember, SupportReason::SupInfinite, {}};
            return {SupportMembership::Member, {}, {}};
        }
        case CoefficientKind::SubsequenceIndicator:
            if (f.indicator_symbolic())
                return {SupportMembership::NotMember, SupportReason::LiminfZero, {}};
            break;
        case CoefficientKind::Monomial:
            // zero at every index not of the form 2n+p
            return {SupportMembership::NotMember, SupportReason::LiminfZero, {}};
        case CoefficientKind::Explicit:
            break;
    }
    WindowStats stats;
    stats.window = 10000;
    stats.min_sq = kInf;
    stats.max_sq = 0.0;
    for (std::int64_t n = f.index_origin(); n <= stats.window; ++n) {
        const double sq = f.term(n) * f.term(n);
        stats.min_sq = std::min(stats.min_sq, sq);
        stats.max_sq = std::max(stats.max_sq, sq);
    }
    return {SupportMembership::Undetermined, {}, stats};
}

// ---------------------------------------------------------------------------
// power-series membership
// ---------------------------------------------------------------------------

MembershipVerdict power_series_membership(const WeightSequence& w, const WeightSequence& w_bar) {
    if (w.kind() != WeightKind::Custom && w_bar.kind() != WeightKind::Custom) {
        const int d = w.factorial_order() - w_bar.factorial_order();
        const double e = w.poly_exponent() - w_bar.poly_exponent();
        VerdictValue v;
        if (d != 0)
            v = d < 0 ? VerdictValue::Converges : VerdictValue::Diverges;
        else
            v = e < -1.0 ? VerdictValue::Converges : VerdictValue::Diverges;
        return verdict_from({v, {}});
    }
    const std::int64_t N = 400;
    CompensatedSum acc;
    for (std::int64_t n = 0; n <= N; ++n) {
        const double lv = w.log_w(n) - w_bar.log_w(n);
        if (lv > -745.0) acc.add(std::exp(lv));
    }
    Evidence ev{acc.value(), kInf, N};
    return verdict_from({VerdictValue::Inconclusive, ev});
}

// ---------------------------------------------------------------------------
// monomials and the Stirling asymptotic
// ---------------------------------------------------------------------------

double monomial_coefficient(int p, double ell, std::int64_t n) {
    if (n < 0) throw IndexError("monomial coefficient index must be >= 0");
    const double lc = p * std::log(ell) + 0.5 * log_factorial(2 * n + p) -
                      static_cast<double>(n) * std::log(2.0) - log_factorial(n);
    return std::exp(lc);
}

double monomial_coefficient_at_index(int p, double ell, std::int64_t m) {
    if (m < 0) throw IndexError("basis index must be >= 0");
    if (m < p || (m - p) % 2 != 0) return 0.0;
    return monomial_coefficient(p, ell, (m - p) / 2);
}

FunctionMembership monomial_membership(int p, const ScalingFamily& a) {
    if (p < 0) throw InvalidSpec("monomial degree must be >= 0");
    if (a.kind() == ScalingKind::Hyperharmonic) {
        const bool member = a.hyper_rho() > static_cast<double>(p) + 0.5;
        return {member ? SupportMembership::Member : SupportMembership::NotMember,
                {member ? VerdictValue::Converges : VerdictValue::Diverges, {}}};
    }
    // other families: partial sums of sum alpha_{2n+p}^{-1} (2n+p)!/(2^{2n}(n!)^2)
    const std::int64_t N = 20000;
    CompensatedSum acc;
    for (std::int64_t n = 0; n <= N; ++n) {
        const double lv = -a.log_term(2 * n + p) + log_factorial(2 * n + p) -
                          2.0 * static_cast<double>(n) * std::log(2.0) - 2.0 * log_factorial(n);
        if (lv > -745.0) acc.add(std::exp(lv));
    }
    Evidence ev{acc.value(), kInf, N};
    return {SupportMembership::Undetermined, {VerdictValue::Inconclusive, ev}};
}

double stirling_ratio(int p, std::int64_t n) {
    if (n < 1) throw IndexError("stirling_ratio needs n >= 1");
    const double log_exact = log_factorial(2 * n + p) -
                             2.0 * static_cast<double>(n) * std::log(2.0) -
                             2.0 * log_factorial(n);
    const double log_asymp = p * std::log(2.0) - 0.5 * std::log(M_PI) +
                             (static_cast<double>(p) - 0.5) * std::log(static_cast<double>(n));
    return std::exp(log_exact - log_asymp);
}

}  // namespace srkhs
