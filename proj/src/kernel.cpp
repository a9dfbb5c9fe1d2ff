#include "srkhs/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "srkhs/errors.hpp"
#include "srkhs/numeric.hpp"

namespace srkhs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// validity: sum_n alpha_n phi_n(t)^2 < infinity, decided symbolically
// ---------------------------------------------------------------------------

void check_validity(const BasisFamily& basis, const ScalingFamily& scaling) {
    if (!scaling.symbolic())
        throw InvalidSpec("scaled kernels require a cataloged (symbolic) scaling");
    switch (basis.kind()) {
        case BasisKind::SineIBB: {
            // |phi_n| <= sqrt(2) (pi n)^{-s/2}: need sum alpha_n n^{-s} < inf,
            // and the bound is tight on a dense set of t.
            GrowthDescriptor d = scaling.descriptor();
            d.poly_exponent -= static_cast<double>(basis.sine_order());
            if (!series_converges(d)) {
                std::ostringstream os;
                os << "scaling " << scaling.label() << " is not a valid scaling of the order-"
                   << basis.sine_order() << " sine family (needs rho < s - 1)";
                throw InvalidSpec(os.str());
            }
            return;
        }
        case BasisKind::GaussianExp: {
            // terms alpha_n u^n / n!: factorial decay beats polynomial and
            // geometric scalings alike (ratio test).
            return;
        }
        case BasisKind::PowerSeries: {
            const auto& w = basis.weights();
            if (w.kind() == WeightKind::Custom)
                throw InvalidSpec("custom weight sequences carry no certified validity rule");
            if (w.kind() == WeightKind::Szego) {
                // terms alpha_n x^{2n}: require geometric scalings to keep
                // tau^2 x^2 < 1 on the whole domain.
                const double xmax = std::max(std::abs(basis.domain().lo), std::abs(basis.domain().hi));
                const GrowthDescriptor d = scaling.descriptor();
                if (d.geometric_rate > 0.0 && d.geometric_rate + 2.0 * std::log(xmax) >= 0.0)
                    throw InvalidSpec("geometric scaling too strong for the szego family on this domain");
            }
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// product-form evaluation (Gaussian and power-series families)
// ---------------------------------------------------------------------------

// Upper bound for phi_{m+1}(x)^2 / phi_m(x)^2, valid for every index >= m and
// non-increasing in m.
double phi_sq_ratio_upper(const BasisFamily& b, std::int64_t m, double x) {
    switch (b.kind()) {
        case BasisKind::GaussianExp: {
            const double u = x * x / (b.length_scale() * b.length_scale());
            return u / static_cast<double>(m + 1);
        }
        case BasisKind::PowerSeries: {
            const double x2 = x * x;
            switch (b.weights().kind()) {
                case WeightKind::Szego:
                    return x2;
                case WeightKind::Exponential:
                    return x2 / static_cast<double>(m + 1);
                case WeightKind::SzegoCounter:
                    return m == 0 ? x2 : x2 / static_cast<double>(m);
                case WeightKind::Custom:
                    break;
            }
            throw InvalidSpec("custom weights carry no certified term-ratio bound");
        }
        case BasisKind::SineIBB:
            break;
    }
    throw UnsupportedFamily("no product-form ratio for this family");
}

KernelValue eval_product_form(const BasisFamily& basis, const ScalingFamily& scaling,
                              const TruncationPolicy& policy, double t, double tp) {
    const std::int64_t origin = basis.index_origin();
    CompensatedSum acc;

    auto add_term = [&](std::int64_t n) {
        const SignedLog term =
            signed_log_mul(basis.log_abs(n, t), basis.log_abs(n, tp));
        if (term.sign != 0) {
            const double lv = scaling.log_term(n) + term.log_mag;
            if (lv > -745.0) acc.add(term.sign * std::exp(lv));
        }
    };

    if (policy.fixed_n) {
        const std::int64_t count = *policy.fixed_n;
        for (std::int64_t j = 0; j < count; ++j) add_term(origin + j);
        return {acc.value(), count, kNaN};
    }

    // log upper bound for tail(x) = sum_{n>N} alpha_n phi_n(x)^2 via the
    // geometric majorant once the combined term ratio q drops below 1
    auto log_tail_upper = [&](std::int64_t N, double x) {
        const double q = scaling.ratio_upper(N + 1) * phi_sq_ratio_upper(basis, N + 1, x);
        if (!(q < 1.0)) return kInf;
        const SignedLog ph = basis.log_abs(N + 1, x);
        if (ph.sign == 0) return kNegInf;
        return scaling.log_term(N + 1) + 2.0 * ph.log_mag - std::log1p(-q);
    };

    std::int64_t next = origin;
    std::int64_t chunk = 16;
    const std::int64_t ratio_from = scaling.ratio_valid_from();
    while (true) {
        const std::int64_t upto = std::min<std::int64_t>(origin + policy.n_max - 1, next + chunk - 1);
        for (; next <= upto; ++next) add_term(next);
        const std::int64_t N = next - 1;
        if (N + 1 >= ratio_from) {
            const double lt1 = log_tail_upper(N, t);
            const double lt2 = log_tail_upper(N, tp);
            if (lt1 < kInf && lt2 < kInf) {
                const double bound = std::exp(0.5 * (lt1 + lt2));
                const double partial = acc.value();
                if (bound <= policy.rel_tol * std::abs(partial) + policy.abs_floor)
                    return {partial, N - origin + 1, bound};
            }
        }
        if (N - origin + 1 >= policy.n_max)
            throw TruncationFailure("n_max reached before the tail tolerance");
        chunk *= 2;
    }
}

// ---------------------------------------------------------------------------
// sine-family evaluation
//
// K(t,t') = sum_n c_n [cos(n th1) - cos(n th2)], c_n = alpha_n (pi n)^{-s},
// th1 = pi|t - t'|, th2 = pi(t + t'). Tails beyond N are handled by
// summation by parts on the forward differences of c_n (the catalog scalings
// make c_n completely monotone past cm_start(), checked locally as a guard),
// and by a midpoint-integral correction on the non-oscillatory diagonal part.
// ---------------------------------------------------------------------------

struct TailPiece {
    double correction = 0.0;
    double bound = 0.0;
    bool ok = false;  // false: differences not yet monotone, enlarge N
};

constexpr int kSbpOrder = 4;

double log_c_coeff(const ScalingFamily& scaling, int s_eff, std::int64_t n) {
    return scaling.log_term(n) -
           static_cast<double>(s_eff) * std::log(M_PI * static_cast<double>(n));
}

// sum_{n>N} c_n z^n, z = e^{i pi u}, u != 0 (mod 2)
TailPiece sbp_tail(const ScalingFamily& scaling, int s_eff, std::int64_t N, double u) {
    double c[kSbpOrder + 1];
    for (int j = 0; j <= kSbpOrder; ++j) {
        const double lc = log_c_coeff(scaling, s_eff, N + 1 + j);
        c[j] = lc > -745.0 ? std::exp(lc) : 0.0;
    }
    double diffs[kSbpOrder];
    for (int j = 0; j < kSbpOrder; ++j) {
        diffs[j] = c[0];
        for (int i = 0; i + 1 <= kSbpOrder - j; ++i) c[i] -= c[i + 1];
        if (diffs[j] < 0.0) return {};  // not yet in the monotone regime
    }
    if (c[0] < 0.0) return {};

    const std::complex<double> z{cos_pi(u), sin_pi(u)};
    const std::complex<double> one_minus_z = 1.0 - z;
    const std::complex<double> w = z / one_minus_z;
    const double arg = std::fmod(static_cast<double>(N + 1) * u, 2.0);
    const std::complex<double> z_pow{cos_pi(arg), sin_pi(arg)};

    std::complex<double> series = 0.0;
    std::complex<double> wj = 1.0;
    for (int j = 0; j < kSbpOrder; ++j) {
        series += wj * diffs[j];
        wj *= -w;
    }
    TailPiece out;
    out.correction = (z_pow / one_minus_z * series).real();
    out.bound = std::pow(std::abs(w), kSbpOrder) * diffs[kSbpOrder - 1];
    out.ok = true;
    return out;
}

// sum_{n>N} c_n (all terms positive; the diagonal component)
TailPiece diagonal_tail(const ScalingFamily& scaling, int s_eff, std::int64_t N) {
    TailPiece out;
    out.ok = true;
    if (scaling.kind() == ScalingKind::Hyperharmonic) {
        // midpoint-rule integral of C x^a with certified error from f', f''
        const double a = scaling.hyper_rho() - static_cast<double>(s_eff);
        const double pref = std::pow(M_PI, -static_cast<double>(s_eff));
        const double X = static_cast<double>(N) + 0.5;
        out.correction = pref * std::pow(X, a + 1.0) / (-(a + 1.0));
        out.bound = pref / 24.0 *
                    (std::abs(a) * std::pow(X, a - 1.0) +
                     std::abs(a * (a - 1.0)) * std::pow(X, a - 2.0));
        return out;
    }
    // bound-only fallback: geometric once the ratio drops below 1, else the
    // polynomial-majorant integral bracket
    const double lc_next = log_c_coeff(scaling, s_eff, N + 1);
    const double q = scaling.ratio_upper(N + 1);  // c-ratio <= alpha-ratio (n^{-s} falls)
    double bound = kInf;
    if (q < 1.0 && lc_next > -745.0)
        bound = std::exp(lc_next) / (1.0 - q);
    try {
        const auto pm = scaling.poly_majorant();
        if (N + 1 >= pm.from) {
            const double e = pm.exponent - static_cast<double>(s_eff);
            if (e < -1.0) {
                const double nd = static_cast<double>(N + 1);
                const double log_pref = pm.log_c - static_cast<double>(s_eff) * std::log(M_PI);
                const double lb = log_add_exp(e * std::log(nd),
                                              (e + 1.0) * std::log(nd) - std::log(-e - 1.0)) +
                                  log_pref;
                bound = std::min(bound, std::exp(lb));
            }
        }
    } catch (const UnsupportedFamily&) {
    }
    out.correction = 0.0;
    out.bound = bound;
    return out;
}

// best available bound for an off-diagonal component: summation by parts,
// falling back to the positive bound |sum c_n cos| <= sum c_n near th = 0
TailPiece component_tail(const ScalingFamily& scaling, int s_eff, std::int64_t N, double u) {
    TailPiece osc = sbp_tail(scaling, s_eff, N, u);
    TailPiece pos = diagonal_tail(scaling, s_eff, N);
    const double pos_bound = pos.correction + pos.bound;
    if (!osc.ok || pos_bound < osc.bound) return {0.0, pos_bound, true};
    return osc;
}

KernelValue eval_sine(const BasisFamily& basis, const ScalingFamily& scaling,
                      const TruncationPolicy& policy, double t, double tp, bool d2) {
    const int s = basis.sine_order();
    // d2 folds (pi n)^2 onto the coefficient: alpha_n (pi n)^{2-s}
    const int s_eff = d2 ? s - 2 : s;
    const double outer_sign = d2 ? -1.0 : 1.0;

    if (t == 0.0 || t == 1.0 || tp == 0.0 || tp == 1.0)
        return {0.0, 0, 0.0};  // the sine basis vanishes at the endpoints

    CompensatedSum acc;
    CompensatedSum abs_acc;
    std::int64_t summed_to = 0;
    auto extend = [&](std::int64_t N) {
        for (std::int64_t n = summed_to + 1; n <= N; ++n) {
            const double lc = log_c_coeff(scaling, s_eff, n);
            if (lc <= -745.0) continue;
            const double c = std::exp(lc);
            const double term =
                2.0 * c * (sin_pi(static_cast<double>(n) * t) * sin_pi(static_cast<double>(n) * tp));
            acc.add(term);
            abs_acc.add(std::abs(term));
        }
        summed_to = N;
    };

    if (policy.fixed_n) {
        extend(*policy.fixed_n);
        return {outer_sign * acc.value(), *policy.fixed_n, kNaN};
    }

    {
        // adaptive evaluation needs a convergent series for the effective order
        GrowthDescriptor d = scaling.descriptor();
        d.poly_exponent -= static_cast<double>(s_eff);
        if (!series_converges(d))
            throw InvalidSpec(
                "series does not converge at this derivative order; use a fixed_n policy");
    }

    const double u1 = std::abs(t - tp);
    const double u2 = t + tp;
    std::int64_t N = std::max<std::int64_t>({64, scaling.cm_start(), scaling.ratio_valid_from()});
    while (true) {
        N = std::min(N, policy.n_max);
        extend(N);
        TailPiece p1 = u1 == 0.0 ? diagonal_tail(scaling, s_eff, N)
                                 : component_tail(scaling, s_eff, N, u1);
        TailPiece p2 = component_tail(scaling, s_eff, N, u2);
        const double rounding = 8.0 * std::numeric_limits<double>::epsilon() * abs_acc.value();
        const double bound = p1.bound + p2.bound + rounding;
        const double value = acc.value() + p1.correction - p2.correction;
        if (bound <= policy.rel_tol * std::abs(value) + policy.abs_floor)
            return {outer_sign * value, N, bound};
        if (N >= policy.n_max) throw TruncationFailure("n_max reached before the tail tolerance");
        N *= 2;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// ScaledKernelSpec
// ---------------------------------------------------------------------------

ScaledKernelSpec::ScaledKernelSpec(BasisFamily basis, ScalingFamily scaling, TruncationPolicy policy)
    : basis_(std::move(basis)), scaling_(std::move(scaling)), policy_(policy) {
    if (basis_.index_origin() != scaling_.index_origin())
        throw IndexMismatch("basis and scaling index origins differ");
    if (!(policy_.rel_tol > 0.0)) throw InvalidSpec("rel_tol must be positive");
    if (policy_.n_max < 1) throw InvalidSpec("n_max must be >= 1");
    if (policy_.fixed_n && *policy_.fixed_n < 1) throw InvalidSpec("fixed_n must be >= 1");
    check_validity(basis_, scaling_);
}

std::string ScaledKernelSpec::label() const {
    return basis_.label() + "+" + scaling_.label();
}

KernelValue ScaledKernelSpec::eval(double t, double t_prime) const {
    basis_.require_in_domain(t);
    basis_.require_in_domain(t_prime);
    if (basis_.kind() == BasisKind::SineIBB)
        return eval_sine(basis_, scaling_, policy_, t, t_prime, false);
    return eval_product_form(basis_, scaling_, policy_, t, t_prime);
}

KernelValue ScaledKernelSpec::eval_d2(double t, double t_prime) const {
    if (basis_.kind() != BasisKind::SineIBB)
        throw UnsupportedFamily("second derivatives only for the sine family");
    basis_.require_in_domain(t);
    basis_.require_in_domain(t_prime);
    return eval_sine(basis_, scaling_, policy_, t, t_prime, true);
}

KernelValue eval_kernel(const ScaledKernelSpec& k, double t, double t_prime) {
    return k.eval(t, t_prime);
}

double d_k(const ScaledKernelSpec& k, double t, double t_prime) {
    const double ktt = k.eval(t, t).value;
    const double kss = k.eval(t_prime, t_prime).value;
    const double kts = k.eval(t, t_prime).value;
    return std::sqrt(std::max(ktt - 2.0 * kts + kss, 0.0));
}

double d_k(const ClosedFormKernel& c, double t, double t_prime) {
    const double v = c.eval(t, t) - 2.0 * c.eval(t, t_prime) + c.eval(t_prime, t_prime);
    return std::sqrt(std::max(v, 0.0));
}

// ---------------------------------------------------------------------------
// closed forms
// ---------------------------------------------------------------------------

double bernoulli_poly_even(int two_s, double x) {
    switch (two_s) {
        case 2:
            return (x - 1.0) * x + 1.0 / 6.0;
        case 4:
            return ((x - 2.0) * x + 1.0) * x * x - 1.0 / 30.0;
        case 6:
            return (((x - 3.0) * x + 2.5) * x * x - 0.5) * x * x + 1.0 / 42.0;
        case 8:
            return ((((x - 4.0) * x + 14.0 / 3.0) * x * x - 7.0 / 3.0) * x * x + 2.0 / 3.0) * x * x -
                   1.0 / 30.0;
        default:
            throw UnsupportedFamily("Bernoulli tables cover even degrees 2..8");
    }
}

ClosedFormKernel ClosedFormKernel::brownian_bridge() {
    ClosedFormKernel c;
    c.id_ = ClosedFormId::BrownianBridge;
    c.domain_ = {0.0, 1.0};
    return c;
}

ClosedFormKernel ClosedFormKernel::ibb_even(int s) {
    if (s < 1 || s > 4) throw UnsupportedFamily("ibb_even implemented for orders 2s <= 8");
    ClosedFormKernel c;
    c.id_ = ClosedFormId::IBBEven;
    c.order_ = s;
    c.domain_ = {0.0, 1.0};
    return c;
}

ClosedFormKernel ClosedFormKernel::gauss(double ell) {
    if (!(ell > 0.0)) throw InvalidSpec("gauss: length-scale must be positive");
    ClosedFormKernel c;
    c.id_ = ClosedFormId::Gauss;
    c.ell_ = ell;
    c.domain_ = {-1.0, 1.0};
    return c;
}

ClosedFormKernel ClosedFormKernel::gauss_hyp(int rho, double ell) {
    if (rho < 1 || rho > 4) throw UnsupportedFamily("gauss_hyp closed forms cover rho = 1..4");
    if (!(ell > 0.0)) throw InvalidSpec("gauss_hyp: length-scale must be positive");
    ClosedFormKernel c;
    c.id_ = ClosedFormId::GaussHyp;
    c.order_ = rho;
    c.ell_ = ell;
    c.domain_ = {-1.0, 1.0};
    return c;
}

ClosedFormKernel ClosedFormKernel::gauss_geo(double tau, double ell) {
    if (!(tau > 0.0) || !(ell > 0.0)) throw InvalidSpec("gauss_geo: tau and ell must be positive");
    ClosedFormKernel c;
    c.id_ = ClosedFormId::GaussGeo;
    c.tau_ = tau;
    c.ell_ = ell;
    c.domain_ = {-1.0, 1.0};
    return c;
}

ClosedFormKernel ClosedFormKernel::mehler(double r) {
    if (!(r > 0.0 && r < 1.0)) throw InvalidSpec("mehler: r must lie in (0,1)");
    ClosedFormKernel c;
    c.id_ = ClosedFormId::Mehler;
    c.r_ = r;
    c.domain_ = {-1.0, 1.0};
    return c;
}

ClosedFormKernel ClosedFormKernel::szego() {
    ClosedFormKernel c;
    c.id_ = ClosedFormId::Szego;
    c.domain_ = {-0.9, 0.9};
    return c;
}

ClosedFormKernel ClosedFormKernel::exponential() {
    ClosedFormKernel c;
    c.id_ = ClosedFormId::Exponential;
    c.domain_ = {-1.0, 1.0};
    return c;
}

ClosedFormKernel ClosedFormKernel::szego_counter() {
    ClosedFormKernel c;
    c.id_ = ClosedFormId::SzegoCounter;
    c.domain_ = {-0.9, 0.9};
    return c;
}

std::string ClosedFormKernel::label() const {
    std::ostringstream os;
    switch (id_) {
        case ClosedFormId::BrownianBridge: return "brownian-bridge";
        case ClosedFormId::IBBEven: os << "ibb-even:" << 2 * order_; return os.str();
        case ClosedFormId::Gauss: os << "gauss:ell=" << ell_; return os.str();
        case ClosedFormId::GaussHyp: os << "gauss-hyp:" << order_ << ",ell=" << ell_; return os.str();
        case ClosedFormId::GaussGeo: os << "gauss-geo:tau=" << tau_ << ",ell=" << ell_; return os.str();
        case ClosedFormId::Mehler: os << "mehler:r=" << r_; return os.str();
        case ClosedFormId::Szego: return "szego";
        case ClosedFormId::Exponential: return "exponential";
        case ClosedFormId::SzegoCounter: return "szego-counter";
    }
    return "?";
}

double ClosedFormKernel::eval(double t, double tp) const {
    switch (id_) {
        case ClosedFormId::BrownianBridge:
            if (t < 0.0 || t > 1.0 || tp < 0.0 || tp > 1.0)
                throw DomainError("brownian bridge kernel lives on [0,1]");
            return std::min(t, tp) - t * tp;
        case ClosedFormId::IBBEven: {
            if (t < 0.0 || t > 1.0 || tp < 0.0 || tp > 1.0)
                throw DomainError("iterated Brownian bridge kernel lives on [0,1]");
            const int s = order_;
            const double sign = (s % 2 == 1) ? 1.0 : -1.0;  // (-1)^{s-1}
            const double pref = sign * std::pow(2.0, 2 * s - 1) / std::tgamma(2.0 * s + 1.0);
            return pref * (bernoulli_poly_even(2 * s, std::abs(t - tp) / 2.0) -
                           bernoulli_poly_even(2 * s, (t + tp) / 2.0));
        }
        case ClosedFormId::Gauss: {
            const double d = t - tp;
            return std::exp(-d * d / (2.0 * ell_ * ell_));
        }
        case ClosedFormId::GaussHyp: {
            const double a = t * tp / (ell_ * ell_);
            double poly = 0.0;
            switch (order_) {
                case 1: poly = a; break;
                case 2: poly = a + a * a; break;
                case 3: poly = a + 3.0 * a * a + a * a * a; break;
                case 4: poly = a + 7.0 * a * a + 6.0 * a * a * a + a * a * a * a; break;
            }
            return std::exp(-(t * t + tp * tp) / (2.0 * ell_ * ell_)) * (1.0 + poly * std::exp(a));
        }
        case ClosedFormId::GaussGeo:
            return std::exp(-(t * t + tp * tp) / (2.0 * ell_ * ell_) +
                            tau_ * tau_ * t * tp / (ell_ * ell_));
        case ClosedFormId::Mehler:
            return std::exp(-(r_ * r_ * (t * t + tp * tp) - 2.0 * r_ * t * tp) /
                            (2.0 * (1.0 - r_ * r_)));
        case ClosedFormId::Szego:
            if (std::abs(t) >= 1.0 || std::abs(tp) >= 1.0 || t * tp == 1.0)
                throw DomainError("szego kernel needs |t|, |t'| < 1");
            return 1.0 / (1.0 - t * tp);
        case ClosedFormId::Exponential:
            return std::exp(t * tp);
        case ClosedFormId::SzegoCounter:
            return 1.0 + t * tp * std::exp(t * tp);
    }
    return 0.0;
}

double eval_closed_form(const ClosedFormKernel& c, double t, double t_prime) {
    return c.eval(t, t_prime);
}

// ---------------------------------------------------------------------------
// translate profiles
// ---------------------------------------------------------------------------

TranslateTable translate_profile(const ScaledKernelSpec& k, double t_prime,
                                 const std::vector<double>& grid, bool with_d2,
                                 bool normalize_d2_min) {
    if (with_d2 && k.basis().kind() != BasisKind::SineIBB)
        throw UnsupportedFamily("d2 profiles only for the sine family");
    TranslateTable table;
    table.grid = grid;
    table.k_values.reserve(grid.size());
    for (double t : grid) table.k_values.push_back(k.eval(t, t_prime).value);
    if (with_d2) {
        table.d2_values.reserve(grid.size());
        for (double t : grid) table.d2_values.push_back(k.eval_d2(t, t_prime).value);
        if (normalize_d2_min && !table.d2_values.empty()) {
            const double mn = *std::min_element(table.d2_values.begin(), table.d2_values.end());
            if (mn < 0.0) {
                for (double& v : table.d2_values) v /= -mn;
            }
        }
    }
    return table;
}

TranslateTable translate_profile(const ClosedFormKernel& c, double t_prime,
                                 const std::vector<double>& grid) {
    TranslateTable table;
    table.grid = grid;
    table.k_values.reserve(grid.size());
    for (double t : grid) table.k_values.push_back(c.eval(t, t_prime));
    return table;
}

}  // namespace srkhs
