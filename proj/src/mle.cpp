#include "srkhs/mle.hpp"

#include <mpfr.h>

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "srkhs/errors.hpp"

namespace srkhs {

namespace {

// Minimal RAII value type over mpfr_t; every value carries its own precision.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    BigFloat(BigFloat&&) = delete;
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  private:
    mpfr_t v_;
};

using Matrix = std::vector<BigFloat>;  // row-major N x N

// K_ij at working precision; closed forms are evaluated in mpfr so matrix
// entries are exact to the working precision rather than to double.
void fill_entry(mpfr_ptr out, const ClosedFormKernel& kernel, mpfr_srcptr ti, mpfr_srcptr tj,
                mpfr_prec_t prec) {
    mpfr_t tmp, s;
    mpfr_init2(tmp, prec);
    mpfr_init2(s, prec);
    switch (kernel.id()) {
        case ClosedFormId::Gauss: {
            mpfr_sub(tmp, ti, tj, MPFR_RNDN);
            mpfr_sqr(tmp, tmp, MPFR_RNDN);
            mpfr_set_d(s, 2.0 * kernel.length_scale() * kernel.length_scale(), MPFR_RNDN);
            mpfr_div(tmp, tmp, s, MPFR_RNDN);
            mpfr_neg(tmp, tmp, MPFR_RNDN);
            mpfr_exp(out, tmp, MPFR_RNDN);
            break;
        }
        case ClosedFormId::GaussGeo: {
            // -(t^2 + t'^2)/(2 ell^2) + tau^2 t t' / ell^2
            const double ell2 = kernel.length_scale() * kernel.length_scale();
            mpfr_sqr(tmp, ti, MPFR_RNDN);
            mpfr_sqr(s, tj, MPFR_RNDN);
            mpfr_add(tmp, tmp, s, MPFR_RNDN);
            mpfr_div_d(tmp, tmp, -2.0 * ell2, MPFR_RNDN);
            mpfr_mul(s, ti, tj, MPFR_RNDN);
            mpfr_mul_d(s, s, kernel.tau() * kernel.tau() / ell2, MPFR_RNDN);
            mpfr_add(tmp, tmp, s, MPFR_RNDN);
            mpfr_exp(out, tmp, MPFR_RNDN);
            break;
        }
        case ClosedFormId::Exponential:
            mpfr_mul(tmp, ti, tj, MPFR_RNDN);
            mpfr_exp(out, tmp, MPFR_RNDN);
            break;
        case ClosedFormId::Szego:
            mpfr_mul(tmp, ti, tj, MPFR_RNDN);
            mpfr_ui_sub(tmp, 1, tmp, MPFR_RNDN);
            mpfr_ui_div(out, 1, tmp, MPFR_RNDN);
            break;
        default:
            // remaining registry kernels fall back to the double evaluation
            mpfr_set_d(out, kernel.eval(mpfr_get_d(ti, MPFR_RNDN), mpfr_get_d(tj, MPFR_RNDN)),
                       MPFR_RNDN);
            break;
    }
    mpfr_clear(tmp);
    mpfr_clear(s);
}

struct SolveOutcome {
    bool ok = false;
    double quadratic_form = 0.0;  // f^T K^-1 f
    double residual_inf = 0.0;
};

// Cholesky K = L L^T, forward/back substitution, residual check.
template <typename EntryFiller>
SolveOutcome try_solve(std::span<const double> f, std::span<const double> points,
                       const EntryFiller& fill, int bits) {
    const std::size_t n = f.size();
    const auto prec = static_cast<mpfr_prec_t>(bits);

    std::vector<BigFloat> ts;
    ts.reserve(n);
    for (double p : points) ts.emplace_back(p, prec);

    Matrix K;
    K.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            K.emplace_back(prec);
            fill(K.back().get(), ts[i].get(), ts[j].get(), prec);
        }

    Matrix L = K;  // overwrite lower triangle in place
    mpfr_t acc, tmp;
    mpfr_init2(acc, prec);
    mpfr_init2(tmp, prec);
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
        mpfr_set(acc, L[j * n + j].get(), MPFR_RNDN);
        for (std::size_t k = 0; k < j; ++k) {
            mpfr_sqr(tmp, L[j * n + k].get(), MPFR_RNDN);
            mpfr_sub(acc, acc, tmp, MPFR_RNDN);
        }
        if (mpfr_sgn(acc) <= 0) {
            ok = false;  // breakdown: escalate precision
            break;
        }
        mpfr_sqrt(L[j * n + j].get(), acc, MPFR_RNDN);
        for (std::size_t i = j + 1; i < n; ++i) {
            mpfr_set(acc, L[i * n + j].get(), MPFR_RNDN);
            for (std::size_t k = 0; k < j; ++k) {
                mpfr_mul(tmp, L[i * n + k].get(), L[j * n + k].get(), MPFR_RNDN);
                mpfr_sub(acc, acc, tmp, MPFR_RNDN);
            }
            mpfr_div(L[i * n + j].get(), acc, L[j * n + j].get(), MPFR_RNDN);
        }
    }

    SolveOutcome out;
    if (ok) {
        // forward: L y = f
        std::vector<BigFloat> y;
        y.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            mpfr_set_d(acc, f[i], MPFR_RNDN);
            for (std::size_t k = 0; k < i; ++k) {
                mpfr_mul(tmp, L[i * n + k].get(), y[k].get(), MPFR_RNDN);
                mpfr_sub(acc, acc, tmp, MPFR_RNDN);
            }
            y.emplace_back(prec);
            mpfr_div(y.back().get(), acc, L[i * n + i].get(), MPFR_RNDN);
        }
        // quadratic form f^T K^-1 f = ||y||^2
        mpfr_set_zero(acc, 1);
        for (std::size_t i = 0; i < n; ++i) {
            mpfr_sqr(tmp, y[i].get(), MPFR_RNDN);
            mpfr_add(acc, acc, tmp, MPFR_RNDN);
        }
        BigFloat qf(prec);
        mpfr_set(qf.get(), acc, MPFR_RNDN);

        // back: L^T x = y
        std::vector<BigFloat> x(n, BigFloat(prec));
        for (std::size_t ii = n; ii-- > 0;) {
            mpfr_set(acc, y[ii].get(), MPFR_RNDN);
            for (std::size_t k = ii + 1; k < n; ++k) {
                mpfr_mul(tmp, L[k * n + ii].get(), x[k].get(), MPFR_RNDN);
                mpfr_sub(acc, acc, tmp, MPFR_RNDN);
            }
            mpfr_div(x[ii].get(), acc, L[ii * n + ii].get(), MPFR_RNDN);
        }
        // residual ||K x - f||_inf
        mpfr_t res;
        mpfr_init2(res, prec);
        mpfr_set_zero(res, 1);
        for (std::size_t i = 0; i < n; ++i) {
            mpfr_set_d(acc, -f[i], MPFR_RNDN);
            for (std::size_t k = 0; k < n; ++k) {
                mpfr_mul(tmp, K[i * n + k].get(), x[k].get(), MPFR_RNDN);
                mpfr_add(acc, acc, tmp, MPFR_RNDN);
            }
            mpfr_abs(acc, acc, MPFR_RNDN);
            if (mpfr_cmp(acc, res) > 0) mpfr_set(res, acc, MPFR_RNDN);
        }
        out.ok = true;
        out.quadratic_form = qf.to_double();
        out.residual_inf = mpfr_get_d(res, MPFR_RNDN);
        mpfr_clear(res);
    }
    mpfr_clear(acc);
    mpfr_clear(tmp);
    return out;
}

template <typename EntryFiller>
SigmaHatResult sigma_hat_impl(std::span<const double> f, std::span<const double> points,
                              const EntryFiller& fill, const PrecisionPolicy& prec) {
    const std::size_t n = f.size();
    if (n == 0 || points.size() != n) throw InvalidSpec("sigma_hat: need matching nonempty f and points");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i] == points[j]) throw DuplicatePoints("sigma_hat: points must be pairwise distinct");
    if (prec.initial_bits < 128 || prec.max_bits < prec.initial_bits)
        throw InvalidSpec("precision policy: need initial_bits >= 128 and max_bits >= initial_bits");

    double f_inf = 0.0;
    for (double v : f) f_inf = std::max(f_inf, std::abs(v));

    for (int bits = prec.initial_bits;; bits *= 2) {
        if (bits > prec.max_bits)
            throw PrecisionExhausted("sigma_hat: max_bits insufficient for this system");
        const SolveOutcome sol = try_solve(f, points, fill, bits);
        if (sol.ok) {
            const double threshold = std::exp2(-bits / 4.0) * f_inf;
            if (f_inf == 0.0 || sol.residual_inf <= threshold) {
                SigmaHatResult out;
                out.sigma_hat = std::sqrt(std::max(sol.quadratic_form, 0.0) /
                                          static_cast<double>(n));
                out.bits_used = bits;
                out.residual_inf = sol.residual_inf;
                return out;
            }
        }
    }
}

}  // namespace

SigmaHatResult sigma_hat(std::span<const double> f_values, const ClosedFormKernel& kernel,
                         std::span<const double> points, const PrecisionPolicy& prec) {
    auto fill = [&kernel](mpfr_ptr out, mpfr_srcptr ti, mpfr_srcptr tj, mpfr_prec_t p) {
        fill_entry(out, kernel, ti, tj, p);
    };
    return sigma_hat_impl(f_values, points, fill, prec);
}

SigmaHatResult sigma_hat(std::span<const double> f_values, const ScaledKernelSpec& kernel,
                         std::span<const double> points, const PrecisionPolicy& prec) {
    // series entries are evaluated in double and widened; the series rel_tol
    // then limits how far the residual certificate is meaningful
    auto fill = [&kernel](mpfr_ptr out, mpfr_srcptr ti, mpfr_srcptr tj, mpfr_prec_t) {
        const double v =
            kernel.eval(mpfr_get_d(ti, MPFR_RNDN), mpfr_get_d(tj, MPFR_RNDN)).value;
        mpfr_set_d(out, v, MPFR_RNDN);
    };
    return sigma_hat_impl(f_values, points, fill, prec);
}

RateExperimentResult rate_experiment(int p, double ell, const std::vector<std::int64_t>& n_list,
                                     const PrecisionPolicy& prec) {
    if (p < 0) throw InvalidSpec("rate_experiment: p must be >= 0");
    if (!(ell > 0.0)) throw InvalidSpec("rate_experiment: ell must be positive");
    if (n_list.empty()) throw InvalidSpec("rate_experiment: empty N list");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        if (n_list[i] < 4) throw InvalidSpec("rate_experiment: each N must be >= 4");
        if (i > 0 && n_list[i] <= n_list[i - 1])
            throw InvalidSpec("rate_experiment: N list must be strictly increasing");
    }

    const ClosedFormKernel kernel = ClosedFormKernel::gauss(ell);
    RateExperimentResult out;
    out.p = p;
    out.ell = ell;
    out.conjectured_constant =
        std::pow(2.0, p) * std::pow(ell, 2 * p) / (std::sqrt(M_PI) * (p + 0.5));

    for (std::int64_t N : n_list) {
        std::vector<double> ts(static_cast<std::size_t>(N));
        std::vector<double> fv(static_cast<std::size_t>(N));
        for (std::int64_t i = 1; i <= N; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(N);
            ts[static_cast<std::size_t>(i - 1)] = t;
            fv[static_cast<std::size_t>(i - 1)] = std::pow(t, p);
        }
        const SigmaHatResult r = sigma_hat(fv, kernel, ts, prec);
        out.per_n.push_back({N, r.sigma_hat * r.sigma_hat, r.bits_used});
    }

    // OLS on (log N, log sigma^2)
    if (out.per_n.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double m = static_cast<double>(out.per_n.size());
        for (const auto& pt : out.per_n) {
            const double x = std::log(static_cast<double>(pt.n));
            const double y = std::log(pt.sigma2);
            sx += x; sy += y; sxx += x * x; sxy += x * y;
        }
        out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    } else {
        out.slope = std::numeric_limits<double>::quiet_NaN();
    }
    double csum = 0.0;
    for (const auto& pt : out.per_n)
        csum += pt.sigma2 * std::pow(static_cast<double>(pt.n), 0.5 - p);
    out.constant = csum / static_cast<double>(out.per_n.size());
    return out;
}

}  // namespace srkhs
