#ifndef SRKHS_MLE_HPP
#define SRKHS_MLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "srkhs/kernel.hpp"

namespace srkhs {

/// Extended-precision policy for the kernel-matrix Cholesky: start at
/// initial_bits, double on breakdown or residual failure, give up past
/// max_bits. No jitter is ever added; that would change the estimand.
struct PrecisionPolicy {
    int initial_bits = 512;
    int max_bits = 8192;
};

struct SigmaHatResult {
    double sigma_hat = 0.0;
    int bits_used = 0;
    double residual_inf = 0.0;  // ||K x - f||_inf of the accepted solve
};

/// Maximum likelihood scale estimate sigma_hat = sqrt(f^T K^-1 f / N).
/// The kernel matrix is assembled at working precision, factored by
/// Cholesky, and solutions are accepted only when the residual certificate
/// ||K x - f||_inf <= 2^{-bits/4} ||f||_inf holds.
SigmaHatResult sigma_hat(std::span<const double> f_values, const ClosedFormKernel& kernel,
                         std::span<const double> points, const PrecisionPolicy& prec = {});

/// Same estimate with the kernel matrix filled from a scaled-kernel series
/// evaluated in double precision and widened (entry accuracy is then the
/// series tolerance, which bounds the meaningful precision of the result).
SigmaHatResult sigma_hat(std::span<const double> f_values, const ScaledKernelSpec& kernel,
                         std::span<const double> points, const PrecisionPolicy& prec = {});

struct RatePoint {
    std::int64_t n = 0;
    double sigma2 = 0.0;
    int bits = 0;
};

struct RateExperimentResult {
    std::vector<RatePoint> per_n;
    double slope = 0.0;                // OLS fit of log sigma^2 vs log N; NaN if < 2 points
    double constant = 0.0;             // mean of sigma^2 * N^{1/2 - p}
    double conjectured_constant = 0.0; // 2^p ell^{2p} / (sqrt(pi) (p + 1/2))
    int p = 0;
    double ell = 0.0;
};

/// Desk-scale reproduction of the monomial MLE rates: f(t) = t^p on the
/// uniform grid t_i = i/N under the Gaussian kernel; fits the log-log slope
/// against the conjectured sigma^2 ~ C N^{p-1/2}. The conjectured constant
/// is reported for comparison only, never asserted.
RateExperimentResult rate_experiment(int p, double ell, const std::vector<std::int64_t>& n_list,
                                     const PrecisionPolicy& prec = {});

}  // namespace srkhs

#endif
