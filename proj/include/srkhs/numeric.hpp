#ifndef SRKHS_NUMERIC_HPP
#define SRKHS_NUMERIC_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace srkhs {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// sin(pi*x) with exact zeros at integer x and exact +-1 at half-integers.
/// Reduces the argument modulo 2 before multiplying by pi, so large n*t
/// arguments do not lose the periodic structure.
inline double sin_pi(double x) {
    double r = std::fmod(x, 2.0);
    if (r < 0.0) r += 2.0;
    // fold [0,2) down to [0, 0.5] where sin(pi r) is evaluated directly
    double sign = 1.0;
    if (r >= 1.0) {
        r -= 1.0;
        sign = -1.0;
    }
    if (r > 0.5) r = 1.0 - r;
    if (r == 0.0) return sign * 0.0;
    if (r == 0.5) return sign * 1.0;
    return sign * std::sin(M_PI * r);
}

/// cos(pi*x) with the same exact reductions as sin_pi.
inline double cos_pi(double x) { return sin_pi(0.5 - x); }

/// log(exp(a) + exp(b)) without overflow; handles -inf identities.
inline double log_add_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double m = a > b ? a : b;
    double s = a > b ? b : a;
    return m + std::log1p(std::exp(s - m));
}

/// log(n!) via lgamma; exact argument handling for n >= 0.
inline double log_factorial(std::int64_t n) {
    return std::lgamma(static_cast<double>(n) + 1.0);
}

/// Sign/log-magnitude pair: value = sign * exp(log_mag), sign in {-1,0,+1}.
struct SignedLog {
    int sign = 0;
    double log_mag = kNegInf;

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_mag); }
};

inline SignedLog signed_log_mul(SignedLog a, SignedLog b) {
    if (a.sign == 0 || b.sign == 0) return {};
    return {a.sign * b.sign, a.log_mag + b.log_mag};
}

/// Neumaier compensated accumulator; summation order is the caller's.
class CompensatedSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Round-trip-safe decimal rendering (17 significant digits). Single
/// formatting pathway for every CSV/stdout number the tools emit.
std::string format_double(double x);

/// Inverse standard normal CDF (Wichura's AS 241, double precision).
double inverse_normal_cdf(double p);

}  // namespace srkhs

#endif
