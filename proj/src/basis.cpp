#include "srkhs/basis.hpp"

#include <cmath>
#include <sstream>

#include "srkhs/errors.hpp"

namespace srkhs {

WeightSequence WeightSequence::szego() {
    WeightSequence w;
    w.kind_ = WeightKind::Szego;
    w.factorial_order_ = 2;
    w.poly_exponent_ = 0.0;
    w.label_ = "szego";
    return w;
}

WeightSequence WeightSequence::exponential() {
    WeightSequence w;
    w.kind_ = WeightKind::Exponential;
    w.factorial_order_ = 1;
    w.poly_exponent_ = 0.0;
    w.label_ = "exp";
    return w;
}

WeightSequence WeightSequence::szego_counter() {
    WeightSequence w;
    w.kind_ = WeightKind::SzegoCounter;
    w.factorial_order_ = 1;
    w.poly_exponent_ = 1.0;
    w.label_ = "counter";
    return w;
}

WeightSequence WeightSequence::custom(std::function<double(std::int64_t)> log_w,
                                      std::string label) {
    WeightSequence w;
    w.kind_ = WeightKind::Custom;
    w.custom_log_w_ = std::move(log_w);
    w.label_ = std::move(label);
    return w;
}

double WeightSequence::log_w(std::int64_t n) const {
    if (n < 0) throw IndexError("weight index must be >= 0");
    switch (kind_) {
        case WeightKind::Szego:
            return 2.0 * log_factorial(n);
        case WeightKind::Exponential:
            return log_factorial(n);
        case WeightKind::SzegoCounter:
            return n == 0 ? 0.0 : log_factorial(n) + std::log(static_cast<double>(n));
        case WeightKind::Custom:
            return custom_log_w_(n);
    }
    return 0.0;
}

BasisFamily BasisFamily::sine_ibb(int s) {
    if (s < 2) throw InvalidSpec("sine_ibb: order s must be >= 2");
    BasisFamily b;
    b.kind_ = BasisKind::SineIBB;
    b.origin_ = 1;
    b.domain_ = {0.0, 1.0};
    b.s_ = s;
    return b;
}

BasisFamily BasisFamily::gaussian(double ell, Interval domain) {
    if (!(ell > 0.0)) throw InvalidSpec("gaussian: length-scale must be positive");
    if (!(domain.lo < domain.hi)) throw InvalidSpec("gaussian: empty domain");
    BasisFamily b;
    b.kind_ = BasisKind::GaussianExp;
    b.origin_ = 0;
    b.domain_ = domain;
    b.ell_ = ell;
    return b;
}

BasisFamily BasisFamily::power_series(WeightSequence w, Interval domain) {
    if (!(domain.lo < domain.hi)) throw InvalidSpec("power_series: empty domain");
    if (w.kind() == WeightKind::Szego &&
        !(domain.lo > -1.0 && domain.hi < 1.0))
        throw InvalidSpec("szego weights require a domain inside (-1,1)");
    BasisFamily b;
    b.kind_ = BasisKind::PowerSeries;
    b.origin_ = 0;
    b.domain_ = domain;
    b.weights_ = std::move(w);
    return b;
}

BasisFamily BasisFamily::with_dk_metric(bool v) const {
    BasisFamily b = *this;
    b.dk_metric_ = v;
    return b;
}

std::string BasisFamily::label() const {
    std::ostringstream os;
    switch (kind_) {
        case BasisKind::SineIBB:
            os << "ibb:s=" << s_;
            break;
        case BasisKind::GaussianExp:
            os << "gauss:ell=" << ell_;
            break;
        case BasisKind::PowerSeries:
            os << "pow:" << weights_.label();
            break;
    }
    return os.str();
}

void BasisFamily::require_in_domain(double t) const {
    if (!domain_.contains(t)) {
        std::ostringstream os;
        os << "t=" << t << " outside the basis domain [" << domain_.lo << "," << domain_.hi << "]";
        throw DomainError(os.str());
    }
}

SignedLog BasisFamily::log_abs(std::int64_t n, double t) const {
    require_in_domain(t);
    if (n < origin_) throw IndexError("basis index below the family origin");
    switch (kind_) {
        case BasisKind::SineIBB: {
            const double sn = sin_pi(static_cast<double>(n) * t);
            if (sn == 0.0) return {};
            const double lm = 0.5 * std::log(2.0) -
                              0.5 * s_ * std::log(M_PI * static_cast<double>(n)) +
                              std::log(std::abs(sn));
            return {sn > 0.0 ? 1 : -1, lm};
        }
        case BasisKind::GaussianExp: {
            const double gaussian_part = -t * t / (2.0 * ell_ * ell_);
            if (n == 0) return {1, gaussian_part};
            if (t == 0.0) return {};
            const double nd = static_cast<double>(n);
            const double lm = nd * (std::log(std::abs(t)) - std::log(ell_)) -
                              0.5 * log_factorial(n) + gaussian_part;
            int sign = (t < 0.0 && (n % 2 != 0)) ? -1 : 1;
            return {sign, lm};
        }
        case BasisKind::PowerSeries: {
            if (n == 0) return {1, 0.5 * weights_.log_w(0)};
            if (t == 0.0) return {};
            const double nd = static_cast<double>(n);
            const double lm = nd * std::log(std::abs(t)) + 0.5 * weights_.log_w(n) -
                              log_factorial(n);
            int sign = (t < 0.0 && (n % 2 != 0)) ? -1 : 1;
            return {sign, lm};
        }
    }
    return {};
}

double BasisFamily::eval(std::int64_t n, double t) const {
    return log_abs(n, t).value();
}

double BasisFamily::eval_d2(std::int64_t n, double t) const {
    if (kind_ != BasisKind::SineIBB)
        throw UnsupportedFamily("term-wise second derivative only for the sine family");
    const double pn = M_PI * static_cast<double>(n);
    return -(pn * pn) * eval(n, t);
}

}  // namespace srkhs
