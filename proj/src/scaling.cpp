#include "srkhs/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "srkhs/errors.hpp"
#include "srkhs/numeric.hpp"

namespace srkhs {

std::string to_string(VerdictValue v) {
    switch (v) {
        case VerdictValue::Converges: return "converges";
        case VerdictValue::Diverges: return "diverges";
        case VerdictValue::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(ScalingOrder o) {
    switch (o) {
        case ScalingOrder::EqualUpToNormEquivalence: return "equal-up-to-norm-equivalence";
        case ScalingOrder::AProperSubsetOfB: return "A-proper-subset-of-B";
        case ScalingOrder::BProperSubsetOfA: return "B-proper-subset-of-A";
        case ScalingOrder::Incomparable: return "incomparable";
    }
    return "?";
}

int GrowthDescriptor::compare(const GrowthDescriptor& other) const {
    if (geometric_rate != other.geometric_rate)
        return geometric_rate < other.geometric_rate ? -1 : 1;
    if (poly_exponent != other.poly_exponent)
        return poly_exponent < other.poly_exponent ? -1 : 1;
    const std::size_t levels = std::max(log_exponents.size(), other.log_exponents.size());
    for (std::size_t j = 0; j < levels; ++j) {
        const double a = j < log_exponents.size() ? log_exponents[j] : 0.0;
        const double b = j < other.log_exponents.size() ? other.log_exponents[j] : 0.0;
        if (a != b) return a < b ? -1 : 1;
    }
    return 0;
}

// Bertrand series scale: sums over exp(g n) n^p log(n)^{L_1} loglog(n)^{L_2} ...
bool series_converges(const GrowthDescriptor& g) {
    if (g.geometric_rate != 0.0) return g.geometric_rate < 0.0;
    if (g.poly_exponent != -1.0) return g.poly_exponent < -1.0;
    for (double L : g.log_exponents) {
        if (L != -1.0) return L < -1.0;
    }
    return false;  // all log levels at -1, next implicit exponent 0
}

namespace {

double log_of_index(std::int64_t n) { return std::log(static_cast<double>(n)); }

// iterated logarithm log_p(x); requires positivity all the way down
double iter_log(int p, double x) {
    double v = x;
    for (int j = 0; j < p; ++j) v = std::log(v);
    return v;
}

}  // namespace

ScalingFamily ScalingFamily::hyperharmonic(double rho, std::int64_t origin) {
    if (rho < 0.0) throw InvalidSpec("hyperharmonic scaling requires rho >= 0");
    if (origin < 0) throw InvalidSpec("scaling index origin must be >= 0");
    ScalingFamily a;
    a.kind_ = ScalingKind::Hyperharmonic;
    a.origin_ = origin;
    a.rho_ = rho;
    return a;
}

ScalingFamily ScalingFamily::geometric(double tau, std::int64_t origin) {
    if (!(tau > 0.0)) throw InvalidSpec("geometric scaling requires tau > 0");
    if (origin < 0) throw InvalidSpec("scaling index origin must be >= 0");
    ScalingFamily a;
    a.kind_ = ScalingKind::Geometric;
    a.origin_ = origin;
    a.tau_ = tau;
    return a;
}

ScalingFamily ScalingFamily::iterated_log(int p, double q, double rho, std::int64_t origin) {
    if (p < 1) throw InvalidSpec("iterated_log requires p >= 1");
    if (q < 0.0) throw InvalidSpec("iterated_log requires q >= 0");
    if (!(rho > 0.0)) throw InvalidSpec("iterated_log requires rho > 0");
    if (origin < 0) throw InvalidSpec("scaling index origin must be >= 0");
    // log_p(origin + q) must already be positive
    double v = static_cast<double>(origin) + q;
    for (int j = 0; j < p; ++j) {
        if (!(v > 0.0)) throw InvalidSpec("iterated_log: log_p(origin + q) must be positive; increase q");
        v = std::log(v);
    }
    if (!(v > 0.0)) throw InvalidSpec("iterated_log: log_p(origin + q) must be positive; increase q");
    ScalingFamily a;
    a.kind_ = ScalingKind::IteratedLog;
    a.origin_ = origin;
    a.itlog_p_ = p;
    a.itlog_q_ = q;
    a.rho_ = rho;
    return a;
}

ScalingFamily ScalingFamily::log_power(double c, std::int64_t origin) {
    if (origin < 1) throw InvalidSpec("log_power scaling needs index origin >= 1 (alpha_0 would vanish)");
    ScalingFamily a;
    a.kind_ = ScalingKind::LogPower;
    a.origin_ = origin;
    a.rho_ = c;
    return a;
}

ScalingFamily ScalingFamily::spliced(ScalingFamily base, std::map<std::int64_t, double> overrides) {
    for (const auto& [n, v] : overrides) {
        if (n < base.index_origin()) throw IndexError("spliced override below the base origin");
        if (!(v > 0.0)) throw InvalidSpec("spliced override values must be positive");
    }
    ScalingFamily a;
    a.kind_ = ScalingKind::Spliced;
    a.origin_ = base.index_origin();
    a.base_ = std::make_shared<ScalingFamily>(std::move(base));
    a.overrides_ = std::move(overrides);
    return a;
}

ScalingFamily ScalingFamily::explicit_log(std::function<double(std::int64_t)> log_alpha,
                                          std::int64_t origin,
                                          std::optional<ReciprocalTailRule> reciprocal_tail,
                                          bool reciprocal_sum_certified, std::string label) {
    ScalingFamily a;
    a.kind_ = ScalingKind::Explicit;
    a.origin_ = origin;
    a.explicit_log_ = std::move(log_alpha);
    a.reciprocal_rule_ = std::move(reciprocal_tail);
    a.reciprocal_certified_ = reciprocal_sum_certified && a.reciprocal_rule_.has_value();
    a.label_ = std::move(label);
    return a;
}

std::string ScalingFamily::label() const {
    std::ostringstream os;
    switch (kind_) {
        case ScalingKind::Hyperharmonic:
            if (rho_ == 0.0) return "id";
            os << "hyp:" << rho_;
            break;
        case ScalingKind::Geometric:
            os << "geo:" << tau_;
            break;
        case ScalingKind::IteratedLog:
            os << "itlog:" << itlog_p_ << "," << itlog_q_ << "," << rho_;
            break;
        case ScalingKind::LogPower:
            os << "logpow:" << rho_;
            break;
        case ScalingKind::Spliced:
            os << "spliced(" << base_->label() << "," << overrides_.size() << " overrides)";
            break;
        case ScalingKind::Explicit:
            return label_;
    }
    return os.str();
}

double ScalingFamily::log_term(std::int64_t n) const {
    if (n < origin_) throw IndexError("scaling index below the family origin");
    switch (kind_) {
        case ScalingKind::Hyperharmonic:
            return n == 0 ? 0.0 : rho_ * log_of_index(n);  // 0^rho = 1 convention
        case ScalingKind::Geometric:
            return 2.0 * static_cast<double>(n) * std::log(tau_);
        case ScalingKind::IteratedLog: {
            const double x = static_cast<double>(n) + itlog_q_;
            double lt = std::log(x);
            for (int j = 1; j < itlog_p_; ++j) lt += std::log(iter_log(j, x));
            lt += rho_ * std::log(iter_log(itlog_p_, x));
            return lt;
        }
        case ScalingKind::LogPower:
            return log_of_index(n) + rho_ * std::log(std::log(static_cast<double>(n) + 1.0));
        case ScalingKind::Spliced: {
            auto it = overrides_.find(n);
            if (it != overrides_.end()) return std::log(it->second);
            return base_->log_term(n);
        }
        case ScalingKind::Explicit:
            return explicit_log_(n);
    }
    return 0.0;
}

double ScalingFamily::term(std::int64_t n) const { return std::exp(log_term(n)); }

GrowthDescriptor ScalingFamily::descriptor() const {
    switch (kind_) {
        case ScalingKind::Hyperharmonic:
            return {0.0, rho_, {}};
        case ScalingKind::Geometric:
            return {2.0 * std::log(tau_), 0.0, {}};
        case ScalingKind::IteratedLog: {
            std::vector<double> L(static_cast<std::size_t>(itlog_p_), 1.0);
            L.back() = rho_;
            return {0.0, 1.0, std::move(L)};
        }
        case ScalingKind::LogPower:
            return {0.0, 1.0, {rho_}};
        case ScalingKind::Spliced:
            return base_->descriptor();  // finitely many overrides
        case ScalingKind::Explicit:
            throw UnsupportedFamily("explicit scalings have no symbolic growth descriptor");
    }
    return {};
}

double ScalingFamily::ratio_upper(std::int64_t n) const {
    switch (kind_) {
        case ScalingKind::Hyperharmonic: {
            if (n < 1) return std::max(1.0, ratio_upper(1));
            const double nd = static_cast<double>(n);
            return std::pow((nd + 1.0) / nd, rho_);
        }
        case ScalingKind::Geometric:
            return tau_ * tau_;
        case ScalingKind::LogPower: {
            if (n < 1) n = 1;
            const double nd = static_cast<double>(n);
            const double lr = std::log(nd + 2.0) / std::log(nd + 1.0);
            return (1.0 + 1.0 / nd) * (rho_ >= 0.0 ? std::pow(lr, rho_) : 1.0);
        }
        case ScalingKind::IteratedLog: {
            if (n < origin_) n = origin_;
            // every factor of alpha_{n+1}/alpha_n exceeds 1 and decreases in n
            return std::exp(log_term(n + 1) - log_term(n));
        }
        case ScalingKind::Spliced: {
            const std::int64_t from = ratio_valid_from();
            return base_->ratio_upper(n < from ? from : n);
        }
        case ScalingKind::Explicit:
            throw UnsupportedFamily("explicit scalings carry no certified ratio bound");
    }
    return 1.0;
}

std::int64_t ScalingFamily::ratio_valid_from() const {
    switch (kind_) {
        case ScalingKind::Spliced: {
            std::int64_t last = origin_;
            if (!overrides_.empty()) last = std::max(last, overrides_.rbegin()->first + 1);
            return std::max(last, base_->ratio_valid_from());
        }
        default:
            return std::max<std::int64_t>(origin_, 1);
    }
}

ScalingFamily::PolyMajorant ScalingFamily::poly_majorant() const {
    switch (kind_) {
        case ScalingKind::Hyperharmonic:
            return {0.0, rho_, 1};
        case ScalingKind::Geometric:
            if (tau_ > 1.0)
                throw UnsupportedFamily("geometrically growing scaling has no polynomial majorant");
            return {0.0, 0.0, 0};
        case ScalingKind::LogPower: {
            const double c = rho_;
            if (c <= 0.0) return {c * std::log(std::log(2.0)), 1.0, 1};
            // log(n+1)^c <= A sqrt(n) once log^c(x)/sqrt(x) is decreasing
            const auto n0 = static_cast<std::int64_t>(std::ceil(std::exp(2.0 * c))) + 1;
            const double log_a =
                c * std::log(std::log(static_cast<double>(n0) + 1.0)) -
                0.5 * std::log(static_cast<double>(n0));
            return {log_a, 1.5, std::max<std::int64_t>(n0, 2)};
        }
        case ScalingKind::IteratedLog: {
            const double m = static_cast<double>(itlog_p_ - 1) + std::max(rho_, 1.0);
            // tower threshold so that 1 <= log_j(x) <= log(x) for all j <= p
            double tower = 1.0;
            for (int j = 0; j < itlog_p_; ++j) tower = std::exp(tower);
            std::int64_t n0 = static_cast<std::int64_t>(std::ceil(
                std::max({3.0, tower - itlog_q_, std::exp(2.0 * m)})));
            const double nd = static_cast<double>(n0);
            // alpha_n <= (1+q) (1+log(1+q))^m n log(n)^m, then log^m <= A sqrt(n)
            const double log_pref = std::log1p(itlog_q_) +
                                    m * std::log1p(std::log1p(itlog_q_));
            const double log_a = m * std::log(std::log(nd)) - 0.5 * std::log(nd);
            return {log_pref + log_a, 1.5, n0};
        }
        case ScalingKind::Spliced: {
            auto pm = base_->poly_majorant();
            std::int64_t last = overrides_.empty() ? origin_ : overrides_.rbegin()->first;
            pm.from = std::max(pm.from, last + 1);
            return pm;
        }
        case ScalingKind::Explicit:
            throw UnsupportedFamily("explicit scalings carry no polynomial majorant");
    }
    return {0.0, 0.0, 1};
}

std::int64_t ScalingFamily::cm_start() const {
    switch (kind_) {
        case ScalingKind::Hyperharmonic:
        case ScalingKind::Geometric:
            return std::max<std::int64_t>(origin_, 1);
        case ScalingKind::LogPower:
            return std::max<std::int64_t>(8, static_cast<std::int64_t>(
                                                 std::ceil(std::exp(1.0 + std::abs(rho_)))));
        case ScalingKind::IteratedLog: {
            const double m = static_cast<double>(itlog_p_ - 1) + std::abs(rho_);
            double tower = 1.0;
            for (int j = 0; j < itlog_p_; ++j) tower = std::exp(tower);
            return static_cast<std::int64_t>(
                std::ceil(std::max({8.0, tower - itlog_q_ + 2.0, std::exp(1.0 + m)})));
        }
        case ScalingKind::Spliced: {
            std::int64_t last = overrides_.empty() ? origin_ : overrides_.rbegin()->first;
            return std::max(base_->cm_start(), last + 1);
        }
        case ScalingKind::Explicit:
            throw UnsupportedFamily("explicit scalings carry no monotonicity certificate");
    }
    return 1;
}

bool ScalingFamily::has_reciprocal_tail_rule() const {
    if (kind_ == ScalingKind::Explicit) return reciprocal_rule_.has_value();
    return classify_reciprocal_sum(*this).converges();
}

double ScalingFamily::log_reciprocal_tail_upper(std::int64_t n) const {
    if (n < origin_) n = origin_;
    switch (kind_) {
        case ScalingKind::Hyperharmonic: {
            if (!(rho_ > 1.0)) throw NotSummable("reciprocal sum of this hyperharmonic scaling diverges");
            if (n == 0) return log_add_exp(0.0, log_reciprocal_tail_upper(1));
            const double nd = static_cast<double>(n);
            // sum_{l>=n} l^-rho <= n^-rho + n^{1-rho}/(rho-1)
            return log_add_exp(-rho_ * std::log(nd),
                               (1.0 - rho_) * std::log(nd) - std::log(rho_ - 1.0));
        }
        case ScalingKind::Geometric: {
            if (!(tau_ > 1.0)) throw NotSummable("reciprocal sum diverges unless tau > 1");
            const double lr = -2.0 * std::log(tau_);
            return lr * static_cast<double>(n) - std::log1p(-std::exp(lr));
        }
        case ScalingKind::LogPower: {
            if (!(rho_ > 1.0)) throw NotSummable("reciprocal sum diverges unless c > 1");
            if (n < 2) return log_add_exp(-log_term(n), log_reciprocal_tail_upper(n + 1));
            const double nd = static_cast<double>(n);
            const double integral =
                (1.0 - rho_) * std::log(std::log(nd)) - std::log(rho_ - 1.0);
            return log_add_exp(-log_term(n), integral);
        }
        case ScalingKind::IteratedLog: {
            if (!(rho_ > 1.0)) throw NotSummable("reciprocal sum diverges unless rho > 1");
            const double lp = iter_log(itlog_p_, static_cast<double>(n) + itlog_q_);
            const double integral = (1.0 - rho_) * std::log(lp) - std::log(rho_ - 1.0);
            return log_add_exp(-log_term(n), integral);
        }
        case ScalingKind::Spliced: {
            std::int64_t last = overrides_.empty() ? origin_ - 1 : overrides_.rbegin()->first;
            if (n > last) return base_->log_reciprocal_tail_upper(n);
            double acc = kNegInf;
            for (std::int64_t l = n; l <= last; ++l) acc = log_add_exp(acc, -log_term(l));
            return log_add_exp(acc, base_->log_reciprocal_tail_upper(last + 1));
        }
        case ScalingKind::Explicit:
            if (!reciprocal_rule_ || !reciprocal_rule_->log_tail_upper)
                throw NotSummable("explicit scaling lacks a declared reciprocal tail rule");
            return reciprocal_rule_->log_tail_upper(n);
    }
    return kNegInf;
}

double ScalingFamily::log_reciprocal_tail_lower(std::int64_t n) const {
    if (n < origin_) n = origin_;
    switch (kind_) {
        case ScalingKind::Hyperharmonic: {
            if (!(rho_ > 1.0)) throw NotSummable("reciprocal sum of this hyperharmonic scaling diverges");
            if (n == 0) return log_add_exp(0.0, log_reciprocal_tail_lower(1));
            const double nd = static_cast<double>(n);
            return (1.0 - rho_) * std::log(nd) - std::log(rho_ - 1.0);
        }
        case ScalingKind::Geometric:
            return log_reciprocal_tail_upper(n);  // exact tail
        case ScalingKind::LogPower: {
            if (!(rho_ > 1.0)) throw NotSummable("reciprocal sum diverges unless c > 1");
            const double nd = static_cast<double>(n);
            return (1.0 - rho_) * std::log(std::log(nd + 1.0)) - std::log(rho_ - 1.0);
        }
        case ScalingKind::IteratedLog: {
            if (!(rho_ > 1.0)) throw NotSummable("reciprocal sum diverges unless rho > 1");
            // integral from n of the exact derivative chain, one step shifted up
            const double lp = iter_log(itlog_p_, static_cast<double>(n + 1) + itlog_q_);
            return (1.0 - rho_) * std::log(lp) - std::log(rho_ - 1.0);
        }
        case ScalingKind::Spliced: {
            std::int64_t last = overrides_.empty() ? origin_ - 1 : overrides_.rbegin()->first;
            if (n > last) return base_->log_reciprocal_tail_lower(n);
            double acc = kNegInf;
            for (std::int64_t l = n; l <= last; ++l) acc = log_add_exp(acc, -log_term(l));
            return log_add_exp(acc, base_->log_reciprocal_tail_lower(last + 1));
        }
        case ScalingKind::Explicit:
            if (reciprocal_rule_ && reciprocal_rule_->log_tail_lower)
                return reciprocal_rule_->log_tail_lower(n);
            return -log_term(n);  // the first term alone
    }
    return kNegInf;
}

ConvergenceVerdict classify_reciprocal_sum(const ScalingFamily& a) {
    if (a.symbolic()) {
        GrowthDescriptor d = a.descriptor();
        d.geometric_rate = -d.geometric_rate;
        d.poly_exponent = -d.poly_exponent;
        for (double& L : d.log_exponents) L = -L;
        return {series_converges(d) ? VerdictValue::Converges : VerdictValue::Diverges, {}};
    }
    // Explicit: an analytic certificate upgrades the verdict; bare numerics do not.
    const std::int64_t N = 10000;
    double partial = 0.0;
    for (std::int64_t n = a.index_origin(); n <= N; ++n) partial += std::exp(-a.log_term(n));
    Evidence ev;
    ev.partial_sum = partial;
    ev.terms = N;
    if (a.reciprocal_sum_certified()) {
        ev.tail_bound = std::exp(a.log_reciprocal_tail_upper(N + 1));
        return {VerdictValue::Converges, ev};
    }
    ev.tail_bound = a.has_reciprocal_tail_rule()
                        ? std::exp(a.log_reciprocal_tail_upper(N + 1))
                        : kInf;
    return {VerdictValue::Inconclusive, ev};
}

ScalingOrder compare_scalings(const ScalingFamily& a, const ScalingFamily& b) {
    if (!a.symbolic() || !b.symbolic())
        throw UnsupportedFamily("compare_scalings requires symbolic families");
    const int c = a.descriptor().compare(b.descriptor());
    if (c == 0) return ScalingOrder::EqualUpToNormEquivalence;
    return c < 0 ? ScalingOrder::AProperSubsetOfB : ScalingOrder::BProperSubsetOfA;
}

}  // namespace srkhs
