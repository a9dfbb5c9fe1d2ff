#include "srkhs/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

#include "srkhs/errors.hpp"
#include "srkhs/numeric.hpp"

namespace srkhs {

SummableSequence::SummableSequence(std::int64_t origin,
                                   std::function<double(std::int64_t)> log_term,
                                   std::function<double(std::int64_t)> log_tail_upper,
                                   std::function<double(std::int64_t)> log_tail_lower)
    : origin_(origin),
      log_term_(std::move(log_term)),
      log_tail_upper_(std::move(log_tail_upper)),
      log_tail_lower_(std::move(log_tail_lower)) {}

SummableSequence SummableSequence::geometric(double first_log_term, double log_ratio,
                                             std::int64_t origin) {
    if (!(log_ratio < 0.0)) throw NotSummable("geometric sequence needs ratio < 1");
    const double log_one_minus_r = std::log1p(-std::exp(log_ratio));
    auto lt = [=](std::int64_t n) {
        return first_log_term + log_ratio * static_cast<double>(n - origin);
    };
    auto tail = [=](std::int64_t n) { return lt(n) - log_one_minus_r; };  // exact
    return SummableSequence(origin, lt, tail, tail);
}

SummableSequence SummableSequence::reciprocal_of(const ScalingFamily& a) {
    const auto verdict = classify_reciprocal_sum(a);
    if (!verdict.converges())
        throw NotSummable("scaling '" + a.label() + "' has verdict " +
                          to_string(verdict.value) + " for its reciprocal sum");
    auto fam = std::make_shared<ScalingFamily>(a);
    return SummableSequence(
        a.index_origin(), [fam](std::int64_t n) { return -fam->log_term(n); },
        [fam](std::int64_t n) { return fam->log_reciprocal_tail_upper(n); },
        [fam](std::int64_t n) { return fam->log_reciprocal_tail_lower(n); });
}

double SummableSequence::log_term(std::int64_t n) const {
    if (n < origin_) throw IndexError("sequence index below origin");
    return log_term_(n);
}

double SummableSequence::term(std::int64_t n) const { return std::exp(log_term(n)); }

double SummableSequence::log_tail_upper(std::int64_t n) const {
    if (n < origin_) n = origin_;
    return log_tail_upper_(n);
}

double SummableSequence::log_tail_lower(std::int64_t n) const {
    if (n < origin_) n = origin_;
    if (log_tail_lower_) return log_tail_lower_(n);
    return log_term_(n);
}

double SummableSequence::partial_sum(std::int64_t N) const {
    CompensatedSum acc;
    for (std::int64_t n = origin_; n <= N; ++n) {
        const double lt = log_term_(n);
        if (lt > -700.0) acc.add(std::exp(lt));
    }
    return acc.value();
}

SummableSequence dini_refine(const SummableSequence& a_prime, double c) {
    if (!(c >= 0.0 && c < 1.0)) throw BadExponent("dini_refine requires 0 <= c < 1");
    if (c == 0.0) return a_prime;
    // a_n = a'_n / T_n^c against the certified upper bracket T_n >= true tail;
    // the Dini integral comparison survives: sum a_n <= (sum a')^{1-c}/(1-c).
    auto base = std::make_shared<SummableSequence>(a_prime);
    const double log_one_minus_c = std::log1p(-c);
    auto lt = [base, c](std::int64_t n) {
        return base->log_term(n) - c * base->log_tail_upper(n);
    };
    auto up = [base, c, log_one_minus_c](std::int64_t n) {
        return (1.0 - c) * base->log_tail_upper(n) - log_one_minus_c;
    };
    return SummableSequence(a_prime.index_origin(), lt, up, nullptr);
}

namespace {

double log_sum_members(const std::vector<SummableSequence>& seqs, std::size_t count,
                       std::int64_t n, bool tails) {
    double acc = kNegInf;
    for (std::size_t k = 0; k < count; ++k)
        acc = log_add_exp(acc, tails ? seqs[k].log_tail_upper(n) : seqs[k].log_term(n));
    return acc;
}

}  // namespace

DominatingResult dominating_convergent(const std::vector<SummableSequence>& inputs) {
    if (inputs.empty()) throw NotSummable("dominating_convergent: empty input list");
    const std::int64_t origin = inputs.front().index_origin();
    for (const auto& s : inputs)
        if (s.index_origin() != origin)
            throw IndexMismatch("dominating_convergent inputs must share an index origin");

    const std::size_t m_count = inputs.size();
    // knots n_m (m >= 2): smallest strictly increasing indices with
    // sum_{n>=n_m} abar_m <= 2^-m, located by doubling against the upper
    // bracket and then bisecting.
    std::vector<std::int64_t> knots;
    std::int64_t prev = origin;
    for (std::size_t m = 2; m <= m_count; ++m) {
        const double budget = -static_cast<double>(m) * std::log(2.0);
        auto tail_of = [&](std::int64_t n) { return log_sum_members(inputs, m, n, true); };
        std::int64_t hi = prev + 1;
        while (tail_of(hi) > budget) {
            if (hi > (std::int64_t{1} << 62) / 2) throw NotSummable("tail budget unreachable");
            hi *= 2;
        }
        std::int64_t lo = prev + 1;
        while (lo < hi) {
            const std::int64_t mid = lo + (hi - lo) / 2;
            if (tail_of(mid) <= budget)
                hi = mid;
            else
                lo = mid + 1;
        }
        knots.push_back(lo);
        prev = lo;
    }

    auto seqs = std::make_shared<std::vector<SummableSequence>>(inputs);
    auto knots_ptr = std::make_shared<std::vector<std::int64_t>>(knots);
    auto segment = [knots_ptr](std::int64_t n) {
        std::size_t m = 1;  // segment m uses abar_m = sum_{k<=m} a_k
        for (std::int64_t k : *knots_ptr) {
            if (n >= k)
                ++m;
            else
                break;
        }
        return m;
    };
    auto sp_term = [seqs, segment](std::int64_t n) {
        return log_sum_members(*seqs, segment(n), n, false);
    };
    // Tail of the spliced sequence from n in segment m: the remaining segment-m
    // block is covered by abar_m's own tail, later blocks by their budgets
    // (sum_{j>m} 2^-j = 2^-m). The final segment needs no budget slack.
    auto sp_tail = [seqs, segment, m_count](std::int64_t n) {
        const std::size_t m = segment(n);
        const double own = log_sum_members(*seqs, m, n, true);
        if (m == m_count) return own;
        return log_add_exp(own, -static_cast<double>(m) * std::log(2.0));
    };
    SummableSequence spliced(origin, sp_term, sp_tail, nullptr);
    return {dini_refine(spliced, 0.5), spliced, std::move(knots)};
}

ScalingFamily strictly_smaller_envelope(const std::vector<ScalingFamily>& convergent_scalings) {
    if (convergent_scalings.empty())
        throw NotSummable("strictly_smaller_envelope: empty input list");
    std::vector<SummableSequence> reciprocals;
    reciprocals.reserve(convergent_scalings.size());
    for (const auto& a : convergent_scalings) reciprocals.push_back(SummableSequence::reciprocal_of(a));

    auto dominated = dominating_convergent(reciprocals);
    // One more refinement gives a strictly smaller scaled RKHS whose
    // reciprocal sum still carries an analytic certificate.
    auto refined = std::make_shared<SummableSequence>(dini_refine(dominated.sequence, 0.5));

    ReciprocalTailRule rule;
    rule.log_tail_upper = [refined](std::int64_t n) { return refined->log_tail_upper(n); };
    rule.log_tail_lower = [refined](std::int64_t n) { return refined->log_tail_lower(n); };
    return ScalingFamily::explicit_log(
        [refined](std::int64_t n) { return -refined->log_term(n); },
        refined->index_origin(), rule, /*reciprocal_sum_certified=*/true, "envelope");
}

IndexSequence IndexSequence::powers_of_two() {
    return {[](std::int64_t m) { return std::int64_t{1} << m; }, 2.0};
}

IndexSequence IndexSequence::consecutive() {
    return {[](std::int64_t m) { return m + 1; }, 1.0};
}

CondensationSequence::CondensationSequence(IndexSequence g, std::int64_t window)
    : c_(g.growth_constant), window_(window) {
    if (!g.g) throw BadIndexSequence("condensation: missing index generator");
    std::int64_t m = 0;
    for (;;) {
        const std::int64_t gm = g.g(m);
        if (gm <= 0) throw BadIndexSequence("condensation: indices must be positive");
        if (!g_values_.empty() && gm <= g_values_.back())
            throw BadIndexSequence("condensation: index sequence must be strictly increasing");
        g_values_.push_back(gm);
        if (gm > window) break;
        ++m;
    }
    for (std::size_t i = 2; i < g_values_.size(); ++i) {
        const double gap = static_cast<double>(g_values_[i] - g_values_[i - 1]);
        const double prev_gap = static_cast<double>(g_values_[i - 1] - g_values_[i - 2]);
        if (gap > c_ * prev_gap + 1e-9)
            throw BadIndexSequence("condensation: gap growth bound violated for declared C");
    }
    cumulative_.assign(static_cast<std::size_t>(window) + 1, 0.0);
    double run = 0.0;
    std::size_t ki = 0;
    for (std::int64_t n = 1; n <= window; ++n) {
        while (ki + 1 < g_values_.size() && g_values_[ki] < n) ++ki;
        if (ki + 1 < g_values_.size() && g_values_[ki] == n)
            run += static_cast<double>(g_values_[ki + 1] - g_values_[ki]);
        cumulative_[static_cast<std::size_t>(n)] = run;
    }
}

double CondensationSequence::term(std::int64_t n) const {
    if (n < 1) throw IndexError("condensation index must be >= 1");
    auto it = std::lower_bound(g_values_.begin(), g_values_.end(), n);
    if (it != g_values_.end() && *it == n && std::next(it) != g_values_.end())
        return static_cast<double>(*std::next(it) - *it);
    return 0.0;
}

double CondensationSequence::average(std::int64_t N) const {
    if (N < 1 || N > window_) throw IndexError("condensation average outside the materialized window");
    return cumulative_[static_cast<std::size_t>(N)] / static_cast<double>(N);
}

CondensationSequence condensation_sequence(const IndexSequence& g, std::int64_t window) {
    return CondensationSequence(g, window);
}

}  // namespace srkhs
