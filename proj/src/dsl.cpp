#include "srkhs/dsl.hpp"

#include <cstdlib>
#include <map>
#include <sstream>
#include <vector>

#include "srkhs/errors.hpp"

namespace srkhs {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_num(const std::string& s, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ParseError("cannot parse " + what + " from '" + s + "'");
    return v;
}

// key=value items, with bare values allowed for single-parameter specs
std::map<std::string, std::string> parse_kv(const std::vector<std::string>& items,
                                            const std::string& bare_key) {
    std::map<std::string, std::string> kv;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            kv[bare_key] = item;
        else
            kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

}  // namespace

BasisFamily parse_basis(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "ibb") {
        const auto kv = parse_kv(split(rest, ','), "s");
        auto it = kv.find("s");
        if (it == kv.end()) throw ParseError("ibb basis needs s=<order>");
        return BasisFamily::sine_ibb(static_cast<int>(parse_num(it->second, "ibb order")));
    }
    if (head == "gauss") {
        const auto kv = parse_kv(split(rest, ','), "ell");
        auto it = kv.find("ell");
        if (it == kv.end()) throw ParseError("gauss basis needs ell=<length-scale>");
        Interval dom{-1.0, 1.0};
        if (auto lo = kv.find("lo"); lo != kv.end()) dom.lo = parse_num(lo->second, "domain lo");
        if (auto hi = kv.find("hi"); hi != kv.end()) dom.hi = parse_num(hi->second, "domain hi");
        return BasisFamily::gaussian(parse_num(it->second, "length-scale"), dom);
    }
    if (head == "pow") {
        const auto items = split(rest, ',');
        if (items.empty() || items[0].empty()) throw ParseError("pow basis needs a weight kind");
        const std::string& wk = items[0];
        Interval dom{-0.9, 0.9};
        const auto kv = parse_kv({items.begin() + 1, items.end()}, "");
        if (auto lo = kv.find("lo"); lo != kv.end()) dom.lo = parse_num(lo->second, "domain lo");
        if (auto hi = kv.find("hi"); hi != kv.end()) dom.hi = parse_num(hi->second, "domain hi");
        if (wk == "szego") return BasisFamily::power_series(WeightSequence::szego(), dom);
        if (wk == "exp") return BasisFamily::power_series(WeightSequence::exponential(), dom);
        if (wk == "counter")
            return BasisFamily::power_series(WeightSequence::szego_counter(), dom);
        throw ParseError("unknown weight kind '" + wk + "' (szego|exp|counter)");
    }
    throw ParseError("unknown basis spec '" + spec + "' (ibb:|gauss:|pow:)");
}

ScalingFamily parse_scaling(const std::string& spec, std::int64_t origin) {
    if (spec == "id") return ScalingFamily::identity(origin);
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    try {
        if (head == "hyp") return ScalingFamily::hyperharmonic(parse_num(rest, "rho"), origin);
        if (head == "geo") return ScalingFamily::geometric(parse_num(rest, "tau"), origin);
        if (head == "logpow") return ScalingFamily::log_power(parse_num(rest, "c"), origin);
        if (head == "itlog") {
            const auto items = split(rest, ',');
            if (items.size() != 3) throw ParseError("itlog scaling needs P,Q,RHO");
            return ScalingFamily::iterated_log(static_cast<int>(parse_num(items[0], "p")),
                                               parse_num(items[1], "q"),
                                               parse_num(items[2], "rho"), origin);
        }
    } catch (const InvalidSpec& e) {
        throw ParseError(std::string("invalid scaling parameters: ") + e.what());
    }
    throw ParseError("unknown scaling spec '" + spec + "' (id|hyp:|geo:|itlog:|logpow:)");
}

CoefficientFamily parse_coefficients(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (head == "const") return CoefficientFamily::constant(parse_num(rest, "constant"));
    if (head == "hyp") return CoefficientFamily::hyperharmonic(parse_num(rest, "rho"));
    if (head == "ind") {
        if (rest == "pow2") return CoefficientFamily::indicator_powers_of_two();
        if (rest == "odd") return CoefficientFamily::indicator_odd();
        throw ParseError("unknown indicator '" + rest + "' (pow2|odd)");
    }
    if (head == "mono") {
        const auto kv = parse_kv(split(rest, ','), "p");
        auto pit = kv.find("p");
        if (pit == kv.end()) throw ParseError("mono coefficients need p=<degree>");
        double ell = 1.0;
        if (auto eit = kv.find("ell"); eit != kv.end()) ell = parse_num(eit->second, "ell");
        return CoefficientFamily::monomial(static_cast<int>(parse_num(pit->second, "degree")), ell);
    }
    throw ParseError("unknown coefficient spec '" + spec + "' (const:|hyp:|ind:|mono:)");
}

}  // namespace srkhs
