#include "srkhs/gp.hpp"

#include <cmath>

#include "srkhs/errors.hpp"
#include "srkhs/numeric.hpp"

namespace srkhs {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 output function
std::uint64_t mix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL))) {}

double CounterRng::uniform(std::uint64_t counter) const {
    const std::uint64_t bits = mix64(key_ + counter * kGolden);
    // 53 mantissa bits, shifted into (0,1): never exactly 0 or 1
    return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

double CounterRng::standard_normal(std::uint64_t counter) const {
    return inverse_normal_cdf(uniform(counter));
}

KLSampler::KLSampler(BasisFamily basis, std::int64_t truncation_n, std::uint64_t seed)
    : basis_(std::move(basis)), n_(truncation_n), seed_(seed) {
    if (n_ < 1) throw InvalidSpec("KL truncation level must be >= 1");
}

std::vector<double> KLSampler::coefficients(std::uint64_t path_index) const {
    CounterRng rng(seed_, path_index);
    std::vector<double> zeta(static_cast<std::size_t>(n_));
    for (std::int64_t i = 0; i < n_; ++i)
        zeta[static_cast<std::size_t>(i)] = rng.standard_normal(static_cast<std::uint64_t>(i));
    return zeta;
}

std::vector<double> KLSampler::path_from_coefficients(const BasisFamily& basis,
                                                      std::span<const double> zeta,
                                                      std::span<const double> grid) {
    for (double t : grid) basis.require_in_domain(t);
    std::vector<double> path(grid.size(), 0.0);
    const std::int64_t origin = basis.index_origin();
    for (std::size_t g = 0; g < grid.size(); ++g) {
        CompensatedSum acc;
        for (std::size_t i = 0; i < zeta.size(); ++i)
            acc.add(zeta[i] * basis.eval(origin + static_cast<std::int64_t>(i), grid[g]));
        path[g] = acc.value();
    }
    return path;
}

std::vector<double> KLSampler::sample_path(std::uint64_t path_index,
                                           std::span<const double> grid) const {
    const std::vector<double> zeta = coefficients(path_index);
    return path_from_coefficients(basis_, zeta, grid);
}

double kl_norm_partial(const BasisFamily& basis, std::span<const double> zeta,
                       const ScalingFamily& a) {
    if (basis.index_origin() != a.index_origin())
        throw IndexMismatch("basis and scaling index origins differ");
    CompensatedSum acc;
    const std::int64_t origin = a.index_origin();
    for (std::size_t i = 0; i < zeta.size(); ++i)
        acc.add(zeta[i] * zeta[i] / a.term(origin + static_cast<std::int64_t>(i)));
    return acc.value();
}

}  // namespace srkhs
