#ifndef SRKHS_GP_HPP
#define SRKHS_GP_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "srkhs/basis.hpp"
#include "srkhs/scaling.hpp"

namespace srkhs {

/// Counter-based deterministic generator: value(seed, stream, i) is a pure
/// function, so paths are reproducible and parallel-safe without shared state.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    double uniform(std::uint64_t counter) const;         // in (0,1)
    double standard_normal(std::uint64_t counter) const; // inverse-CDF transform

  private:
    std::uint64_t key_;
};

/// Karhunen-Loeve sampler: X(t) = sum_{n<=N} zeta_n phi_n(t) with independent
/// standard normal zeta_n from the seeded counter stream (stream = path index).
class KLSampler {
  public:
    KLSampler(BasisFamily basis, std::int64_t truncation_n, std::uint64_t seed);

    const BasisFamily& basis() const { return basis_; }
    std::int64_t truncation_n() const { return n_; }
    std::uint64_t seed() const { return seed_; }

    /// Realized coefficients zeta_1..zeta_N of one path.
    std::vector<double> coefficients(std::uint64_t path_index) const;

    /// One path over the grid. Throws DomainError off-domain.
    std::vector<double> sample_path(std::uint64_t path_index,
                                    std::span<const double> grid) const;

    /// Deterministic path evaluation from given coefficients (also the test
    /// hook for stubbing zeta).
    static std::vector<double> path_from_coefficients(const BasisFamily& basis,
                                                      std::span<const double> zeta,
                                                      std::span<const double> grid);

  private:
    BasisFamily basis_;
    std::int64_t n_;
    std::uint64_t seed_;
};

/// Truncated scaled-RKHS norm of a realized path: sum_{n<=N} zeta_n^2/alpha_n.
/// The k-th coefficient (basis index origin+k) pairs with scaling index
/// origin+k; origins must agree.
double kl_norm_partial(const BasisFamily& basis, std::span<const double> zeta,
                       const ScalingFamily& a);

}  // namespace srkhs

#endif
