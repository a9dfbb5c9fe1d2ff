#ifndef SRKHS_FIGURES_HPP
#define SRKHS_FIGURES_HPP

#include <cstdint>

#include "srkhs/csv.hpp"

namespace srkhs {

/// Order-4 sine kernel and its hyp:1, logpow:1, logpow:2 scalings translated
/// at t' = 0.3, truncated after 5000 terms, plus second-derivative columns
/// normalized to minimum -1. Columns: t, K_id, K_hyp1, K_logpow1, K_logpow2,
/// then d2_* in the same order.
CsvTable fig1_table(std::int64_t grid_n = 513, double t_prime = 0.3,
                    std::int64_t fixed_n = 5000);

/// Gaussian (ell = 0.8) translates at t' = 1 for identity, hyp:1, hyp:1.1,
/// hyp:2 and geo:1.1 scalings. Columns: t, K_id, K_hyp1, K_hyp1.1, K_hyp2,
/// K_geo1.1.
CsvTable fig2_table(std::int64_t grid_n = 513, double t_prime = 1.0);

}  // namespace srkhs

#endif
