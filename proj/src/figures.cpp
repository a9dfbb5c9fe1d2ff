#include "srkhs/figures.hpp"

#include <string>
#include <vector>

#include "srkhs/kernel.hpp"
#include "srkhs/numeric.hpp"

namespace srkhs {

namespace {

std::vector<double> uniform_grid(double lo, double hi, std::int64_t n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        g[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return g;
}

}  // namespace

CsvTable fig1_table(std::int64_t grid_n, double t_prime, std::int64_t fixed_n) {
    const auto grid = uniform_grid(0.0, 1.0, grid_n);
    const BasisFamily basis = BasisFamily::sine_ibb(4);
    const TruncationPolicy policy = TruncationPolicy::fixed(fixed_n);

    const std::vector<std::pair<std::string, ScalingFamily>> scalings = {
        {"id", ScalingFamily::identity(1)},
        {"hyp1", ScalingFamily::hyperharmonic(1.0, 1)},
        {"logpow1", ScalingFamily::log_power(1.0, 1)},
        {"logpow2", ScalingFamily::log_power(2.0, 1)},
    };

    CsvTable table;
    table.add_config("preset", "fig1");
    table.add_config("basis", basis.label());
    table.add_config("t_prime", format_double(t_prime));
    table.add_config("fixed_n", std::to_string(fixed_n));
    table.add_config("grid_n", std::to_string(grid_n));
    table.columns = {"t"};
    for (const auto& [name, _] : scalings) table.columns.push_back("K_" + name);
    for (const auto& [name, _] : scalings) table.columns.push_back("d2_" + name);

    std::vector<TranslateTable> profiles;
    profiles.reserve(scalings.size());
    for (const auto& [_, sc] : scalings) {
        ScaledKernelSpec spec(basis, sc, policy);
        profiles.push_back(translate_profile(spec, t_prime, grid, /*with_d2=*/true,
                                             /*normalize_d2_min=*/true));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{grid[i]};
        for (const auto& p : profiles) row.push_back(p.k_values[i]);
        for (const auto& p : profiles) row.push_back(p.d2_values[i]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable fig2_table(std::int64_t grid_n, double t_prime) {
    const double ell = 0.8;
    const BasisFamily basis = BasisFamily::gaussian(ell, {-1.0, 1.0});
    const auto grid = uniform_grid(-1.0, 1.0, grid_n);
    const TruncationPolicy policy;  // adaptive; the Gaussian series converges factorially

    const std::vector<std::pair<std::string, ScalingFamily>> scalings = {
        {"id", ScalingFamily::identity(0)},
        {"hyp1", ScalingFamily::hyperharmonic(1.0, 0)},
        {"hyp1.1", ScalingFamily::hyperharmonic(1.1, 0)},
        {"hyp2", ScalingFamily::hyperharmonic(2.0, 0)},
        {"geo1.1", ScalingFamily::geometric(1.1, 0)},
    };

    CsvTable table;
    table.add_config("preset", "fig2");
    table.add_config("basis", basis.label());
    table.add_config("t_prime", format_double(t_prime));
    table.add_config("grid_n", std::to_string(grid_n));
    table.columns = {"t"};
    for (const auto& [name, _] : scalings) table.columns.push_back("K_" + name);

    std::vector<TranslateTable> profiles;
    profiles.reserve(scalings.size());
    for (const auto& [_, sc] : scalings) {
        ScaledKernelSpec spec(basis, sc, policy);
        profiles.push_back(translate_profile(spec, t_prime, grid, false, false));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<double> row{grid[i]};
        for (const auto& p : profiles) row.push_back(p.k_values[i]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace srkhs
