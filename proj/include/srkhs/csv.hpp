#ifndef SRKHS_CSV_HPP
#define SRKHS_CSV_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace srkhs {

inline constexpr const char* kArtifactVersion = "scaled-rkhs 0.1.0";

/// Column table with `# key=value` header comments echoing the resolved run
/// configuration. Numbers go through format_double (17 significant digits).
struct CsvTable {
    std::vector<std::pair<std::string, std::string>> config;  // echoed as comments
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_config(const std::string& key, const std::string& value) {
        config.emplace_back(key, value);
    }
    void write(std::ostream& os) const;
    void write_file(const std::string& path) const;
};

}  // namespace srkhs

#endif
