#include "srkhs/csv.hpp"

#include <fstream>

#include "srkhs/errors.hpp"
#include "srkhs/numeric.hpp"

namespace srkhs {

void CsvTable::write(std::ostream& os) const {
    os << "# " << kArtifactVersion << "\n";
    for (const auto& [k, v] : config) os << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) os << ",";
        os << columns[i];
    }
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ",";
            os << format_double(row[i]);
        }
        os << "\n";
    }
}

void CsvTable::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    write(out);
    if (!out.good()) throw Error("write failed: " + path);
}

}  // namespace srkhs
