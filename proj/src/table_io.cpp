#include "thermoecon/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"

namespace thermoecon {

std::string format_cell(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_csv(std::ostream& out, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ',';
        out << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (row[i]) out << format_cell(*row[i]);
        }
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& table) {
    nlohmann::json j;
    j["columns"] = table.columns;
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json jrow = nlohmann::json::array();
        for (const auto& cell : row) {
            if (!cell) {
                jrow.push_back(nullptr);
            } else if (!std::isfinite(*cell)) {
                jrow.push_back(format_cell(*cell));
            } else {
                // Re-read the 12-digit text so JSON and CSV agree exactly.
                jrow.push_back(std::strtod(format_cell(*cell).c_str(), nullptr));
            }
        }
        rows.push_back(std::move(jrow));
    }
    out << j.dump(2) << '\n';
}

}  // namespace thermoecon
