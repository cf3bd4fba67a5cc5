#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

// Column-oriented result tables and the two writers behind --format. Cells
// are doubles printed to 12 significant digits; missing optional values
// become empty CSV fields or JSON nulls, and non-finite values use the
// spelled-out sentinels inf / -inf / nan in both formats.

namespace thermoecon {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};

std::string format_cell(double v);

void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table);

}  // namespace thermoecon
