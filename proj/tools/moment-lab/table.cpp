#include "table.hpp"

#include <sstream>
#include <stdexcept>

namespace moment_lab {

void Table::add(std::vector<std::string> row) {
    if (row.size() != columns.size())
        throw std::logic_error("row width " + std::to_string(row.size()) + " does not match " +
                               std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
}

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

nlohmann::ordered_json to_json(const Table& t) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = row[i];
        arr.push_back(std::move(obj));
    }
    return arr;
}

std::string render(const Table& t, Format fmt) {
    if (fmt == Format::json) return to_json(t).dump(2) + "\n";
    std::ostringstream os;
    for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_escape(t.columns[i]);
    os << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
        os << "\n";
    }
    return os.str();
}

}  // namespace moment_lab
