#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace moment_lab {

// Every cell is a string: numbers are already decimal strings at full precision.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
};

enum class Format { json, csv };

std::string render(const Table& t, Format fmt);

std::string csv_escape(const std::string& cell);

nlohmann::ordered_json to_json(const Table& t);

}  // namespace moment_lab
