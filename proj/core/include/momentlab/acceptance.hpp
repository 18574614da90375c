#pragma once

#include <string>
#include <utility>
#include <vector>

namespace momentlab {

struct CriterionResult {
    int id = 0;
    bool pass = false;
    std::string title;
    std::string detail;
    std::vector<std::pair<std::string, std::string>> metrics;  // name, decimal string
    double seconds = 0;
};

constexpr int acceptance_criterion_count = 15;

// Runs one criterion (1..15) in a fresh 256-bit context; computation errors count as FAIL.
CriterionResult run_criterion(int id);

// "PASS criterion 3 (title): detail"
std::string format_result(const CriterionResult& r);

}  // namespace momentlab
