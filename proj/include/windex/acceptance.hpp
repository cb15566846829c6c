#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace windex::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double max_residual = 0.0;
    std::string detail;
    double millis = 0.0;
};

// Runs the full battery (criteria 1-8); criterion 9 is the aggregate
// zero-failure / wall-clock check, appended by the caller or run_all itself.
std::vector<CriterionResult> run_all(std::uint64_t seed);

}  // namespace windex::acceptance
