#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ordlab {

struct CriterionOutcome {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double ms = 0;
};

CriterionOutcome run_criterion(int id, std::uint64_t seed = 7);
std::vector<CriterionOutcome> run_acceptance(std::uint64_t seed = 7);

}  // namespace ordlab
