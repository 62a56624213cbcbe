#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sumprod/bounds.hpp"

namespace sumprod {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    double limit_seconds = 0.0;  // 0 = no limit enforced
    std::string detail;
};

struct AcceptanceResult {
    std::vector<CriterionResult> criteria;
    std::vector<BoundReport> rows;  // deterministic instance rows from the chain criteria
    bool all_pass() const;
};

// Runs the fixed acceptance suite: transform identities, oracle agreement,
// exhaustive and randomized chain verification, the standalone moment
// inequality, the subfield tightness witness, the large-set regime, and a
// determinism replay. Wall-clock limits are part of each criterion.
AcceptanceResult run_acceptance();

// One line per criterion; returns 0 when everything passed, 1 otherwise.
int print_acceptance(std::ostream& out, const AcceptanceResult& result);

}  // namespace sumprod
