#pragma once

// The acceptance criteria as one runnable suite; `kstgen selftest` and the
// kst_acceptance test binary both call run_acceptance.

#include <filesystem>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace kst {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    std::set<int> only;  // empty = all
    unsigned workers = 1;
    /// Scratch directory for the reproducibility criterion; a fresh temporary
    /// directory when empty.
    std::filesystem::path workdir;
};

/// Runs the selected criteria in order, printing one PASS/FAIL line each.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& out);

}  // namespace kst
