#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "idalg/derivation.hpp"

namespace idalg {

struct SessionConfig {
    DerivationConfig deriv;
    std::vector<std::string> alphabet = {"x", "y"};
    uint64_t seed = 0;
    int cases = 100;
    // sampling bounds
    int max_order = 3;
    int max_degree = 4;
    int max_depth = 4;
};

struct CheckFailure {
    uint64_t case_index;
    std::string detail;
};

// One invariant exercised over `cases` independently seeded cases.  The
// reference names the module and the property bullet the phase certifies.
struct PhaseResult {
    std::string phase;
    std::string reference;
    int cases = 0;
    double seconds = 0.0;
    std::vector<CheckFailure> failures;
    bool passed() const { return failures.empty(); }
};

struct CheckReport {
    std::string suite;
    std::vector<PhaseResult> phases;
    bool passed() const {
        for (const auto& p : phases)
            if (!p.passed()) return false;
        return true;
    }
    size_t total_failures() const {
        size_t n = 0;
        for (const auto& p : phases) n += p.failures.size();
        return n;
    }
};

const std::vector<std::string>& check_suites();

// Runs one named suite.  Case seeds derive from (seed, case index) only, so
// reports are reproducible and order-independent.
CheckReport run_check(const std::string& suite, const SessionConfig& cfg);

} // namespace idalg
