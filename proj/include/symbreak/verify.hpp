#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symbreak {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // deterministic: numbers only, no paths or timing
    double ms = 0.0;
};

/// Runs the whole invariant suite on built-in fixtures with the given fuzz
/// seed. Failures are results, not exceptions.
std::vector<CheckResult> run_verification(std::uint64_t seed);

}  // namespace symbreak
