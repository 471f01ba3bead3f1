#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "draper/statevector.hpp"

namespace draper {

struct VerifyOptions {
    /// Largest register width in the exhaustive oracle suites.
    int max_n = 7;
    std::uint64_t seed = 20240601;
    /// Gate-drop rule handed to the statevector oracle. Anything other than
    /// strictly_finer must make the battery fail.
    DropRule oracle_drop_rule = DropRule::strictly_finer;
};

struct SuiteResult {
    std::string name;
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    /// Inputs and values of the first failing cell.
    std::string first_failure;

    [[nodiscard]] bool passed() const noexcept { return failures == 0; }
};

struct VerifyReport {
    std::vector<SuiteResult> suites;

    [[nodiscard]] bool passed() const noexcept;
};

/// Runs the full invariant battery: truncation identities, gate counts, QFT
/// structure, oracle equivalence, closed-form equivalence, bound dominance,
/// multi-addition and exactness at k >= n.
VerifyReport run_verification(const VerifyOptions& options = {});

}  // namespace draper
