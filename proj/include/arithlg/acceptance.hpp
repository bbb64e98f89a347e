#pragma once

// The desk-scale acceptance suite: nine numbered criteria plus the overall
// runtime limit, each reduced to one pass/fail verdict with a short detail
// line. Shared by `arith-lg acceptance` and the acceptance test binary.

#include <string>
#include <vector>

namespace arithlg {

struct CriterionResult {
    /// 1..9; 10 is the overall runtime.
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0;
    /// 0 when the criterion has no runtime limit of its own.
    double limit_seconds = 0;
    std::string detail;
};

struct AcceptanceOptions {
    /// Partition count for the enumeration-backed criteria 1-6.
    unsigned threads = 1;
};

inline constexpr double kSuiteTimeLimitSeconds = 120;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// "PASS  3  duality pairing  (0.01 s)  <detail>"
std::string format_result_line(const CriterionResult& r);

}  // namespace arithlg
