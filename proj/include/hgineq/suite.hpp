#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hgineq/config.hpp"
#include "hgineq/report.hpp"
#include "hgineq/sharpness.hpp"

namespace hgineq {

inline constexpr const char* kToolVersion = "1.0.0";

enum class SuiteMode { Verify, Sharpness };

struct SharpnessOutcome {
    SharpnessSpec spec;
    std::optional<RatioCurve> curve;
    std::optional<OptimizeResult> optimized;
    Status status = Status::Pass;
    std::vector<std::string> notes;

    std::string sort_key() const;
    json to_json() const;
};

struct SuiteResult {
    std::vector<VerificationReport> reports;  ///< sorted by sort_key
    std::vector<SharpnessOutcome> sharpness;  ///< sorted by sort_key
    int passed = 0;
    int failed = 0;
    int inconclusive = 0;

    /// 0 when nothing failed or stayed inconclusive, 1 otherwise.
    int exit_code() const { return failed == 0 && inconclusive == 0 ? 0 : 1; }
};

/// Verify runs the theorem cells and the sharpness entries; Sharpness runs only the latter.
/// Cells run on `jobs` workers; the output order does not depend on scheduling.
SuiteResult run_suite(const SuiteConfig& config, SuiteMode mode, int jobs);

/// One VerificationReport per line.
std::string report_jsonl(const SuiteResult& r);
std::string sharpness_jsonl(const SuiteResult& r);
/// family,verifier,group,params,parameter,lhs,rhs,ratio,sharp_constant
std::string curves_csv(const SuiteResult& r);

/// Writes the report files into config.out_dir, plus metadata.json with timing and counts.
void write_outputs(const SuiteConfig& config, const SuiteResult& r, SuiteMode mode, int jobs, double wall_seconds);

}  // namespace hgineq
