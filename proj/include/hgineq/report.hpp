#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace hgineq {

using json = nlohmann::json;

inline constexpr int kReportSchemaVersion = 1;

enum class Status { Pass, Fail, Inconclusive };
std::string to_string(Status s);

enum class CheckKind { Identity, Inequality, Positivity };
std::string to_string(CheckKind k);

struct SubCheck {
    std::string name;
    CheckKind kind = CheckKind::Inequality;
    double lhs = 0.0;
    double rhs = 0.0;
    std::optional<double> remainder;
    std::optional<double> residual;
    std::optional<double> margin;
    Status status = Status::Pass;
};

struct RefinementLevel {
    int n = 0;
    double u_min = 0.0;
    double u_max = 0.0;
    std::vector<double> tracked;  ///< quantities compared between levels
};

struct GridMeta {
    std::string method;  ///< "log_grid" or "double_exponential"
    std::vector<RefinementLevel> levels;
    bool converged = true;
    double max_relative_change = 0.0;
};

struct VerificationReport {
    std::string theorem_id;
    std::string group;
    std::string profile;
    std::map<std::string, json> parameters;
    double lhs = 0.0;
    double rhs = 0.0;
    std::optional<double> remainder;
    std::optional<double> residual;
    std::optional<double> margin;
    Status status = Status::Pass;
    std::vector<SubCheck> sub_checks;
    GridMeta grid_meta;
    std::vector<std::string> notes;

    /// Sort key: theorem id, group, canonical parameters, profile.
    std::string sort_key() const;
    json to_json() const;
};

/// Compact canonical text of a parameter map (sorted keys, shortest round-trip numbers).
std::string canonical_parameters(const std::map<std::string, json>& params);

}  // namespace hgineq
