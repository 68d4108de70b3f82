#include "hgineq/report.hpp"

namespace hgineq {

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "pass";
        case Status::Fail: return "fail";
        case Status::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

std::string to_string(CheckKind k) {
    switch (k) {
        case CheckKind::Identity: return "identity";
        case CheckKind::Inequality: return "inequality";
        case CheckKind::Positivity: return "positivity";
    }
    return "unknown";
}

std::string canonical_parameters(const std::map<std::string, json>& params) {
    json j = json::object();
    for (const auto& [k, v] : params) j[k] = v;
    return j.dump();
}

std::string VerificationReport::sort_key() const {
    return theorem_id + "|" + group + "|" + canonical_parameters(parameters) + "|" + profile;
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json VerificationReport::to_json() const {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["theorem_id"] = theorem_id;
    j["group"] = group;
    j["profile"] = profile;
    json params = json::object();
    for (const auto& [k, v] : parameters) params[k] = v;
    j["parameters"] = params;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["remainder"] = optional_number(remainder);
    j["residual"] = optional_number(residual);
    j["margin"] = optional_number(margin);
    j["status"] = to_string(status);
    json subs = json::array();
    for (const auto& s : sub_checks) {
        json js;
        js["name"] = s.name;
        js["kind"] = to_string(s.kind);
        js["lhs"] = s.lhs;
        js["rhs"] = s.rhs;
        js["remainder"] = optional_number(s.remainder);
        js["residual"] = optional_number(s.residual);
        js["margin"] = optional_number(s.margin);
        js["status"] = to_string(s.status);
        subs.push_back(js);
    }
    j["sub_checks"] = subs;
    json gm;
    gm["method"] = grid_meta.method;
    gm["converged"] = grid_meta.converged;
    gm["max_relative_change"] = grid_meta.max_relative_change;
    json levels = json::array();
    for (const auto& l : grid_meta.levels) {
        levels.push_back({{"n", l.n}, {"u_min", l.u_min}, {"u_max", l.u_max}, {"tracked", l.tracked}});
    }
    gm["levels"] = levels;
    j["grid_meta"] = gm;
    j["notes"] = notes;
    return j;
}

}  // namespace hgineq
