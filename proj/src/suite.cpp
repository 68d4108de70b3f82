#include "hgineq/suite.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hgineq/parallel.hpp"

namespace hgineq {

namespace {

struct Cell {
    std::size_t theorem;
    Params params;
    std::size_t group;
    std::optional<std::size_t> profile;  ///< empty for whole-suite verifiers
};

struct Sampled {
    std::optional<RadialProfile> profile;
    std::string error;
};

std::map<std::string, json> to_json_params(const Params& p) {
    std::map<std::string, json> out;
    for (const auto& [k, v] : p) out[k] = v;
    return out;
}

VerificationReport error_report(const std::string& id, const HomogeneousGroup& g, const std::string& profile,
                                const Params& params, Status status, const std::string& what) {
    VerificationReport r;
    r.theorem_id = id;
    r.group = g.name();
    r.profile = profile;
    r.parameters = to_json_params(params);
    r.status = status;
    r.grid_meta.method = "none";
    r.grid_meta.converged = false;
    r.notes.push_back("error: " + what);
    return r;
}

template <class F>
void classify(F&& body, Status& status, std::string& message) {
    try {
        body();
    } catch (const AccuracyError& e) {
        status = Status::Inconclusive;
        message = e.what();
    } catch (const std::exception& e) {
        status = Status::Fail;
        message = e.what();
    }
}

std::string num(double x) { return json(x).dump(); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void count(SuiteResult& r, Status s) {
    switch (s) {
        case Status::Pass: ++r.passed; break;
        case Status::Fail: ++r.failed; break;
        case Status::Inconclusive: ++r.inconclusive; break;
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

}  // namespace

std::string SharpnessOutcome::sort_key() const {
    return spec.verifier + "|" + spec.group + "|" + to_string(spec.family.kind) + "|" +
           canonical_parameters(to_json_params(spec.params)) + "|" + num(spec.family.width) + "|" +
           std::to_string(spec.family.degree_index);
}

json SharpnessOutcome::to_json() const {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["family"] = to_string(spec.family.kind);
    j["verifier"] = spec.verifier;
    j["group"] = spec.group;
    json params = json::object();
    for (const auto& [k, v] : spec.params) params[k] = v;
    j["params"] = params;
    j["width"] = spec.family.width;
    j["degree_index"] = spec.family.degree_index;
    j["status"] = to_string(status);
    if (curve) {
        j["sharp_constant"] = curve->sharp_constant;
        j["monotone"] = curve->monotone;
        j["violation_free"] = curve->violation_free;
        j["best_ratio"] = curve->best_ratio;
        json pts = json::array();
        for (const auto& p : curve->points)
            pts.push_back({{"parameter", p.parameter}, {"lhs", p.lhs}, {"rhs", p.rhs}, {"ratio", p.ratio}});
        j["points"] = pts;
    }
    if (optimized) {
        j["optimize"] = {{"best", optimized->best},
                         {"ratio", optimized->ratio},
                         {"evaluations", optimized->evaluations},
                         {"method", optimized->method},
                         {"status", to_string(optimized->status)}};
    }
    std::vector<std::string> all = notes;
    if (curve) all.insert(all.end(), curve->notes.begin(), curve->notes.end());
    j["notes"] = all;
    return j;
}

SuiteResult run_suite(const SuiteConfig& c, SuiteMode mode, int jobs) {
    SuiteResult res;
    const LogGrid grid = c.grid.grid();

    if (mode == SuiteMode::Verify) {
        std::vector<Sampled> sampled(c.profiles.size());
        parallel_for(c.profiles.size(), jobs, [&](std::size_t i) {
            try {
                sampled[i].profile = RadialProfile::sample(grid, c.profiles[i].f);
            } catch (const std::exception& e) {
                sampled[i].error = e.what();
            }
        });

        std::vector<Cell> cells;
        for (std::size_t t = 0; t < c.theorems.size(); ++t) {
            bool whole = find_verifier(c.theorems[t].id).takes_suite;
            for (const auto& p : c.theorems[t].grid)
                for (std::size_t g = 0; g < c.groups.size(); ++g) {
                    if (whole) {
                        cells.push_back({t, p, g, std::nullopt});
                    } else {
                        for (std::size_t k = 0; k < c.profiles.size(); ++k) cells.push_back({t, p, g, k});
                    }
                }
        }

        res.reports.resize(cells.size());
        parallel_for(cells.size(), jobs, [&](std::size_t i) {
            const Cell& cell = cells[i];
            const std::string& id = c.theorems[cell.theorem].id;
            const HomogeneousGroup& g = c.groups[cell.group];
            std::vector<RadialProfile> profiles;
            std::string label = cell.profile ? c.profiles[*cell.profile].label : std::string("suite");
            std::string missing;
            auto take = [&](std::size_t k) {
                if (sampled[k].profile) profiles.push_back(*sampled[k].profile);
                else if (missing.empty()) missing = c.profiles[k].label + ": " + sampled[k].error;
            };
            if (cell.profile) take(*cell.profile);
            else for (std::size_t k = 0; k < c.profiles.size(); ++k) take(k);
            if (!missing.empty()) {
                res.reports[i] = error_report(id, g, label, resolve_parameters(id, cell.params, g), Status::Inconclusive,
                                              "profile " + missing);
                return;
            }
            Status status = Status::Pass;
            std::string message;
            classify([&] { res.reports[i] = run_verifier(id, g, profiles, cell.params, c.verify, label); }, status,
                     message);
            if (!message.empty())
                res.reports[i] = error_report(id, g, label, resolve_parameters(id, cell.params, g), status, message);
        });
        std::stable_sort(res.reports.begin(), res.reports.end(),
                         [](const VerificationReport& a, const VerificationReport& b) { return a.sort_key() < b.sort_key(); });
        for (const auto& r : res.reports) count(res, r.status);
    }

    res.sharpness.resize(c.sharpness.size());
    parallel_for(c.sharpness.size(), jobs, [&](std::size_t i) {
        SharpnessOutcome& o = res.sharpness[i];
        o.spec = c.sharpness[i];
        const auto& g = *std::find_if(c.groups.begin(), c.groups.end(),
                                      [&](const HomogeneousGroup& x) { return x.name() == o.spec.group; });
        std::string message;
        classify(
            [&] {
                o.curve = ratio_curve(o.spec.family, g, o.spec.verifier, o.spec.params);
                if (!o.curve->violation_free) o.status = Status::Fail;
                if (!o.curve->monotone) o.status = Status::Fail;
                if (o.spec.optimize) {
                    o.optimized = optimize_ratio(o.spec.family, g, o.spec.verifier, o.spec.params, o.spec.options);
                    if (o.optimized->ratio > 1.0 + 1e-10) {
                        o.status = Status::Fail;
                        o.notes.push_back("optimized member exceeds the sharp constant");
                    }
                    if (o.optimized->status == Status::Inconclusive && o.status == Status::Pass) {
                        o.status = Status::Inconclusive;
                        o.notes.push_back("optimizer budget exhausted before convergence");
                    }
                }
            },
            o.status, message);
        if (!message.empty()) o.notes.push_back("error: " + message);
    });
    std::stable_sort(res.sharpness.begin(), res.sharpness.end(),
                     [](const SharpnessOutcome& a, const SharpnessOutcome& b) { return a.sort_key() < b.sort_key(); });
    for (const auto& s : res.sharpness) count(res, s.status);
    return res;
}

std::string report_jsonl(const SuiteResult& r) {
    std::string out;
    for (const auto& rep : r.reports) out += rep.to_json().dump() + "\n";
    return out;
}

std::string sharpness_jsonl(const SuiteResult& r) {
    std::string out;
    for (const auto& s : r.sharpness) out += s.to_json().dump() + "\n";
    return out;
}

std::string curves_csv(const SuiteResult& r) {
    std::string out = "family,verifier,group,params,parameter,lhs,rhs,ratio,sharp_constant\n";
    for (const auto& s : r.sharpness) {
        if (!s.curve) continue;
        std::string head = to_string(s.spec.family.kind) + "," + s.spec.verifier + "," + csv_field(s.spec.group) + "," +
                           csv_field(canonical_parameters(to_json_params(s.spec.params)));
        for (const auto& p : s.curve->points)
            out += head + "," + num(p.parameter) + "," + num(p.lhs) + "," + num(p.rhs) + "," + num(p.ratio) + "," +
                   num(s.curve->sharp_constant) + "\n";
    }
    return out;
}

void write_outputs(const SuiteConfig& c, const SuiteResult& r, SuiteMode mode, int jobs, double wall_seconds) {
    namespace fs = std::filesystem;
    fs::path dir(c.out_dir);
    fs::create_directories(dir);
    if (mode == SuiteMode::Verify) write_file(dir / c.report_file, report_jsonl(r));
    write_file(dir / c.curves_file, curves_csv(r));
    write_file(dir / c.sharpness_file, sharpness_jsonl(r));

    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ts;
    ts << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    json m;
    m["schema_version"] = kReportSchemaVersion;
    m["tool"] = "hgineq";
    m["version"] = kToolVersion;
    m["mode"] = mode == SuiteMode::Verify ? "verify" : "sharpness";
    m["config"] = c.source;
    m["seed"] = c.seed;
    m["jobs"] = jobs;
    m["finished_utc"] = ts.str();
    m["wall_seconds"] = wall_seconds;
    m["grid"] = {{"N", c.grid.N}, {"u_min", c.grid.u_min}, {"u_max", c.grid.u_max}};
    m["counts"] = {{"reports", r.reports.size()},
                   {"sharpness", r.sharpness.size()},
                   {"pass", r.passed},
                   {"fail", r.failed},
                   {"inconclusive", r.inconclusive}};
    m["exit_code"] = r.exit_code();
    write_file(dir / c.metadata_file, m.dump(2) + "\n");
}

}  // namespace hgineq
