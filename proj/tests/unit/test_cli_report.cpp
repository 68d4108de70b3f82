#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hgineq/config.hpp"
#include "hgineq/suite.hpp"

using namespace hgineq;
namespace fs = std::filesystem;

namespace {

json yaml(const std::string& text) { return parse_config_text(text, false); }

std::string error_key(const std::string& text) {
    try {
        build_config(yaml(text));
    } catch (const ConfigKeyError& e) {
        return e.key;
    }
    return "<none>";
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("hgineq_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cli(const std::string& args, const fs::path& log) {
    std::string cmd = std::string(HGINEQ_CLI) + " " + args + " > " + log.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

const char* kSmall = R"(
seed: 3
groups: [heisenberg_koranyi, {kind: euclidean, n: 2}]
profiles: [gauss_log, {name: bump, params: {r_lo: 0.3, r_hi: 3}, label: wide_bump}]
grid: {N: 2048}
theorems:
  - id: weighted_l2
    params: {alpha: [0, 1]}
  - id: embedding
    params: {p: 2, k: [1, 2]}
  - euler_adjoint_norm
sharpness:
  - {family: power_cutoff, verifier: sobolev_lp, group: heisenberg_koranyi, params: {p: 2}, parameters: [0.2, 0.1]}
)";

}  // namespace

TEST_CASE("yaml scalars") {
    auto j = yaml("a: 1\nb: 2.5\nc: 1.0e-6\nd: true\ne: text\nf: '7'\ng: [1, 2]\nh: ~\n");
    CHECK(j["a"].is_number_integer());
    CHECK(j["b"].get<double>() == 2.5);
    CHECK(j["c"].get<double>() == 1e-6);
    CHECK(j["d"] == true);
    CHECK(j["e"] == "text");
    CHECK(j["f"] == "7");
    CHECK(j["g"].size() == 2);
    CHECK(j["h"].is_null());
    CHECK_THROWS_AS(parse_config_text("a: [1, 2", false), ConfigKeyError);
    CHECK_THROWS_AS(parse_config_text("{\"a\": ", true), ConfigKeyError);
}

TEST_CASE("defaults") {
    auto c = build_config(json::object());
    CHECK(c.groups.size() == 3);
    CHECK(c.profiles.size() == 5);
    CHECK(c.theorems.empty());
    CHECK(c.grid.N == 4096);
    CHECK(c.verify.tol.identity_rel == 1e-6);
    CHECK(c.seed == 12345);
}

TEST_CASE("parameter grids expand to cartesian products") {
    auto c = build_config(yaml("theorems: [{id: higher_order, params: {alpha: [-1, 0, 0.5, 1], k: [1, 2, 3, 4]}}]"));
    REQUIRE(c.theorems.size() == 1);
    CHECK(c.theorems[0].grid.size() == 16);
    auto s = build_config(yaml(kSmall));
    CHECK(s.groups.size() == 2);
    CHECK(s.groups[1].name() == "euclidean_r2");
    CHECK(s.profiles[1].label == "wide_bump");
    CHECK(s.theorems[2].grid.size() == 1);
    CHECK(s.sharpness.size() == 1);
    CHECK(s.sharpness[0].family.parameters.size() == 2);
}

TEST_CASE("json and yaml give the same suite") {
    auto a = build_config(yaml(kSmall));
    auto b = build_config(parse_config_text(yaml(kSmall).dump(), true));
    CHECK(report_jsonl(run_suite(a, SuiteMode::Verify, 1)) == report_jsonl(run_suite(b, SuiteMode::Verify, 1)));
}

TEST_CASE("validation names the first offending key") {
    CHECK(error_key("colour: red") == "colour");
    CHECK(error_key("theorems: [{id: nope}]") == "theorems[0].id");
    CHECK(error_key("theorems: [nope]") == "theorems[0]");
    // Q = 2 alpha for the higher order inequality on the heisenberg group
    CHECK(error_key("theorems: [{id: higher_order, params: {alpha: 2}}]") == "theorems[0].params.alpha");
    CHECK(error_key("theorems: [sobolev_lp, {id: hardy, params: {p: 3}}]") == "theorems[1].params.p");
    CHECK(error_key("theorems: [{id: sobolev_lp, params: {q: 2}}]") == "theorems[0].params.q");
    CHECK(error_key("theorems: [{id: fractional, params: {beta_re: 3, k: 1}}]") == "theorems[0].params.k");
    CHECK(error_key("tolerances: {identity_rel: -1}") == "tolerances.identity_rel");
    CHECK(error_key("tolerances: {speed: 1}") == "tolerances.speed");
    CHECK(error_key("grid: {N: 4}") == "grid.N");
    CHECK(error_key("grid: {u_min: 5, u_max: 1}") == "grid.u_max");
    CHECK(error_key("profiles: [gauss_log, nope]") == "profiles[1]");
    CHECK(error_key("profiles: [{name: gauss_log, params: {a: -1}}]") == "profiles[0]");
    CHECK(error_key("groups: [heisenberg, heisenberg]") == "groups[1]");
    CHECK(error_key("groups: [{kind: anisotropic}]") == "groups[0].weights");
    CHECK(error_key("groups: [{kind: custom, weights: [1, 1], norm: koranyi}]") == "groups[0]");
    CHECK(error_key("seed: -4") == "seed");
    CHECK(error_key("sharpness: [{family: slz_f, verifier: hardy, group: heisenberg_koranyi}]") == "sharpness[0].family");
    CHECK(error_key("sharpness: [{family: power_cutoff, verifier: hardy, group: mars}]") == "sharpness[0].group");
    CHECK(error_key("sharpness: [{family: power_cutoff, verifier: sobolev_lp, group: euclidean_r3, parameters: [0.1, 0]}]") ==
          "sharpness[0].parameters");
    CHECK(error_key("sharpness: [{family: hat, verifier: sobolev_lp, group: euclidean_r3}]") == "sharpness[0].family");
    CHECK(error_key("sharpness: [{family: power_cutoff, verifier: weighted_l2, group: heisenberg_koranyi, params: {alpha: 2}}]") ==
          "sharpness[0].params.alpha");
}

TEST_CASE("overrides") {
    ConfigOverrides ov;
    ov.seed = 99;
    ov.tol_identity = 1e-5;
    ov.grid_n = 1024;
    ov.out_dir = "elsewhere";
    auto c = build_config(yaml("seed: 1\ngrid: {N: 4096}\nprofiles: [{name: random, count: 2}]"), ov);
    CHECK(c.seed == 99);
    CHECK(c.verify.tol.identity_rel == 1e-5);
    CHECK(c.grid.N == 1024);
    CHECK(c.out_dir == "elsewhere");
    CHECK(c.profiles.size() == 2);
    auto d = build_config(yaml("profiles: [{name: random, count: 2}]"), ov);
    CHECK(d.profiles[1].f->at(0.3) == c.profiles[1].f->at(0.3));
}

TEST_CASE("empty theorem list") {
    auto r = run_suite(build_config(yaml("theorems: []")), SuiteMode::Verify, 1);
    CHECK(r.reports.empty());
    CHECK(r.exit_code() == 0);
    CHECK(report_jsonl(r).empty());
}

TEST_CASE("suite reports are sorted, versioned and independent of the worker count") {
    auto c = build_config(yaml(kSmall));
    auto one = run_suite(c, SuiteMode::Verify, 1);
    auto three = run_suite(c, SuiteMode::Verify, 3);
    CHECK(report_jsonl(one) == report_jsonl(three));
    CHECK(curves_csv(one) == curves_csv(three));
    // weighted_l2: 2 alphas x 2 groups x 2 profiles; embedding: 2 k x 2 groups; euler_adjoint_norm: 2 x 2
    CHECK(one.reports.size() == 8 + 4 + 4);
    CHECK(one.exit_code() == 0);
    for (std::size_t i = 1; i < one.reports.size(); ++i) CHECK(one.reports[i - 1].sort_key() <= one.reports[i].sort_key());
    std::istringstream lines(report_jsonl(one));
    std::string line;
    int n = 0;
    while (std::getline(lines, line)) {
        auto j = json::parse(line);
        CHECK(j["schema_version"] == kReportSchemaVersion);
        for (const char* k : {"theorem_id", "group", "profile", "parameters", "lhs", "rhs", "remainder", "residual",
                              "margin", "status", "sub_checks", "grid_meta", "notes"})
            CHECK(j.contains(k));
        ++n;
    }
    CHECK(n == 16);
    auto csv = curves_csv(one);
    CHECK(csv.rfind("family,verifier,group,params,parameter,lhs,rhs,ratio,sharp_constant\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("profiles that do not fit the grid are inconclusive") {
    auto c = build_config(yaml("groups: [heisenberg]\nprofiles: [{name: gauss_log, params: {u0: 19}}]\ntheorems: [sobolev_lp]"));
    auto r = run_suite(c, SuiteMode::Verify, 1);
    REQUIRE(r.reports.size() == 1);
    CHECK(r.reports[0].status == Status::Inconclusive);
    CHECK(r.exit_code() == 1);
}

TEST_CASE("sharpness mode skips theorem cells") {
    auto c = build_config(yaml(kSmall));
    auto r = run_suite(c, SuiteMode::Sharpness, 1);
    CHECK(r.reports.empty());
    REQUIRE(r.sharpness.size() == 1);
    CHECK(r.sharpness[0].status == Status::Pass);
    auto j = r.sharpness[0].to_json();
    CHECK(j["points"].size() == 2);
    CHECK(j["sharp_constant"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("output files") {
    auto dir = scratch("outputs");
    auto c = build_config(yaml(kSmall));
    c.out_dir = dir.string();
    auto r = run_suite(c, SuiteMode::Verify, 1);
    write_outputs(c, r, SuiteMode::Verify, 1, 0.5);
    CHECK(slurp(dir / "report.jsonl") == report_jsonl(r));
    CHECK(slurp(dir / "ratio_curves.csv") == curves_csv(r));
    auto meta = json::parse(slurp(dir / "metadata.json"));
    CHECK(meta["seed"] == 3);
    CHECK(meta["counts"]["reports"] == 16);
    CHECK(meta["exit_code"] == 0);
    CHECK(meta.contains("finished_utc"));
}

TEST_CASE("command line") {
    auto dir = scratch("cli");
    auto log = dir / "log.txt";
    std::ofstream(dir / "empty.yaml") << "theorems: []\n";
    std::ofstream(dir / "bad.yaml") << "theorems: [{id: higher_order, params: {alpha: 2}}]\ngroups: [heisenberg]\n";
    std::ofstream(dir / "small.json") << yaml(kSmall).dump();

    CHECK(cli("verify --config " + (dir / "empty.yaml").string() + " --out " + (dir / "e").string(), log) == 0);
    CHECK(slurp(dir / "e" / "report.jsonl").empty());

    CHECK(cli("verify --config " + (dir / "bad.yaml").string() + " --out " + (dir / "b").string(), log) == 2);
    CHECK(slurp(log).find("theorems[0].params.alpha") != std::string::npos);
    CHECK(slurp(log).find("Q != alpha p") != std::string::npos);
    CHECK(cli("verify --config " + (dir / "missing.yaml").string(), log) == 2);

    CHECK(cli("verify --config " + (dir / "small.json").string() + " --jobs 2 --grid-n 2048 --out " + (dir / "s").string(),
              log) == 0);
    CHECK(!slurp(dir / "s" / "report.jsonl").empty());

    CHECK(cli("describe sobolev_lp", log) == 0);
    CHECK(slurp(log).find("p/Q") != std::string::npos);
    CHECK(cli("describe slz", log) == 0);
    CHECK(slurp(log).find("q/(gamma-1)") != std::string::npos);
    CHECK(cli("describe nope", log) == 2);
    CHECK(cli("list", log) == 0);
    CHECK(slurp(log).find("resolvent_bound") != std::string::npos);
    CHECK(cli("", log) == 2);
}
