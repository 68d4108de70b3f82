#include <chrono>
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "hgineq/config.hpp"
#include "hgineq/inequality_catalog.hpp"
#include "hgineq/parallel.hpp"
#include "hgineq/profiles.hpp"
#include "hgineq/suite.hpp"

using namespace hgineq;

namespace {

struct RunFlags {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    int jobs = 0;
    std::optional<double> tol_identity;
    std::optional<int> grid_n;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--config", f.config, "suite config (.yaml/.yml or .json)")->required();
    cmd->add_option("--out", f.out, "output directory (overrides output.dir)");
    cmd->add_option("--seed", f.seed, "seed for random profiles (overrides seed)");
    cmd->add_option("--jobs", f.jobs, "worker threads; falls back to HGINEQ_JOBS, then the core count");
    cmd->add_option("--tol-identity", f.tol_identity, "relative identity residual bound");
    cmd->add_option("--grid-n", f.grid_n, "base log-grid size");
}

int run(const RunFlags& f, SuiteMode mode) {
    SuiteConfig config;
    try {
        ConfigOverrides ov;
        ov.seed = f.seed;
        ov.tol_identity = f.tol_identity;
        ov.grid_n = f.grid_n;
        ov.out_dir = f.out;
        config = load_config(f.config, ov);
    } catch (const ConfigKeyError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: config: " << e.what() << "\n";
        return 2;
    }
    const int jobs = resolve_jobs(f.jobs);
    auto t0 = std::chrono::steady_clock::now();
    SuiteResult r = run_suite(config, mode, jobs);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
        write_outputs(config, r, mode, jobs, wall);
    } catch (const std::exception& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return 1;
    }
    for (const auto& rep : r.reports)
        if (rep.status != Status::Pass) {
            std::cout << to_string(rep.status) << ": " << rep.theorem_id << " " << rep.group << " " << rep.profile << " "
                      << canonical_parameters(rep.parameters);
            if (!rep.notes.empty()) std::cout << " (" << rep.notes.back() << ")";
            std::cout << "\n";
        }
    for (const auto& s : r.sharpness) {
        std::cout << "sharpness " << to_string(s.status) << ": " << to_string(s.spec.family.kind) << " "
                  << s.spec.verifier << " " << s.spec.group;
        if (s.curve) std::printf(" best ratio %.6f", s.curve->best_ratio);
        if (s.optimized) std::printf(", optimized %.6f after %d evaluations", s.optimized->ratio, s.optimized->evaluations);
        std::cout << std::endl;
    }
    std::cout << r.reports.size() << " reports, " << r.sharpness.size() << " sharpness entries: " << r.passed
              << " pass, " << r.failed << " fail, " << r.inconclusive << " inconclusive (" << config.out_dir << ")\n";
    return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification of Hardy, Sobolev and Rellich type inequalities on homogeneous groups"};
    app.require_subcommand(1);

    RunFlags verify_flags, sharp_flags;
    auto* verify = app.add_subcommand("verify", "run the theorem cells and sharpness entries of a suite");
    add_run_flags(verify, verify_flags);
    auto* sharp = app.add_subcommand("sharpness", "run only the sharpness entries of a suite");
    add_run_flags(sharp, sharp_flags);

    std::string describe_id;
    auto* describe = app.add_subcommand("describe", "statement, constant and parameters of a verifier");
    describe->add_option("id", describe_id, "verifier id")->required();
    app.add_subcommand("list", "verifier ids, profiles and extremizer families");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*verify) return run(verify_flags, SuiteMode::Verify);
    if (*sharp) return run(sharp_flags, SuiteMode::Sharpness);
    if (*describe) {
        try {
            std::cout << describe_verifier(describe_id);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        return 0;
    }
    std::cout << "verifiers:\n";
    for (const auto& v : verifier_registry()) std::cout << "  " << v.id << "  " << v.constant << "\n";
    std::cout << "profiles:\n";
    for (const auto& n : builtin_profile_names()) std::cout << "  " << n << "\n";
    std::cout << "  random (count, real)\n";
    std::cout << "extremizer families:\n";
    for (auto k : {FamilyKind::PowerCutoff, FamilyKind::LogPowerCutoff, FamilyKind::SlzF})
        std::cout << "  " << to_string(k) << "\n";
    return 0;
}
