#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hgineq/group_model.hpp"
#include "hgineq/radial_calculus.hpp"
#include "hgineq/report.hpp"

namespace hgineq {

struct Tolerances {
    double identity_rel = 1e-6;   ///< identity residual bound
    double margin_rel = 1e-10;    ///< allowed violation relative to |rhs|
    double margin_abs = 0.0;
    double operator_rel = 1e-8;   ///< norm equalities of the operator calculus
    double komatsu_rel = 1e-12;   ///< resolvent bound violation allowance
    double unitary_rel = 1e-10;   ///< |E|^(i t) preserves norms
    double positivity_floor = 1e-12;
    double refine_tol = 1e-9;     ///< relative change accepted as converged
    double mc_sigma = 3.0;
};

struct GridPolicy {
    int max_doublings = 3;
    int n_cap = 1 << 18;
};

struct VerifyOptions {
    Tolerances tol;
    GridPolicy grid;
};

using Params = std::map<std::string, double>;

struct ParamSpec {
    std::string name;
    double default_value;
    bool required;
    std::string meaning;
};

struct VerifierInfo {
    std::string id;
    std::string summary;    ///< statement in words
    std::string constant;   ///< the constant being verified
    std::string location;   ///< where the statement sits, in words
    std::vector<ParamSpec> params;
    bool takes_suite = false;  ///< evaluated over the whole profile list at once
};

const std::vector<VerifierInfo>& verifier_registry();
/// Throws ConfigurationError for unknown ids.
const VerifierInfo& find_verifier(const std::string& id);
std::string describe_verifier(const std::string& id);

/// Fills defaults, rejects unknown keys and parameters violating the verifier's
/// preconditions for the given group. Errors name the offending key.
Params resolve_parameters(const std::string& id, const Params& given, const HomogeneousGroup& g);

/// Runs a verifier with grid refinement. Non-suite verifiers use profiles.front().
VerificationReport run_verifier(const std::string& id, const HomogeneousGroup& g,
                                const std::vector<RadialProfile>& profiles, const Params& params,
                                const VerifyOptions& opts = {}, const std::string& profile_label = {});

// ---------------------------------------------------------------- individual verifiers

VerificationReport verify_lp_sobolev(const HomogeneousGroup& g, const RadialProfile& phi, double p,
                                     const VerifyOptions& opts = {});
VerificationReport verify_hardy(const HomogeneousGroup& g, const RadialProfile& phi, double p,
                                const VerifyOptions& opts = {});
VerificationReport verify_weighted_lp(const HomogeneousGroup& g, const RadialProfile& phi, double p, double alpha,
                                      const VerifyOptions& opts = {});
VerificationReport verify_weighted_l2_identity(const HomogeneousGroup& g, const RadialProfile& phi, double alpha,
                                               const VerifyOptions& opts = {});
VerificationReport verify_higher_order(const HomogeneousGroup& g, const RadialProfile& phi, double alpha, int k,
                                       double p = 2.0, const VerifyOptions& opts = {});
VerificationReport verify_fractional(const HomogeneousGroup& g, const RadialProfile& phi, std::complex<double> beta,
                                     int k, const VerifyOptions& opts = {});
VerificationReport verify_embedding_norms(const HomogeneousGroup& g, const std::vector<RadialProfile>& suite, double p,
                                          int k, const VerifyOptions& opts = {});
VerificationReport verify_embedding_fractional(const HomogeneousGroup& g, const std::vector<RadialProfile>& suite,
                                               std::complex<double> beta, int k, const VerifyOptions& opts = {});
/// R <= 0 selects the numerical support radius of phi.
VerificationReport verify_poincare(const HomogeneousGroup& g, const RadialProfile& phi, double p, double R,
                                   const VerifyOptions& opts = {});
VerificationReport verify_slz(const HomogeneousGroup& g, const RadialProfile& phi, double q, double gamma, double R,
                              const VerifyOptions& opts = {});
VerificationReport verify_euler_adjoint_norm(const HomogeneousGroup& g, const RadialProfile& phi,
                                             const VerifyOptions& opts = {});
VerificationReport verify_a_norm(const HomogeneousGroup& g, const RadialProfile& phi, const VerifyOptions& opts = {});
VerificationReport verify_resolvent_bound(const HomogeneousGroup& g, const RadialProfile& phi, double lambda,
                                          const VerifyOptions& opts = {});

// ---------------------------------------------------------------- building blocks shared with sharpness

/// int |phi|^p r^(Q-1-alpha p) |log r|^log_power dr. Trapezoid on the grid for p = 2 or
/// grid-only profiles, break-point quadrature of the closed form otherwise, and also
/// when the weighted integrand has not decayed at the grid ends.
double norm_power(const HomogeneousGroup& g, const RadialProfile& phi, double p, double alpha = 0.0,
                  double log_power = 0.0);
double norm(const HomogeneousGroup& g, const RadialProfile& phi, double p, double alpha = 0.0,
            double log_power = 0.0);

/// a phi + b psi, with a closed form when both inputs carry one.
RadialProfile combine(const RadialProfile& phi, cplx a, const RadialProfile& psi, cplx b);

/// p int I_p(v, u) |v - u|^2 dx for real v = phi, u = c E phi.
double ip_remainder(const HomogeneousGroup& g, const RadialProfile& v, const RadialProfile& u, double p);

SubCheck identity_check(std::string name, double lhs, double rhs, double remainder, double tol);
SubCheck inequality_check(std::string name, double lhs, double rhs, const Tolerances& tol);
SubCheck positivity_check(std::string name, double remainder, double scale, const Tolerances& tol);

/// Applies the refinement loop: evaluates on the given profiles, then on refined copies
/// while every profile has a closed form, until all tracked numbers settle.
VerificationReport refine_and_evaluate(const std::vector<RadialProfile>& profiles, const VerifyOptions& opts,
                                       const std::function<VerificationReport(const std::vector<RadialProfile>&)>& eval);

/// Overall status from the sub-checks and the convergence flag.
void finalize_status(VerificationReport& r);

}  // namespace hgineq
