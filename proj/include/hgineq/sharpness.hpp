#pragma once

#include <string>
#include <vector>

#include "hgineq/closed_forms.hpp"
#include "hgineq/group_model.hpp"
#include "hgineq/inequality_catalog.hpp"
#include "hgineq/radial_calculus.hpp"
#include "hgineq/report.hpp"

namespace hgineq {

enum class FamilyKind { PowerCutoff, LogPowerCutoff, SlzF };
std::string to_string(FamilyKind k);
/// "power_cutoff", "log_power_cutoff", "slz_f"; throws ConfigurationError otherwise.
FamilyKind family_kind_from_string(const std::string& s);

/// Near-extremal profile sequences.
///
/// PowerCutoff: r^(d + eps) times a smooth cutoff that is 1 for r <= 2 and 0 for r >= 4,
/// with d = alpha - Q/p + (m - 1); the far end is switched on where r^(eps p) ~ 1e-10.
/// LogPowerCutoff: (log r)^(-1/p - eps) for the critical log weight, cut off in log log r.
/// SlzF: the three-piece profile f_l with parameter l.
struct ExtremizerFamily {
    FamilyKind kind = FamilyKind::PowerCutoff;
    std::vector<double> parameters{0.4, 0.2, 0.1, 0.05, 0.025};  ///< eps, or l for SlzF
    double width = 0.69314718055994531;  ///< cutoff transition width in log r (log log r)
    int degree_index = 0;                ///< m above; 0 picks k for higher_order, 1 otherwise
};

/// Default members for a kind: the eps grid, or l in {1e2, 1e3, 1e4, 1e6}.
ExtremizerFamily default_family(FamilyKind kind);

/// Closed form of one member. Throws ConfigurationError when family and verifier do
/// not match, DomainError for eps <= 0 (the homogeneous profile is not in L^p).
RadialFunctionPtr family_member(const ExtremizerFamily& fam, const HomogeneousGroup& g, const std::string& verifier,
                                const Params& params, double parameter);

/// Member sampled on a log grid wide enough for its support.
RadialProfile family_profile(const ExtremizerFamily& fam, const HomogeneousGroup& g, const std::string& verifier,
                             const Params& params, double parameter, double h_max = 0.02);

struct CurvePoint {
    double parameter = 0.0;
    double lhs = 0.0;  ///< left side of the inequality
    double rhs = 0.0;  ///< sharp constant times the right-side norm
    double ratio = 0.0;  ///< lhs / rhs, at most 1
};

struct RatioCurve {
    std::string family;
    std::string verifier;
    std::string group;
    Params params;
    double sharp_constant = 0.0;
    std::vector<CurvePoint> points;  ///< in the order of the family parameters
    bool monotone = true;            ///< ratio grows toward the extremal end
    bool violation_free = true;      ///< every ratio <= 1 + 1e-10
    double best_ratio = 0.0;
    std::vector<std::string> notes;
};

/// One member's inequality sides; the right side includes the sharp constant.
CurvePoint member_quotient(const ExtremizerFamily& fam, const HomogeneousGroup& g, const std::string& verifier,
                           const Params& params, double parameter);

RatioCurve ratio_curve(const ExtremizerFamily& fam, const HomogeneousGroup& g, const std::string& verifier,
                       const Params& params, int jobs = 1);

struct OptimizeOptions {
    int budget = 200;         ///< evaluations
    bool vary_width = false;  ///< two parameters (eps, width) by Nelder-Mead
    double lower = 0.01;      ///< parameter range searched (log scale)
    double upper = 0.5;
};

struct OptimizeResult {
    std::vector<double> best;  ///< parameter, and width when varied
    double ratio = 0.0;
    int evaluations = 0;
    Status status = Status::Pass;  ///< Inconclusive when the budget ran out first
    std::string method;
};

/// Maximizes the normalized ratio over the family parameter: golden-section/Brent for one
/// parameter, Nelder-Mead for two. A family with a single parameter value returns that member.
OptimizeResult optimize_ratio(const ExtremizerFamily& fam, const HomogeneousGroup& g, const std::string& verifier,
                              const Params& params, const OptimizeOptions& opts = {});

struct SlzDecomposition {
    double q = 0.0, gamma = 0.0, R = 0.0, ell = 0.0;
    double log3_term = 0.0;  ///< logloglog(l e R) - logloglog(2e)
    double c_gamma_q = 0.0;
    double c_r_gamma_q = 0.0;
    double lhs_quadrature = 0.0;
    double rhs_quadrature = 0.0;
    double lhs_closed = 0.0;  ///< 1/(gamma-1) + log3_term + C_{R,gamma,q}
    double rhs_closed = 0.0;  ///< ((gamma-1)/q)^q log3_term + C_{gamma,q}
    double quotient = 0.0;    ///< rhs / lhs by quadrature
    double limit = 0.0;       ///< ((gamma-1)/q)^q
    double lhs_rel_error = 0.0;
    double rhs_rel_error = 0.0;
};

/// (2e)^q (loglog 2e)^(gamma-1) int_0^(loglog 2e) s^(q-gamma) e^(q(s - e^s)) ds
double slz_c_gamma_q(double q, double gamma);
/// (loglog 2e)^(gamma-1) 2^q int_(1/2)^1 (1-x)^q / ((log(1 - log x))^gamma (1 - log x)) dx/x
double slz_c_r_gamma_q(double q, double gamma);

/// The f_l integrals of the critical Hardy inequality by quadrature and by their closed
/// decompositions. Throws DomainError when l e R <= e^e or the exponent conditions fail.
SlzDecomposition slz_asymptotics(const HomogeneousGroup& g, double q, double gamma, double R, double ell);

struct HolderWitness {
    double C = 0.0;            ///< (Q - alpha p)/p
    double max_rel_deviation = 0.0;
    int nodes = 0;             ///< plateau nodes compared
};

/// g = |x|^(-C) on a plateau: compares |1/C|^p (|Eg|/|x|^alpha)^p with
/// (|g|^(p-1)/|x|^(alpha(p-1)))^(p/(p-1)) node by node, E applied spectrally to the samples.
HolderWitness holder_witness(const HomogeneousGroup& g, double p, double alpha);

}  // namespace hgineq
