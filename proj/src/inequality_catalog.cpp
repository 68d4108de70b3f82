#include "hgineq/inequality_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hgineq/errors.hpp"
#include "hgineq/profiles.hpp"
#include "hgineq/quadrature.hpp"
#include "hgineq/special_functions.hpp"

namespace hgineq {

namespace {

constexpr double kCriticalTol = 1e-12;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

bool integrand_decays(double Q, const RadialProfile& phi, double p, double alpha, double log_power) {
    const LogGrid& g = phi.grid();
    int n = g.size();
    std::vector<double> e(static_cast<std::size_t>(n), -std::numeric_limits<double>::infinity());
    double top = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        double a = std::abs(phi.values()[j]);
        double u = g.node(j);
        if (a == 0.0 || (log_power != 0.0 && u == 0.0)) continue;
        e[j] = p * std::log(a) + (Q - alpha * p) * u + (log_power != 0.0 ? log_power * std::log(std::abs(u)) : 0.0);
        top = std::max(top, e[j]);
    }
    if (!std::isfinite(top)) return true;
    const double cut = top + std::log(1e-14);
    for (int j : {0, 1, n - 2, n - 1})
        if (e[j] > cut) return false;
    return true;
}

std::vector<double> break_points(const RadialProfile& phi) {
    std::vector<double> br;
    const auto& cf = phi.closed_form();
    if (!cf) return br;
    br = cf->kinks();
    if (cf->is_real()) {
        auto z = sign_change_points([&](double u) { return cf->at(u).real(); }, phi.grid());
        br.insert(br.end(), z.begin(), z.end());
    }
    return br;
}

const char* method_of(const RadialProfile& phi, double p) {
    return (p == 2.0 || !phi.closed_form()) ? "log_grid" : "double_exponential";
}

VerificationReport base_report(const std::string& id, const HomogeneousGroup& g, const RadialProfile& phi,
                               std::map<std::string, json> params) {
    VerificationReport r;
    r.theorem_id = id;
    r.group = g.name();
    r.profile = phi.label();
    r.parameters = std::move(params);
    return r;
}

void take_main(VerificationReport& r, const SubCheck& c) {
    r.lhs = c.lhs;
    r.rhs = c.rhs;
    r.remainder = c.remainder;
    r.residual = c.residual;
    if (c.margin && c.kind == CheckKind::Inequality) r.margin = c.margin;
}

std::vector<double> tracked_values(const VerificationReport& r) {
    std::vector<double> t{r.lhs, r.rhs};
    if (r.remainder) t.push_back(*r.remainder);
    for (const auto& s : r.sub_checks) {
        t.push_back(s.lhs);
        t.push_back(s.rhs);
        if (s.remainder) t.push_back(*s.remainder);
    }
    return t;
}

double relative_change(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = std::max({std::abs(a[i]), std::abs(b[i]), 1e-12 * scale});
        if (d == 0.0) continue;
        worst = std::max(worst, std::abs(a[i] - b[i]) / d);
    }
    return worst;
}

bool is_integer(double k) { return std::floor(k) == k; }

// parts of ||E f|x|^-a||^2 = c^2 ||f|x|^-a||^2 + ||(E f + c f)|x|^-a||^2, c = (Q - 2a)/2
struct L2Parts {
    double e2, f2, rem, c;
};

L2Parts l2_parts(const HomogeneousGroup& g, const RadialProfile& f, const RadialProfile& ef, double alpha) {
    double c = (g.Q() - 2.0 * alpha) / 2.0;
    return {norm_power(g, ef, 2.0, alpha), norm_power(g, f, 2.0, alpha),
            norm_power(g, combine(ef, 1.0, f, c), 2.0, alpha), c};
}

}  // namespace

// ---------------------------------------------------------------- building blocks

double norm_power(const HomogeneousGroup& g, const RadialProfile& phi, double p, double alpha, double log_power) {
    if (!(p > 1.0)) throw DomainError("L^p norms require p > 1");
    if (phi.is_zero()) return 0.0;
    const double Q = g.Q();
    const auto& cf = phi.closed_form();
    bool decays = integrand_decays(Q, phi, p, alpha, log_power);
    if ((p == 2.0 || !cf) && decays) return lp_power_grid(Q, phi, p, alpha, log_power);
    if (!cf) throw AccuracyError("weighted integrand of " + phi.label() + " does not decay inside the grid");
    return power_integral_de(Q, [&](double u) { return cf->at(u); }, p, alpha, log_power, break_points(phi));
}

double norm(const HomogeneousGroup& g, const RadialProfile& phi, double p, double alpha, double log_power) {
    return std::pow(norm_power(g, phi, p, alpha, log_power), 1.0 / p);
}

RadialProfile combine(const RadialProfile& phi, cplx a, const RadialProfile& psi, cplx b) {
    if (!(phi.grid() == psi.grid())) throw ArgumentError("combine needs profiles on the same grid");
    std::vector<cplx> v(phi.values().size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = a * phi.values()[j] + b * psi.values()[j];
    RadialFunctionPtr cf;
    if (phi.closed_form() && psi.closed_form())
        cf = std::make_shared<Sum>(std::vector<RadialFunctionPtr>{std::make_shared<Scaled>(a, phi.closed_form()),
                                                                  std::make_shared<Scaled>(b, psi.closed_form())},
                                   "combination");
    return RadialProfile(phi.grid(), std::move(v), cf);
}

double ip_remainder(const HomogeneousGroup& g, const RadialProfile& v, const RadialProfile& u, double p) {
    if (!(p > 1.0)) throw DomainError("I_p remainder requires p > 1");
    if (!v.is_real() || !u.is_real()) throw PreconditionError("the L^p remainder identity needs real-valued functions");
    if (p == 2.0) return norm_power(g, combine(v, 1.0, u, -1.0), 2.0);
    const double Q = g.Q();
    // p I_p(a, b) |a - b|^2 in log space via the homogeneity I_p(s a, s b) = |s|^(p-2) I_p(a, b)
    auto density = [&](double a, double b, double x) -> double {
        double m = std::max(std::abs(a), std::abs(b));
        if (m == 0.0 || !std::isfinite(m)) return 0.0;
        double d = (a - b) / m;
        if (d == 0.0) return 0.0;
        double k = ip_kernel(a / m, b / m, p) * d * d;
        if (k <= 0.0) return 0.0;
        return p * std::exp(p * std::log(m) + Q * x + std::log(k));
    };
    if (v.closed_form() && u.closed_form()) {
        auto fv = v.closed_form(), fu = u.closed_form();
        std::vector<double> br = break_points(v);
        auto bu = break_points(u);
        br.insert(br.end(), bu.begin(), bu.end());
        return integrate_line([&](double x) { return density(fv->at(x).real(), fu->at(x).real(), x); }, br);
    }
    if (!(v.grid() == u.grid())) throw ArgumentError("ip_remainder needs profiles on the same grid");
    const LogGrid& grid = v.grid();
    double acc = 0.0;
    for (int j = 0; j < grid.size(); ++j)
        acc += density(v.values()[j].real(), u.values()[j].real(), grid.node(j));
    return acc * grid.h();
}

SubCheck identity_check(std::string name, double lhs, double rhs, double remainder, double tol) {
    SubCheck s;
    s.name = std::move(name);
    s.kind = CheckKind::Identity;
    s.lhs = lhs;
    s.rhs = rhs;
    s.remainder = remainder;
    double scale = std::max({std::abs(lhs), std::abs(rhs), std::abs(remainder)});
    double res = scale == 0.0 ? 0.0 : std::abs(lhs - rhs - remainder) / scale;
    if (!std::isfinite(res)) res = std::numeric_limits<double>::infinity();
    s.residual = res;
    s.status = res <= tol ? Status::Pass : Status::Fail;
    return s;
}

SubCheck inequality_check(std::string name, double lhs, double rhs, const Tolerances& tol) {
    SubCheck s;
    s.name = std::move(name);
    s.kind = CheckKind::Inequality;
    s.lhs = lhs;
    s.rhs = rhs;
    s.margin = rhs - lhs;
    bool ok = std::isfinite(lhs) && std::isfinite(rhs) && *s.margin >= -(tol.margin_rel * std::abs(rhs) + tol.margin_abs);
    s.status = ok ? Status::Pass : Status::Fail;
    return s;
}

SubCheck positivity_check(std::string name, double remainder, double scale, const Tolerances& tol) {
    SubCheck s;
    s.name = std::move(name);
    s.kind = CheckKind::Positivity;
    s.lhs = remainder;
    s.rhs = tol.positivity_floor * std::abs(scale);
    s.margin = s.lhs - s.rhs;
    s.status = (scale == 0.0 || remainder > s.rhs) ? Status::Pass : Status::Fail;
    return s;
}

void finalize_status(VerificationReport& r) {
    bool fail = std::any_of(r.sub_checks.begin(), r.sub_checks.end(),
                            [](const SubCheck& s) { return s.status == Status::Fail; });
    if (fail) r.status = Status::Fail;
    else if (!r.grid_meta.converged) r.status = Status::Inconclusive;
    else r.status = Status::Pass;
}

VerificationReport refine_and_evaluate(const std::vector<RadialProfile>& profiles, const VerifyOptions& opts,
                                       const std::function<VerificationReport(const std::vector<RadialProfile>&)>& eval) {
    std::vector<RadialProfile> cur = profiles;
    VerificationReport rep = eval(cur);
    GridMeta meta;
    meta.method = rep.grid_meta.method.empty() ? "log_grid" : rep.grid_meta.method;
    std::vector<double> prev = tracked_values(rep);
    auto level_of = [&](const std::vector<double>& t) {
        const LogGrid& g = cur.front().grid();
        return RefinementLevel{g.size(), g.u_min(), g.u_max(), t};
    };
    if (cur.empty()) {
        rep.grid_meta = meta;
        finalize_status(rep);
        return rep;
    }
    meta.levels.push_back(level_of(prev));
    bool refinable = std::all_of(cur.begin(), cur.end(), [](const RadialProfile& p) { return bool(p.closed_form()); });
    if (!refinable) {
        meta.converged = true;
        rep.notes.push_back("grid-only profile: evaluated on its own grid without refinement");
    } else {
        meta.converged = false;
        for (int d = 0; d < opts.grid.max_doublings; ++d) {
            bool room = std::all_of(cur.begin(), cur.end(),
                                    [&](const RadialProfile& p) { return 2 * p.grid().size() <= opts.grid.n_cap; });
            if (!room) {
                rep.notes.push_back("grid cap reached before the refinement settled");
                break;
            }
            for (auto& p : cur) p = RadialProfile::sample(p.grid().refined(), p.closed_form(), false);
            VerificationReport next = eval(cur);
            std::vector<double> t = tracked_values(next);
            double change = relative_change(prev, t);
            meta.levels.push_back(level_of(t));
            meta.max_relative_change = change;
            auto notes = std::move(rep.notes);
            rep = std::move(next);
            for (auto& n : notes)
                if (std::find(rep.notes.begin(), rep.notes.end(), n) == rep.notes.end()) rep.notes.push_back(n);
            if (change <= opts.tol.refine_tol) {
                meta.converged = true;
                break;
            }
            prev = std::move(t);
        }
        if (!meta.converged) rep.notes.push_back("refinement did not settle to the requested tolerance");
    }
    rep.grid_meta = meta;
    finalize_status(rep);
    return rep;
}

// ---------------------------------------------------------------- verifiers

VerificationReport verify_lp_sobolev(const HomogeneousGroup& g, const RadialProfile& phi, double p,
                                     const VerifyOptions& opts) {
    if (!(p > 1.0)) throw DomainError("sobolev_lp requires p > 1");
    return refine_and_evaluate({phi}, opts, [&](const std::vector<RadialProfile>& ps) {
        const RadialProfile& f = ps.front();
        const double Q = g.Q();
        auto r = base_report("sobolev_lp", g, f, {{"p", p}});
        r.grid_meta.method = method_of(f, p);
        auto e = euler_apply(g, f);
        auto ineq = inequality_check("lp_sobolev_inequality", norm(g, f, p), p / Q * norm(g, e, p), opts.tol);
        if (p == 2.0) {
            L2Parts parts = l2_parts(g, f, e, 0.0);
            auto id = identity_check("l2_remainder_identity", parts.e2, parts.c * parts.c * parts.f2, parts.rem,
                                     opts.tol.identity_rel);
            take_main(r, id);
            r.sub_checks.push_back(id);
            r.sub_checks.push_back(positivity_check("remainder_positive", parts.rem, parts.e2, opts.tol));
            if (f.is_real()) {
                auto u = e.scaled(-2.0 / Q);
                r.sub_checks.push_back(identity_check("lp_remainder_identity", norm_power(g, u, 2.0), parts.f2,
                                                      ip_remainder(g, f, u, 2.0), opts.tol.identity_rel));
            }
        } else if (f.is_real()) {
            auto u = e.scaled(-p / Q);
            double lu = norm_power(g, u, p), lv = norm_power(g, f, p);
            auto id = identity_check("lp_remainder_identity", lu, lv, ip_remainder(g, f, u, p), opts.tol.identity_rel);
            take_main(r, id);
            r.sub_checks.push_back(id);
            r.sub_checks.push_back(positivity_check("remainder_positive", *id.remainder, lu, opts.tol));
        } else {
            take_main(r, ineq);
            r.notes.push_back("complex-valued profile: the L^p remainder identity is stated for real-valued "
                              "functions; only the inequality is checked");
        }
        r.margin = ineq.margin;
        r.sub_checks.insert(r.sub_checks.begin(), ineq);
        return r;
    });
}

VerificationReport verify_hardy(const HomogeneousGroup& g, const RadialProfile& phi, double p,
                                const VerifyOptions& opts) {
    const double Q = g.Q();
    if (!(p > 1.0)) throw DomainError("hardy requires p > 1");
    if (!(p < Q)) throw DomainError("hardy requires p < Q (got p = " + fmt(p) + ", Q = " + fmt(Q) + ")");
    return refine_and_evaluate({phi}, opts, [&](const std::vector<RadialProfile>& ps) {
        const RadialProfile& f = ps.front();
        auto r = base_report("hardy", g, f, {{"p", p}});
        r.grid_meta.method = method_of(f, p);
        auto e = euler_apply(g, f);
        auto ef = combine(e, 1.0, f, -1.0);  // |x| E(f/|x|)
        auto hardy = inequality_check("hardy_inequality", norm(g, f, p, 1.0), p / (Q - p) * norm(g, e, p, 1.0), opts.tol);
        r.sub_checks.push_back(hardy);
        r.sub_checks.push_back(
            inequality_check("sobolev_for_f_over_x", norm(g, f, p, 1.0), p / Q * norm(g, ef, p, 1.0), opts.tol));
        if (p == 2.0 && Q >= 3.0) {
            double lhs = norm_power(g, ef, 2.0, 1.0);
            double g2 = norm_power(g, f, 2.0, 1.0);
            double rem = norm_power(g, e, 2.0, 1.0);
            auto id = identity_check("radial_derivative_identity", lhs, (Q - 1.0) * g2, rem, opts.tol.identity_rel);
            take_main(r, id);
            r.sub_checks.push_back(id);
        } else {
            take_main(r, hardy);
        }
        r.margin = hardy.margin;
        return r;
    });
}

VerificationReport verify_weighted_lp(const HomogeneousGroup& g, const RadialProfile& phi, double p, double alpha,
                                      const VerifyOptions& opts) {
    if (!(p > 1.0)) throw DomainError("weighted_lp requires p > 1");
    const double Q = g.Q();
    const bool critical = std::abs(alpha * p - Q) <= kCriticalTol;
    return refine_and_evaluate({phi}, opts, [&](const std::vector<RadialProfile>& ps) {
        const RadialProfile& f = ps.front();
        auto r = base_report("weighted_lp", g, f, {{"p", p}, {"alpha", alpha}});
        r.grid_meta.method = method_of(f, p);
        auto e = euler_apply(g, f);
        double lhs = norm(g, f, p, alpha);
        SubCheck c;
        if (critical) {
            c = inequality_check("log_weight_inequality", lhs, p * norm(g, e, p, alpha, p), opts.tol);
            r.notes.push_back("alpha p = Q: logarithmic branch with constant p");
        } else {
            double C = std::abs(p / (Q - alpha * p));
            c = inequality_check("power_weight_inequality", lhs, C * norm(g, e, p, alpha), opts.tol);
            if (std::abs(Q - alpha * p) < 1e-3 * Q)
                r.notes.push_back("alpha p is close to Q: the constant |p/(Q - alpha p)| = " + fmt(C) + " is large");
        }
        take_main(r, c);
        r.sub_checks.push_back(c);
        return r;
    });
}

VerificationReport verify_weighted_l2_identity(const HomogeneousGroup& g, const RadialProfile& phi, double alpha,
                                               const VerifyOptions& opts) {
    const double Q = g.Q();
    return refine_and_evaluate({phi}, opts, [&](const std::vector<RadialProfile>& ps) {
        const RadialProfile& f = ps.front();
        auto r = base_report("weighted_l2", g, f, {{"alpha", alpha}});
        r.grid_meta.method = "log_grid";
        auto e = euler_apply(g, f);
        L2Parts parts = l2_parts(g, f, e, alpha);
        auto id = identity_check("weighted_l2_identity", parts.e2, parts.c * parts.c * parts.f2, parts.rem,
                                 opts.tol.identity_rel);
        take_main(r, id);
        r.sub_checks.push_back(id);
        if (std::abs(Q - 2.0 * alpha) > kCriticalTol) {
            auto c = inequality_check("weighted_l2_inequality", std::sqrt(parts.f2),
                                      2.0 / std::abs(Q - 2.0 * alpha) * std::sqrt(parts.e2), opts.tol);
            r.margin = c.margin;
            r.sub_checks.push_back(c);
            r.sub_checks.push_back(positivity_check("remainder_positive", parts.rem, parts.e2, opts.tol));
        } else {
            r.notes.push_back("Q = 2 alpha: the identity has no weighted L^2 term and no inequality is implied");
        }
        return r;
    });
}

VerificationReport verify_higher_order(const HomogeneousGroup& g, const RadialProfile& phi, double alpha, int k,
                                       double p, const VerifyOptions& opts) {
    const double Q = g.Q();
    if (k < 1) throw DomainError("higher_order requires k >= 1");
    if (!(p > 1.0)) throw DomainError("higher_order requires p > 1");
    if (std::abs(Q - alpha * p) <= kCriticalTol)
        throw DomainError("higher_order requires Q != alpha p (got Q = " + fmt(Q) + ", alpha p = " + fmt(alpha * p) + ")");
    return refine_and_evaluate({phi}, opts, [&](const std::vector<RadialProfile>& ps) {
        const RadialProfile& f = ps.front();
        auto r = base_report("higher_order", g, f, {{"alpha", alpha}, {"k", k}, {"p", p}});
        r.grid_meta.method = method_of(f, p);
        std::vector<RadialProfile> pw{f};
        for (int m = 1; m <= k; ++m) pw.push_back(euler_apply(g, pw.back()));
        double C = std::pow(std::abs(p / (Q - alpha * p)), k);
        auto ineq = inequality_check("higher_order_inequality", norm(g, f, p, alpha), C * norm(g, pw[k], p, alpha), opts.tol);
        if (p == 2.0) {
            double c = (Q - 2.0 * alpha) / 2.0;
            double c2 = c * c;
            std::vector<double> cpow(static_cast<std::size_t>(k) + 1, 1.0);  // c^(2j)
            for (int j = 1; j <= k; ++j) cpow[j] = cpow[j - 1] * c2;
            double lhs = norm_power(g, pw[k], 2.0, alpha);
            double rhs = cpow[k] * norm_power(g, f, 2.0, alpha);
            double rem = 0.0;
            for (int m = 1; m <= k; ++m) rem += cpow[k - m] * norm_power(g, combine(pw[m], 1.0, pw[m - 1], c), 2.0, alpha);
            auto id = identity_check("telescoped_identity", lhs, rhs, rem, opts.tol.identity_rel);
            take_main(r, id);
            r.sub_checks.push_back(id);
            r.sub_checks.push_back(positivity_check("remainder_positive", rem, lhs, opts.tol));
        } else {
            take_main(r, ineq);
        }
        r.margin = ineq.margin;
        r.sub_checks.insert(r.sub_checks.begin(), ineq);
        return r;
    });
}

VerificationReport verify_fractional(const HomogeneousGroup& g, const RadialProfile& phi, std::complex<double> beta,
                                     int k, const VerifyOptions& opts) {
    const double Q = g.Q();
    const double rb = beta.real();
    if (!(rb > 0.0)) throw DomainError("fractional requires Re beta > 0");
    if (!(k > rb / 2.0)) throw DomainError("fractional requires k > Re beta / 2 (got k = " + std::to_string(k) + ")");
    const double C = fractional_constant(static_cast<double>(k) - beta / 2.0, k);
    return refine_and_evaluate({phi}, opts, [&](const std::vector<RadialProfile>& ps) {
        const RadialProfile& f = ps.front();
        auto r = base_report("fractional", g, f, {{"beta_re", rb}, {"beta_im", beta.imag()}, {"k", k}});
        r.grid_meta.method = "log_grid";
        double nf = norm(g, f, 2.0);
        auto fb = multiplier_apply(g, f, OperatorSymbol::fractional(beta));
        double nfb = norm(g, fb, 2.0);
        double nneg = norm(g, multiplier_apply(g, f, OperatorSymbol::fractional(-beta)), 2.0);
        double nak = norm(g, multiplier_apply(g, f, OperatorSymbol::fractional(-2.0 * k)), 2.0);
        double t = rb / (2.0 * k);
        auto bound = inequality_check("fractional_bound", nf, C * std::pow(2.0 / Q, rb) * nfb, opts.tol);
        take_main(r, bound);
        r.sub_checks.push_back(bound);
        r.sub_checks.push_back(
            inequality_check("moment_inequality", nneg, C * std::pow(nf, 1.0 - t) * std::pow(nak, t), opts.tol));
        r.sub_checks.push_back(
            inequality_check("inverse_power_bound", nak, std::pow(4.0 / (Q * Q), k) * nf, opts.tol));
        if (beta == std::complex<double>(2.0, 0.0)) {
            r.sub_checks.push_back(
                identity_check("square_matches_e2", nfb, norm(g, euler_power(g, f, 2), 2.0), 0.0, opts.tol.identity_rel));
        }
        if (beta.imag() != 0.0) {
            double nre = norm(g, multiplier_apply(g, f, OperatorSymbol::fractional(rb)), 2.0);
            r.sub_checks.push_back(identity_check("imaginary_order_unitary", nfb, nre, 0.0, opts.tol.unitary_rel));
        }
        r.notes.push_back("C(k - beta/2, k) = " + fmt(C));
        return r;
    });
}

namespace {

VerificationReport embedding_common(const std::string& id, const HomogeneousGroup& g,
                                    const std::vector<RadialProfile>& suite, std::map<std::string, json> params,
                                    double bound, const VerifyOptions& opts,
                                    const std::function<std::pair<double, double>(const RadialProfile&)>& sides) {
    if (suite.empty()) throw ArgumentError(id + " needs a non-empty profile suite");
    return refine_and_evaluate(suite, opts, [&](const std::vector<RadialProfile>& ps) {
        VerificationReport r;
        r.theorem_id = id;
        r.group = g.name();
        r.profile = "suite";
        r.parameters = params;
        r.grid_meta.method = "log_grid";
        double best = 0.0;
        for (const auto& f : ps) {
            auto [num, den] = sides(f);
            if (den == 0.0) {
                r.notes.push_back("skipped " + f.label() + ": the seminorm vanishes");
                continue;
            }
            double ratio = num / den;
            auto c = inequality_check("ratio:" + f.label(), ratio, bound, opts.tol);
            r.sub_checks.push_back(c);
            best = std::max(best, ratio);
        }
        auto main = inequality_check("embedding_bound", best, bound, opts.tol);
        take_main(r, main);
        r.sub_checks.insert(r.sub_checks.begin(), main);
        return r;
    });
}

}  // namespace

VerificationReport verify_embedding_norms(const HomogeneousGroup& g, const std::vector<RadialProfile>& suite, double p,
                                          int k, const VerifyOptions& opts) {
    if (!(p > 1.0)) throw DomainError("embedding requires p > 1");
    if (k < 1) throw DomainError("embedding requires k >= 1");
    double bound = std::pow(p / g.Q(), k);
    return embedding_common("embedding", g, suite, {{"p", p}, {"k", k}}, bound, opts, [&](const RadialProfile& f) {
        return std::pair{norm(g, f, p), norm(g, euler_power(g, f, k), p)};
    });
}

VerificationReport verify_embedding_fractional(const HomogeneousGroup& g, const std::vector<RadialProfile>& suite,
                                               std::complex<double> beta, int k, const VerifyOptions& opts) {
    const double rb = beta.real();
    if (!(rb > 0.0)) throw DomainError("embedding_fractional requires Re beta > 0");
    if (!(k > rb / 2.0)) throw DomainError("embedding_fractional requires k > Re beta / 2");
    double bound = fractional_constant(static_cast<double>(k) - beta / 2.0, k) * std::pow(2.0 / g.Q(), rb);
    return embedding_common("embedding_fractional", g, suite, {{"beta_re", rb}, {"beta_im", beta.imag()}, {"k", k}},
                            bound, opts, [&](const RadialProfile& f) {
                                return std::pair{norm(g, f, 2.0),
                                                 norm(g, multiplier_apply(g, f, OperatorSymbol::fractional(beta)), 2.0)};
                            });
}

VerificationReport verify_poincare(const HomogeneousGroup& g, const RadialProfile& phi, double p, double R,
                                   const VerifyOptions& opts) {
    if (!(p > 1.0)) throw DomainError("poincare requires p > 1");
    const double Q = g.Q();
    const bool automatic = !(R > 0.0);
    const double radius = automatic ? numerical_support_radius(phi) : R;
    {
        const LogGrid& grid = phi.grid();
        double m = phi.max_abs();
        for (int j = 0; j < grid.size(); ++j) {
            if (grid.node(j) >= std::log(radius) && std::abs(phi.values()[j]) > 1e-14 * m)
                throw PreconditionError("poincare: profile " + phi.label() + " is not supported in B(0, " + fmt(radius) + ")");
        }
    }
    return refine_and_evaluate({phi}, opts, [&](const std::vector<RadialProfile>& ps) {
        const RadialProfile& f = ps.front();
        auto r = base_report("poincare", g, f, {{"p", p}, {"R", R}});
        if (automatic) {
            r.parameters["R_effective"] = radius;
            r.notes.push_back("R taken as the numerical support radius " + fmt(radius));
        }
        r.grid_meta.method = method_of(f, p);
        auto e = euler_apply(g, f);
        double nf = norm(g, f, p);
        auto main = inequality_check("poincare_inequality", nf, radius * p / Q * norm(g, e, p, 1.0), opts.tol);
        take_main(r, main);
        r.sub_checks.push_back(main);
        r.sub_checks.push_back(inequality_check("euler_form", nf, p / Q * norm(g, e, p), opts.tol));
        return r;
    });
}

VerificationReport verify_slz(const HomogeneousGroup& g, const RadialProfile& phi, double q, double gamma, double R,
                              const VerifyOptions& opts) {
    if (!(gamma > 1.0)) throw DomainError("slz requires gamma > 1 (got gamma = " + fmt(gamma) + ")");
    if (!(q > std::max(1.0, gamma - 1.0)))
        throw DomainError("slz requires q > max(1, gamma - 1) (got q = " + fmt(q) + ", gamma = " + fmt(gamma) + ")");
    if (!(R > 0.0)) throw DomainError("slz requires R > 0");
    const double Q = g.Q();
    const double C = q / (gamma - 1.0);
    return refine_and_evaluate({phi}, opts, [&](const std::vector<RadialProfile>& ps) {
        const RadialProfile& f = ps.front();
        auto r = base_report("slz", g, f, {{"q", q}, {"gamma", gamma}, {"R", R}});
        r.grid_meta.method = "double_exponential";
        auto e = euler_apply(g, f);
        auto eval_f = [&](double u) { return f.eval(u); };
        auto eval_e = [&](double u) { return e.eval(u); };
        auto kinks_of = [&](const RadialProfile& h, const std::function<cplx(double)>& fn, cplx shift) {
            std::vector<double> k = h.closed_form() ? h.closed_form()->kinks() : std::vector<double>{};
            if (h.is_real()) {
                auto z = sign_change_points([&](double u) { return (fn(u) - shift).real(); }, h.grid());
                k.insert(k.end(), z.begin(), z.end());
            }
            return k;
        };

        WeightSpec lw;
        lw.p = q;
        lw.alpha = Q / q;
        lw.R = R;
        lw.log_active = lw.loglog_active = true;
        lw.lambda1 = -1.0 / q;
        lw.lambda2 = -gamma / q;
        lw.vanishes_at_unit_log = true;
        WeightSpec rw = lw;
        rw.lambda1 = (q - 1.0) / q;
        rw.lambda2 = (q - gamma) / q;
        rw.vanishes_at_unit_log = false;

        const cplx f_in = f.eval(std::log(R));
        const cplx f_out = f.eval(std::log(R) + 2.0);
        std::vector<double> k_in = kinks_of(f, eval_f, f_in), k_out = kinks_of(f, eval_f, f_out);
        k_in.push_back(std::log(R));
        k_out.push_back(std::log(R) + 2.0);
        std::vector<double> k_e = kinks_of(e, eval_e, 0.0);

        lw.side = rw.side = WeightSpec::Side::Inner;
        double a_in = log_weighted_power(Q, [&](double u) { return f.eval(u) - f_in; }, lw, k_in);
        double b_in = log_weighted_power(Q, eval_e, rw, k_e);
        lw.side = rw.side = WeightSpec::Side::Outer;
        double a_out = log_weighted_power(Q, [&](double u) { return f.eval(u) - f_out; }, lw, k_out);
        double b_out = log_weighted_power(Q, eval_e, rw, k_e);

        auto root = [&](double x) { return std::pow(x, 1.0 / q); };
        auto combined = inequality_check("combined", root(a_in + a_out), C * root(b_in + b_out), opts.tol);
        take_main(r, combined);
        r.sub_checks.push_back(combined);
        r.sub_checks.push_back(inequality_check("inner_ball", root(a_in), C * root(b_in), opts.tol));
        r.sub_checks.push_back(inequality_check("outer_dual", root(a_out), C * root(b_out), opts.tol));
        return r;
    });
}

VerificationReport verify_euler_adjoint_norm(const HomogeneousGroup& g, const RadialProfile& phi,
                                             const VerifyOptions& opts) {
    return refine_and_evaluate({phi}, opts, [&](const std::vector<RadialProfile>& ps) {
        const RadialProfile& f = ps.front();
        auto r = base_report("euler_adjoint_norm", g, f, {});
        r.grid_meta.method = "log_grid";
        auto e = euler_apply(g, f);
        auto es = euler_adjoint_apply(g, f);
        auto id = identity_check("norm_equality", norm(g, e, 2.0), norm(g, es, 2.0), 0.0, opts.tol.operator_rel);
        take_main(r, id);
        r.sub_checks.push_back(id);
        double a = std::abs(inner_product(g, e, f)), b = std::abs(inner_product(g, f, es));
        SubCheck adj = identity_check("adjoint_pairing", a, b, 0.0, opts.tol.operator_rel);
        r.sub_checks.push_back(adj);
        return r;
    });
}

VerificationReport verify_a_norm(const HomogeneousGroup& g, const RadialProfile& phi, const VerifyOptions& opts) {
    return refine_and_evaluate({phi}, opts, [&](const std::vector<RadialProfile>& ps) {
        const RadialProfile& f = ps.front();
        auto r = base_report("a_norm", g, f, {});
        r.grid_meta.method = "log_grid";
        auto a = multiplier_apply(g, f, OperatorSymbol::a_operator());
        auto e2 = euler_power(g, f, 2);
        auto id = identity_check("a_norm_equals_e2_norm", norm(g, a, 2.0), norm(g, e2, 2.0), 0.0, opts.tol.operator_rel);
        take_main(r, id);
        r.sub_checks.push_back(id);
        auto comp = euler_apply(g, euler_adjoint_apply(g, f));
        double diff = std::sqrt(lp_power_grid(g.Q(), combine(a, 1.0, comp, -1.0), 2.0, 0.0));
        double scale = norm(g, comp, 2.0);
        SubCheck s = identity_check("symbol_matches_composition", scale, scale, 0.0, opts.tol.operator_rel);
        s.residual = scale == 0.0 ? 0.0 : diff / scale;
        s.status = *s.residual <= opts.tol.operator_rel ? Status::Pass : Status::Fail;
        r.sub_checks.push_back(s);
        return r;
    });
}

VerificationReport verify_resolvent_bound(const HomogeneousGroup& g, const RadialProfile& phi, double lambda,
                                          const VerifyOptions& opts) {
    if (!(lambda > 0.0)) throw ArgumentError("resolvent_bound requires lambda > 0");
    Tolerances tight = opts.tol;
    tight.margin_rel = opts.tol.komatsu_rel;
    tight.margin_abs = 0.0;
    return refine_and_evaluate({phi}, opts, [&](const std::vector<RadialProfile>& ps) {
        const RadialProfile& f = ps.front();
        auto r = base_report("resolvent_bound", g, f, {{"lambda", lambda}});
        r.grid_meta.method = "log_grid";
        auto res = multiplier_apply(g, f, OperatorSymbol::resolvent(lambda));
        auto c = inequality_check("komatsu_bound", norm(g, res, 2.0), norm(g, f, 2.0) / lambda, tight);
        take_main(r, c);
        r.sub_checks.push_back(c);
        return r;
    });
}

// ---------------------------------------------------------------- registry

const std::vector<VerifierInfo>& verifier_registry() {
    static const std::vector<VerifierInfo> reg{
        {"sobolev_lp",
         "||f||_p <= (p/Q) ||E f||_p for 1 < p < oo; for real f, ||u||_p^p - ||v||_p^p = p int I_p(v,u)|v-u|^2 dx with "
         "u = -(p/Q) E f, v = f; for p = 2, ||E f||^2 = (Q/2)^2 ||f||^2 + ||E f + (Q/2) f||^2",
         "p/Q",
         "Euler-operator Sobolev inequality with exact remainder on homogeneous groups",
         {{"p", 2.0, false, "Lebesgue exponent, p > 1"}}},
        {"hardy",
         "||f/|x|||_p <= p/(Q-p) ||R f||_p with R = d/d|x|; for p = 2 and Q >= 3, "
         "||E g||^2 = (Q-1) ||g/|x|||^2 + ||dg/d|x|||^2 for g = |x| f",
         "p/(Q-p)",
         "Hardy inequality as a consequence of the Euler-operator Sobolev inequality",
         {{"p", 2.0, false, "Lebesgue exponent, 1 < p < Q"}}},
        {"weighted_lp",
         "||f/|x|^alpha||_p <= |p/(Q - alpha p)| || E f/|x|^alpha ||_p for alpha p != Q; "
         "||f/|x|^(Q/p)||_p <= p || log|x| E f/|x|^(Q/p) ||_p for alpha p = Q",
         "|p/(Q - alpha p)|, or p in the critical case",
         "weighted L^p Sobolev type inequalities with power and logarithmic weights",
         {{"p", 2.0, false, "Lebesgue exponent, p > 1"}, {"alpha", 0.0, false, "weight exponent"}}},
        {"weighted_l2",
         "|| E f/|x|^alpha ||^2 = (Q/2 - alpha)^2 ||f/|x|^alpha||^2 + || (E f + (Q-2 alpha)/2 f)/|x|^alpha ||^2, "
         "hence ||f/|x|^alpha|| <= 2/|Q - 2 alpha| || E f/|x|^alpha ||",
         "2/|Q - 2 alpha|",
         "weighted L^2 identity with exact remainder and its sharp inequality",
         {{"alpha", 0.0, false, "weight exponent"}}},
        {"higher_order",
         "||f/|x|^alpha||_p <= |p/(Q - alpha p)|^k || E^k f/|x|^alpha ||_p; for p = 2 the telescoped identity "
         "||E^k f/|x|^alpha||^2 = c^(2k) ||f/|x|^alpha||^2 + sum_m c^(2k-2m) ||(E^m f + c E^(m-1) f)/|x|^alpha||^2, "
         "c = (Q - 2 alpha)/2",
         "|p/(Q - alpha p)|^k, (2/|Q - 2 alpha|)^k at p = 2",
         "higher order Sobolev-Rellich inequalities with exact remainders",
         {{"alpha", 0.0, false, "weight exponent, Q != alpha p"},
          {"k", 1.0, false, "order, integer >= 1"},
          {"p", 2.0, false, "Lebesgue exponent, p > 1"}}},
        {"fractional",
         "||f|| <= C(k - beta/2, k) (2/Q)^(Re beta) || |E|^beta f || with |E|^beta = A^(beta/2), A = E E*; "
         "moment inequality || |E|^(-beta) f || <= C ||f||^(1 - Re beta/2k) ||A^(-k) f||^(Re beta/2k)",
         "C(k - beta/2, k) (2/Q)^(Re beta), C(b,k) = Gamma(k+1)/|Gamma(b)Gamma(k-b)| 2^(k - Re b)/(Re b (k - Re b))",
         "fractional powers of the Euler operator through the Komatsu non-negative operator A",
         {{"beta_re", 1.0, false, "Re beta > 0"},
          {"beta_im", 0.0, false, "Im beta"},
          {"k", 1.0, false, "integer k > Re beta / 2"}}},
        {"embedding",
         "sup over the suite of ||f||_p / ||E^k f||_p <= (p/Q)^k",
         "(p/Q)^k",
         "norm of the embedding of the Euler-Sobolev space into L^p",
         {{"p", 2.0, false, "Lebesgue exponent, p > 1"}, {"k", 1.0, false, "order, integer >= 1"}},
         true},
        {"embedding_fractional",
         "sup over the suite of ||f|| / || |E|^beta f || <= C(k - beta/2, k) (2/Q)^(Re beta)",
         "C(k - beta/2, k) (2/Q)^(Re beta)",
         "norm of the embedding of the Euler-Hilbert-Sobolev space into L^2",
         {{"beta_re", 1.0, false, "Re beta > 0"},
          {"beta_im", 0.0, false, "Im beta"},
          {"k", 1.0, false, "integer k > Re beta / 2"}},
         true},
        {"poincare",
         "||f||_p <= (R p/Q) || E f/|x| ||_p for f supported in B(0, R); also ||f||_p <= (p/Q) ||E f||_p",
         "R p/Q",
         "Poincare type inequality on bounded sets",
         {{"p", 2.0, false, "Lebesgue exponent, p > 1"},
          {"R", 0.0, false, "ball radius; 0 selects the numerical support radius"}}},
        {"slz",
         "(int (chi_B(0,eR)|f - f_R|^q + chi_B(0,eR)^c |f - f_(e^2 R)|^q) / (|log|log(eR/|x|)||^gamma |log(eR/|x|)|) "
         "dx/|x|^Q)^(1/q) <= q/(gamma-1) (int |x|^(q-Q) |log(eR/|x|)|^(q-1) |log|log(eR/|x|)||^(q-gamma) "
         "|E f/|x||^q dx)^(1/q), checked as a whole and on the ball and its complement",
         "q/(gamma-1)",
         "critical Hardy inequality with double logarithmic weights behind the Sobolev-Lorentz-Zygmund embedding",
         {{"q", 2.0, false, "exponent, q > max(1, gamma - 1)"},
          {"gamma", 2.0, false, "gamma > 1"},
          {"R", 1.0, false, "radius R > 0"}}},
        {"euler_adjoint_norm",
         "||E f|| = ||E* f|| with E* = -Q I - E",
         "1",
         "adjoint of the Euler operator in L^2",
         {}},
        {"a_norm",
         "||A f|| = ||E^2 f|| with A = E E*, and the multiplier xi^2 + Q^2/4 equals E E*",
         "1",
         "the operator A = E E* and its norm identity",
         {}},
        {"resolvent_bound",
         "||(lambda + A)^(-1) f|| <= ||f|| / lambda for lambda > 0",
         "1/lambda",
         "Komatsu non-negativity of A",
         {{"lambda", 1.0, false, "lambda > 0"}}},
    };
    return reg;
}

const VerifierInfo& find_verifier(const std::string& id) {
    for (const auto& v : verifier_registry())
        if (v.id == id) return v;
    throw ConfigurationError("unknown verifier id '" + id + "'");
}

std::string describe_verifier(const std::string& id) {
    const auto& v = find_verifier(id);
    std::ostringstream os;
    os << v.id << "\n";
    os << "  statement: " << v.summary << "\n";
    os << "  constant:  " << v.constant << "\n";
    os << "  context:   " << v.location << "\n";
    if (v.params.empty()) {
        os << "  parameters: none\n";
    } else {
        os << "  parameters:\n";
        for (const auto& p : v.params) os << "    " << p.name << " (default " << fmt(p.default_value) << "): " << p.meaning << "\n";
    }
    if (v.takes_suite) os << "  evaluated over the whole profile list of a suite\n";
    return os.str();
}

Params resolve_parameters(const std::string& id, const Params& given, const HomogeneousGroup& g) {
    const auto& info = find_verifier(id);
    Params out;
    for (const auto& [k, v] : given) {
        bool known = std::any_of(info.params.begin(), info.params.end(), [&](const ParamSpec& s) { return s.name == k; });
        if (!known) throw ConfigurationError(k + ": unknown parameter for verifier " + id);
        if (!std::isfinite(v)) throw ConfigurationError(k + ": must be a finite number");
        out[k] = v;
    }
    for (const auto& s : info.params)
        if (!out.count(s.name)) out[s.name] = s.default_value;

    const double Q = g.Q();
    auto fail = [&](const std::string& key, const std::string& why) {
        std::ostringstream os;
        os << key << ": " << why << " (verifier " << id << ", group " << g.name() << ", Q = " << fmt(Q) << ")";
        throw ConfigurationError(os.str());
    };
    if (out.count("p") && !(out["p"] > 1.0)) fail("p", "requires p > 1");
    if (out.count("k")) {
        if (!is_integer(out["k"]) || out["k"] < 1.0) fail("k", "requires an integer k >= 1");
    }
    if (id == "hardy" && !(out["p"] < Q)) fail("p", "requires p < Q");
    if (id == "higher_order" && std::abs(Q - out["alpha"] * out["p"]) <= kCriticalTol)
        fail("alpha", "requires Q != alpha p");
    if (id == "fractional" || id == "embedding_fractional") {
        if (!(out["beta_re"] > 0.0)) fail("beta_re", "requires Re beta > 0");
        if (!(out["k"] > out["beta_re"] / 2.0)) fail("k", "requires k > Re beta / 2");
    }
    if (id == "slz") {
        if (!(out["gamma"] > 1.0)) fail("gamma", "requires gamma > 1");
        if (!(out["q"] > std::max(1.0, out["gamma"] - 1.0))) fail("q", "requires q > max(1, gamma - 1)");
        if (!(out["R"] > 0.0)) fail("R", "requires R > 0");
    }
    if (id == "resolvent_bound" && !(out["lambda"] > 0.0)) fail("lambda", "requires lambda > 0");
    return out;
}

VerificationReport run_verifier(const std::string& id, const HomogeneousGroup& g,
                                const std::vector<RadialProfile>& profiles, const Params& params,
                                const VerifyOptions& opts, const std::string& profile_label) {
    Params p = resolve_parameters(id, params, g);
    if (profiles.empty()) throw ArgumentError(id + ": no profile given");
    const RadialProfile& f = profiles.front();
    auto beta = [&] { return std::complex<double>(p["beta_re"], p["beta_im"]); };
    VerificationReport r;
    if (id == "sobolev_lp") r = verify_lp_sobolev(g, f, p["p"], opts);
    else if (id == "hardy") r = verify_hardy(g, f, p["p"], opts);
    else if (id == "weighted_lp") r = verify_weighted_lp(g, f, p["p"], p["alpha"], opts);
    else if (id == "weighted_l2") r = verify_weighted_l2_identity(g, f, p["alpha"], opts);
    else if (id == "higher_order") r = verify_higher_order(g, f, p["alpha"], static_cast<int>(p["k"]), p["p"], opts);
    else if (id == "fractional") r = verify_fractional(g, f, beta(), static_cast<int>(p["k"]), opts);
    else if (id == "embedding") r = verify_embedding_norms(g, profiles, p["p"], static_cast<int>(p["k"]), opts);
    else if (id == "embedding_fractional")
        r = verify_embedding_fractional(g, profiles, beta(), static_cast<int>(p["k"]), opts);
    else if (id == "poincare") r = verify_poincare(g, f, p["p"], p["R"], opts);
    else if (id == "slz") r = verify_slz(g, f, p["q"], p["gamma"], p["R"], opts);
    else if (id == "euler_adjoint_norm") r = verify_euler_adjoint_norm(g, f, opts);
    else if (id == "a_norm") r = verify_a_norm(g, f, opts);
    else if (id == "resolvent_bound") r = verify_resolvent_bound(g, f, p["lambda"], opts);
    else throw ConfigurationError("unknown verifier id '" + id + "'");
    if (!profile_label.empty()) r.profile = profile_label;
    return r;
}

}  // namespace hgineq
