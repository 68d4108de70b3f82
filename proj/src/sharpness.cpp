#include "hgineq/sharpness.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hgineq/errors.hpp"
#include "hgineq/parallel.hpp"
#include "hgineq/quadrature.hpp"

namespace hgineq {

namespace {

constexpr double kLogTail = 23.025850929940457;  // log 1e10
constexpr double kViolationTol = 1e-10;
constexpr double kMonotoneTol = 1e-6;

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// ---------------------------------------------------------------- bindings

struct Binding {
    double p = 2.0;
    double alpha = 0.0;
    int k = 1;
    double log_power = 0.0;
    double constant = 1.0;
    bool critical = false;
    // slz
    double q = 0.0, gamma = 0.0, R = 0.0;
    bool higher_order = false;
};

int degree_of(const ExtremizerFamily& fam, const Binding& b) {
    if (fam.degree_index > 0) return fam.degree_index;
    return b.higher_order ? b.k : 1;
}

Binding bind(const std::string& verifier, const Params& given, const HomogeneousGroup& g) {
    Params p = resolve_parameters(verifier, given, g);
    const double Q = g.Q();
    Binding b;
    if (verifier == "sobolev_lp") {
        b.p = p["p"];
        b.constant = b.p / Q;
    } else if (verifier == "embedding") {
        b.p = p["p"];
        b.k = static_cast<int>(p["k"]);
        b.constant = std::pow(b.p / Q, b.k);
    } else if (verifier == "hardy") {
        b.p = p["p"];
        b.alpha = 1.0;
        b.constant = b.p / (Q - b.p);
    } else if (verifier == "weighted_lp") {
        b.p = p["p"];
        b.alpha = p["alpha"];
        b.critical = std::abs(b.alpha * b.p - Q) <= 1e-12;
        if (b.critical) {
            b.log_power = b.p;
            b.constant = b.p;
        } else {
            b.constant = std::abs(b.p / (Q - b.alpha * b.p));
        }
    } else if (verifier == "weighted_l2") {
        b.alpha = p["alpha"];
        if (std::abs(Q - 2.0 * b.alpha) <= 1e-12)
            throw ConfigurationError("alpha: weighted_l2 has no inequality at Q = 2 alpha");
        b.constant = 2.0 / std::abs(Q - 2.0 * b.alpha);
    } else if (verifier == "higher_order") {
        b.p = p["p"];
        b.alpha = p["alpha"];
        b.k = static_cast<int>(p["k"]);
        b.higher_order = true;
        b.constant = std::pow(std::abs(b.p / (Q - b.alpha * b.p)), b.k);
    } else if (verifier == "slz") {
        b.q = p["q"];
        b.gamma = p["gamma"];
        b.R = p["R"];
        b.p = b.q;
        b.constant = b.q / (b.gamma - 1.0);
    } else {
        throw ConfigurationError("verifier " + verifier + " has no extremizer family");
    }
    return b;
}

void check_compatible(const ExtremizerFamily& fam, const std::string& verifier, const Binding& b) {
    auto mismatch = [&] {
        throw ConfigurationError("family " + to_string(fam.kind) + " does not match verifier " + verifier +
                                 (b.critical ? " (critical log-weight case)" : ""));
    };
    switch (fam.kind) {
        case FamilyKind::PowerCutoff:
            if (verifier == "slz" || b.critical) mismatch();
            break;
        case FamilyKind::LogPowerCutoff:
            if (!b.critical) mismatch();
            break;
        case FamilyKind::SlzF:
            if (verifier != "slz") mismatch();
            break;
    }
    if (fam.parameters.empty()) throw ConfigurationError("family " + to_string(fam.kind) + " has no parameters");
    if (!(fam.width > 0.0)) throw ConfigurationError("width: the cutoff width must be positive");
    if (fam.degree_index < 0) throw ConfigurationError("degree_index: must be >= 0");
}

// ---------------------------------------------------------------- closed forms

// zeta(t) (e^t)^c for t = log u > 0, with zeta switching on over [0, w] and off over [t_out, t_out + w]
class LogPowerFn final : public RadialFunction {
public:
    LogPowerFn(double c, double w, double t_out, bool derivative)
        : c_(c), in_(0.0, w, false), out_(t_out, w, true), w_(w), t_out_(t_out), derivative_(derivative) {}

    cplx at(double u) const override {
        if (!(u > 0.0)) return 0.0;
        double t = std::log(u);
        if (!derivative_) return zeta(t) * std::exp(c_ * t);
        // d/du = (zeta'(t) + c zeta(t)) u^(c-1)
        return (zeta_prime(t) + c_ * zeta(t)) * std::exp((c_ - 1.0) * t);
    }
    RadialFunctionPtr euler() const override {
        if (derivative_) return nullptr;
        return std::make_shared<LogPowerFn>(c_, w_, t_out_, true);
    }
    std::string label() const override { return derivative_ ? "E log_power_cutoff" : "log_power_cutoff"; }
    std::vector<double> kinks() const override {
        return {1.0, std::exp(w_), std::exp(t_out_), std::exp(t_out_ + w_)};
    }

    double zeta(double t) const { return in_.at(t).real() * out_.at(t).real(); }
    double zeta_prime(double t) const {
        double a = in_.at(t).real(), b = out_.at(t).real();
        double da = t > 0.0 && t < w_ ? SmoothStep::derivative(t / w_) / w_ : 0.0;
        double db = t > t_out_ && t < t_out_ + w_ ? -SmoothStep::derivative((t - t_out_) / w_) / w_ : 0.0;
        return da * b + a * db;
    }

private:
    double c_;
    SmoothStep in_, out_;
    double w_, t_out_;
    bool derivative_;
};

// the three-piece f_l
class SlzFn final : public RadialFunction {
public:
    SlzFn(double q, double gamma, double R, double ell, bool derivative)
        : q_(q), gamma_(gamma), R_(R), ell_(ell), beta_((gamma - 1.0) / q), derivative_(derivative) {
        K_ = std::pow(std::log(std::log(2.0 * std::numbers::e)), beta_);
        c0_ = std::pow(std::log(std::log(ell * std::numbers::e * R)), beta_);
    }

    cplx at(double u) const override {
        const double u1 = -std::log(ell_), u2 = std::log(R_ / 2.0), u3 = std::log(R_);
        if (u >= u3) return 0.0;
        if (u > u2) return derivative_ ? -2.0 * K_ * std::exp(u) / R_ : K_ * (2.0 - 2.0 * std::exp(u) / R_);
        if (u > u1) {
            double s = 1.0 + u3 - u;  // log(eR/r)
            double ls = std::log(s);
            return derivative_ ? -beta_ * std::pow(ls, beta_ - 1.0) / s : std::pow(ls, beta_);
        }
        return derivative_ ? 0.0 : c0_;
    }
    RadialFunctionPtr euler() const override {
        if (derivative_) return nullptr;
        return std::make_shared<SlzFn>(q_, gamma_, R_, ell_, true);
    }
    std::string label() const override { return derivative_ ? "E slz_f" : "slz_f"; }
    std::vector<double> kinks() const override { return {-std::log(ell_), std::log(R_ / 2.0), std::log(R_)}; }

private:
    double q_, gamma_, R_, ell_, beta_, K_ = 0.0, c0_ = 0.0;
    bool derivative_;
};

void check_parameter(const ExtremizerFamily& fam, double parameter) {
    if (fam.kind == FamilyKind::SlzF) {
        if (!(parameter > 0.0)) throw DomainError("slz_f: l must be positive");
        return;
    }
    if (!(parameter > 0.0))
        throw DomainError("eps = " + fmt(parameter) +
                          ": the homogeneous profile without cutoff decay is not in L^p and cannot be compactly supported");
}

double power_cutoff_inner(const Binding& b, const ExtremizerFamily& fam, double eps) {
    return -kLogTail / ((degree_of(fam, b) - 1 + eps) * b.p);
}

RadialFunctionPtr build_member(const ExtremizerFamily& fam, const HomogeneousGroup& g, const Binding& b,
                               double parameter) {
    check_parameter(fam, parameter);
    const double Q = g.Q();
    switch (fam.kind) {
        case FamilyKind::PowerCutoff: {
            double d = b.alpha - Q / b.p + (degree_of(fam, b) - 1) + parameter;
            double u_in = power_cutoff_inner(b, fam, parameter);
            auto power = std::make_shared<ExpPoly>(
                std::vector<ExpPoly::Term>{{Polynomial::constant(1.0), Polynomial({0.0, d})}},
                "power_cutoff(eps=" + fmt(parameter) + ")");
            return std::make_shared<Product>(std::vector<RadialFunctionPtr>{
                power, std::make_shared<SmoothStep>(u_in - fam.width, fam.width, false),
                std::make_shared<SmoothStep>(std::log(2.0), fam.width, true)});
        }
        case FamilyKind::LogPowerCutoff: {
            double c = -1.0 / b.p - parameter;
            return std::make_shared<LogPowerFn>(c, fam.width, kLogTail / (parameter * b.p), false);
        }
        case FamilyKind::SlzF: {
            if (!(parameter * std::numbers::e * b.R > std::exp(std::numbers::e)))
                throw DomainError("slz_f: l e R must exceed e^e (got l = " + fmt(parameter) + ", R = " + fmt(b.R) + ")");
            return std::make_shared<SlzFn>(b.q, b.gamma, b.R, parameter, false);
        }
    }
    throw ConfigurationError("unknown family");
}

std::vector<double> spaced(double a, double b, double step) {
    std::vector<double> v;
    if (!(b > a)) return v;
    int n = static_cast<int>(std::ceil((b - a) / step));
    for (int i = 0; i <= n; ++i) v.push_back(a + (b - a) * i / n);
    return v;
}

std::vector<double> zeros_in(const std::function<double(double)>& f, double a, double b) {
    if (!(b > a)) return {};
    int n = 512;
    LogGrid scan(a, b, n);
    return sign_change_points(f, scan);
}

// E^k (e^(du) zeta) = e^(du) sum_j C(k, j) d^(k-j) zeta^(j); the two transitions never overlap
double cutoff_factor(double u, double d, int k, double a, double b, double w) {
    auto step_derivative = [&](double x, int j) {
        if (j == 0) return SmoothStep::value(x);
        return SmoothStep::derivative(x, j) / std::pow(w, j);
    };
    double xin = (u - a) / w, xout = (u - b) / w;
    if (xin <= 0.0 || xout >= 1.0) return 0.0;
    double sum = 0.0, binom = 1.0;
    for (int j = 0; j <= k; ++j) {
        double z;
        if (j == 0)
            z = step_derivative(xin, 0) * (1.0 - step_derivative(xout, 0));
        else if (xin < 1.0)
            z = step_derivative(xin, j);
        else
            z = xout > 0.0 ? -step_derivative(xout, j) : 0.0;
        sum += binom * std::pow(d, k - j) * z;
        binom = binom * (k - j) / (j + 1);
    }
    return sum;
}

CurvePoint power_cutoff_quotient(const ExtremizerFamily& fam, const HomogeneousGroup& g, const Binding& b,
                                 double eps) {
    if (b.k > 8) throw AccuracyError("power_cutoff: Euler powers above 8 are not available in closed form");
    const double Q = g.Q();
    const double d = b.alpha - Q / b.p + (degree_of(fam, b) - 1) + eps;
    const double w = fam.width;
    const double a = power_cutoff_inner(b, fam, eps) - w;
    const double c = std::log(2.0);
    const double rate = b.p * d + Q - b.alpha * b.p;
    auto integrand = [&](int k) {
        return [&, k](double u) {
            double z = cutoff_factor(u, d, k, a, c, w);
            return z == 0.0 ? 0.0 : std::exp(b.p * std::log(std::abs(z)) + rate * u);
        };
    };
    std::vector<double> br = spaced(a + w, c, 25.0);
    br.push_back(a);
    br.push_back(c + w);
    std::vector<double> bre = br;
    for (auto [lo, hi] : {std::pair{a, a + w}, std::pair{c, c + w}}) {
        auto z = zeros_in([&](double u) { return cutoff_factor(u, d, b.k, a, c, w); }, lo + 1e-9, hi - 1e-9);
        bre.insert(bre.end(), z.begin(), z.end());
    }
    auto clip = [&](auto f) { return [f, a, c, w](double u) { return (u <= a || u >= c + w) ? 0.0 : f(u); }; };
    double lhs = std::pow(integrate_line(clip(integrand(0)), br), 1.0 / b.p);
    double raw = std::pow(integrate_line(clip(integrand(b.k)), bre), 1.0 / b.p);
    CurvePoint pt;
    pt.parameter = eps;
    pt.lhs = lhs;
    pt.rhs = b.constant * raw;
    pt.ratio = pt.rhs == 0.0 ? 0.0 : lhs / pt.rhs;
    return pt;
}

CurvePoint log_power_quotient(const ExtremizerFamily& fam, const Binding& b, double eps) {
    const double p = b.p, w = fam.width;
    const double c = -1.0 / p - eps;
    const double t_out = kLogTail / (eps * p);
    LogPowerFn fn(c, w, t_out, false);
    // in t = log u: int |phi|^p du = int zeta^p e^((cp+1)t) dt, int |u phi'|^p du = int |zeta' + c zeta|^p e^((cp+1)t) dt
    const double rate = c * p + 1.0;
    auto lhs_int = [&](double t) {
        double z = fn.zeta(t);
        return z == 0.0 ? 0.0 : std::exp(p * std::log(std::abs(z)) + rate * t);
    };
    auto rhs_int = [&](double t) {
        double z = fn.zeta_prime(t) + c * fn.zeta(t);
        return z == 0.0 ? 0.0 : std::exp(p * std::log(std::abs(z)) + rate * t);
    };
    std::vector<double> br = spaced(0.0, t_out + w, 25.0);
    br.push_back(w);
    br.push_back(t_out);
    std::vector<double> bre = br;
    auto z = zeros_in([&](double t) { return fn.zeta_prime(t) + c * fn.zeta(t); }, 1e-9, w - 1e-9);
    bre.insert(bre.end(), z.begin(), z.end());
    // zeta vanishes for t <= 0 and t >= t_out + w
    auto clip = [&](auto f) {
        return [f, w, t_out](double t) { return (t <= 0.0 || t >= t_out + w) ? 0.0 : f(t); };
    };
    double lhs = std::pow(integrate_line(clip(lhs_int), br), 1.0 / p);
    double raw = std::pow(integrate_line(clip(rhs_int), bre), 1.0 / p);
    CurvePoint pt;
    pt.parameter = eps;
    pt.lhs = lhs;
    pt.rhs = b.constant * raw;
    pt.ratio = pt.rhs == 0.0 ? 0.0 : lhs / pt.rhs;
    return pt;
}

struct SlzIntegrals {
    double lhs, rhs;
};

SlzIntegrals slz_quadrature(const HomogeneousGroup& g, double q, double gamma, double R, double ell) {
    SlzFn f(q, gamma, R, ell, false), e(q, gamma, R, ell, true);
    const double Q = g.Q();
    WeightSpec lw;
    lw.p = q;
    lw.alpha = Q / q;
    lw.R = R;
    lw.log_active = lw.loglog_active = true;
    lw.lambda1 = -1.0 / q;
    lw.lambda2 = -gamma / q;
    lw.vanishes_at_unit_log = true;
    lw.side = WeightSpec::Side::Inner;
    WeightSpec rw = lw;
    rw.lambda1 = (q - 1.0) / q;
    rw.lambda2 = (q - gamma) / q;
    rw.vanishes_at_unit_log = false;
    auto kinks = f.kinks();
    double a = log_weighted_power(Q, [&](double u) { return f.at(u); }, lw, kinks);
    double b = log_weighted_power(Q, [&](double u) { return e.at(u); }, rw, kinks);
    return {a, b};
}

void check_slz(double q, double gamma, double R) {
    if (!(gamma > 1.0)) throw DomainError("slz requires gamma > 1 (got gamma = " + fmt(gamma) + ")");
    if (!(q > std::max(1.0, gamma - 1.0)))
        throw DomainError("slz requires q > max(1, gamma - 1) (got q = " + fmt(q) + ", gamma = " + fmt(gamma) + ")");
    if (!(R > 0.0)) throw DomainError("slz requires R > 0");
}

CurvePoint slz_quotient(const Binding& b, const HomogeneousGroup& g, double ell) {
    if (!(ell * std::numbers::e * b.R > std::exp(std::numbers::e)))
        throw DomainError("slz_f: l e R must exceed e^e (got l = " + fmt(ell) + ", R = " + fmt(b.R) + ")");
    auto s = slz_quadrature(g, b.q, b.gamma, b.R, ell);
    CurvePoint pt;
    pt.parameter = ell;
    pt.lhs = std::pow(s.lhs, 1.0 / b.q);
    pt.rhs = b.constant * std::pow(s.rhs, 1.0 / b.q);
    pt.ratio = pt.lhs / pt.rhs;
    return pt;
}

CurvePoint quotient(const ExtremizerFamily& fam, const HomogeneousGroup& g, const Binding& b, double parameter) {
    check_parameter(fam, parameter);
    switch (fam.kind) {
        case FamilyKind::PowerCutoff: return power_cutoff_quotient(fam, g, b, parameter);
        case FamilyKind::LogPowerCutoff: return log_power_quotient(fam, b, parameter);
        case FamilyKind::SlzF: return slz_quotient(b, g, parameter);
    }
    throw ConfigurationError("unknown family");
}

// extremal end: eps -> 0 for the cutoff families, l -> oo for f_l
bool toward_extremal(FamilyKind k, double a, double b) { return k == FamilyKind::SlzF ? b > a : b < a; }

}  // namespace

std::string to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::PowerCutoff: return "power_cutoff";
        case FamilyKind::LogPowerCutoff: return "log_power_cutoff";
        case FamilyKind::SlzF: return "slz_f";
    }
    return "unknown";
}

FamilyKind family_kind_from_string(const std::string& s) {
    if (s == "power_cutoff") return FamilyKind::PowerCutoff;
    if (s == "log_power_cutoff") return FamilyKind::LogPowerCutoff;
    if (s == "slz_f") return FamilyKind::SlzF;
    throw ConfigurationError("unknown extremizer family '" + s + "'");
}

ExtremizerFamily default_family(FamilyKind kind) {
    ExtremizerFamily f;
    f.kind = kind;
    if (kind == FamilyKind::SlzF) f.parameters = {1e2, 1e3, 1e4, 1e6};
    return f;
}

RadialFunctionPtr family_member(const ExtremizerFamily& fam, const HomogeneousGroup& g, const std::string& verifier,
                                const Params& params, double parameter) {
    Binding b = bind(verifier, params, g);
    check_compatible(fam, verifier, b);
    return build_member(fam, g, b, parameter);
}

RadialProfile family_profile(const ExtremizerFamily& fam, const HomogeneousGroup& g, const std::string& verifier,
                             const Params& params, double parameter, double h_max) {
    Binding b = bind(verifier, params, g);
    check_compatible(fam, verifier, b);
    auto f = build_member(fam, g, b, parameter);
    double lo = 0.0, hi = 0.0;
    switch (fam.kind) {
        case FamilyKind::PowerCutoff:
            lo = power_cutoff_inner(b, fam, parameter) - fam.width - 2.0;
            hi = std::log(2.0) + fam.width + 2.0;
            break;
        case FamilyKind::LogPowerCutoff: {
            double t_out = kLogTail / (parameter * b.p);
            if (t_out + fam.width > std::log(1e4))
                throw AccuracyError("log_power_cutoff: support up to log r = e^" + fmt(t_out + fam.width) +
                                    " does not fit a log grid; use member_quotient");
            lo = -2.0;
            hi = std::exp(t_out + fam.width) + 2.0;
            break;
        }
        case FamilyKind::SlzF:
            lo = -std::log(parameter) - 30.0;
            hi = std::log(b.R) + 3.0;
            break;
    }
    return RadialProfile::sample(LogGrid::with_spacing(lo, hi, h_max), f);
}

CurvePoint member_quotient(const ExtremizerFamily& fam, const HomogeneousGroup& g, const std::string& verifier,
                           const Params& params, double parameter) {
    Binding b = bind(verifier, params, g);
    check_compatible(fam, verifier, b);
    return quotient(fam, g, b, parameter);
}

RatioCurve ratio_curve(const ExtremizerFamily& fam, const HomogeneousGroup& g, const std::string& verifier,
                       const Params& params, int jobs) {
    Binding b = bind(verifier, params, g);
    check_compatible(fam, verifier, b);
    RatioCurve c;
    c.family = to_string(fam.kind);
    c.verifier = verifier;
    c.group = g.name();
    c.params = resolve_parameters(verifier, params, g);
    c.sharp_constant = b.constant;
    c.points.resize(fam.parameters.size());
    parallel_for(fam.parameters.size(), jobs,
                 [&](std::size_t i) { c.points[i] = quotient(fam, g, b, fam.parameters[i]); });

    std::vector<std::size_t> order(c.points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t bb) {
        return toward_extremal(fam.kind, c.points[a].parameter, c.points[bb].parameter);
    });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (c.points[order[i]].ratio < c.points[order[i - 1]].ratio - kMonotoneTol) c.monotone = false;
    for (const auto& pt : c.points) {
        if (pt.ratio > 1.0 + kViolationTol) c.violation_free = false;
        c.best_ratio = std::max(c.best_ratio, pt.ratio);
    }
    if (!order.empty()) {
        const auto& first = c.points[order.front()];
        const auto& last = c.points[order.back()];
        c.notes.push_back("normalized ratio moves from " + fmt(first.ratio) + " at " + fmt(first.parameter) + " to " +
                          fmt(last.ratio) + " at " + fmt(last.parameter));
    }
    if (!c.monotone) c.notes.push_back("ratios are not monotone toward the extremal end");
    if (!c.violation_free) c.notes.push_back("a member exceeds the claimed sharp constant");
    if (fam.kind == FamilyKind::PowerCutoff && degree_of(fam, b) != 1)
        c.notes.push_back("degree index m = " + std::to_string(degree_of(fam, b)) +
                          " shifts the homogeneity away from the critical degree; ratios stay below the sharp constant");
    return c;
}

namespace {

struct NmState {
    std::function<double(double, double)> f;
};

double nm_objective(const gsl_vector* x, void* params) {
    auto* s = static_cast<NmState*>(params);
    return s->f(gsl_vector_get(x, 0), gsl_vector_get(x, 1));
}

}  // namespace

OptimizeResult optimize_ratio(const ExtremizerFamily& fam, const HomogeneousGroup& g, const std::string& verifier,
                              const Params& params, const OptimizeOptions& opts) {
    Binding b = bind(verifier, params, g);
    check_compatible(fam, verifier, b);
    if (opts.budget < 1) throw ConfigurationError("budget: must be at least 1");
    OptimizeResult res;

    if (fam.parameters.size() == 1 && !opts.vary_width) {
        auto pt = quotient(fam, g, b, fam.parameters.front());
        res.best = {pt.parameter};
        res.ratio = pt.ratio;
        res.evaluations = 1;
        res.method = "single member";
        return res;
    }

    double lo = opts.lower, hi = opts.upper;
    if (!(lo > 0.0) || !(hi > 0.0)) {
        auto [mn, mx] = std::minmax_element(fam.parameters.begin(), fam.parameters.end());
        lo = *mn;
        hi = *mx;
    }
    if (!(hi > lo)) throw ConfigurationError("optimizer range is empty");
    for (double v : {lo, hi}) check_parameter(fam, v);
    const double xlo = std::log(lo), xhi = std::log(hi);

    int evals = 0;
    double best_ratio = -1.0;
    std::vector<double> best;
    auto eval = [&](double x, double width) {
        x = std::clamp(x, xlo, xhi);
        ExtremizerFamily f2 = fam;
        f2.width = width;
        ++evals;
        double r = quotient(f2, g, b, std::exp(x)).ratio;
        if (r > best_ratio) {
            best_ratio = r;
            best = opts.vary_width ? std::vector<double>{std::exp(x), width} : std::vector<double>{std::exp(x)};
        }
        return r;
    };

    if (!opts.vary_width) {
        res.method = "brent";
        std::uintmax_t iters = static_cast<std::uintmax_t>(opts.budget);
        boost::math::tools::brent_find_minima([&](double x) { return -eval(x, fam.width); }, xlo, xhi, 30, iters);
        res.status = iters >= static_cast<std::uintmax_t>(opts.budget) ? Status::Inconclusive : Status::Pass;
    } else {
        if (fam.kind == FamilyKind::SlzF) throw ConfigurationError("vary_width: slz_f has no cutoff width");
        res.method = "nelder-mead";
        const double wlo = std::log(0.05), whi = std::log(5.0);
        // outside the box: the clamped value plus the distance to it
        NmState state{[&](double x, double lw) {
            double cx = std::clamp(x, xlo, xhi), cw = std::clamp(lw, wlo, whi);
            return -eval(cx, std::exp(cw)) + std::abs(x - cx) + std::abs(lw - cw);
        }};
        gsl_multimin_function fn{&nm_objective, 2, &state};
        gsl_vector* x = gsl_vector_alloc(2);
        gsl_vector* step = gsl_vector_alloc(2);
        gsl_vector_set(x, 0, 0.5 * (xlo + xhi));
        gsl_vector_set(x, 1, std::log(fam.width));
        gsl_vector_set(step, 0, 0.25 * (xhi - xlo));
        gsl_vector_set(step, 1, 0.3);
        gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
        gsl_multimin_fminimizer_set(m, &fn, x, step);
        bool converged = false;
        while (evals < opts.budget) {
            if (gsl_multimin_fminimizer_iterate(m) != GSL_SUCCESS) break;
            if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), 1e-6) == GSL_SUCCESS) {
                converged = true;
                break;
            }
        }
        gsl_multimin_fminimizer_free(m);
        gsl_vector_free(x);
        gsl_vector_free(step);
        res.status = converged ? Status::Pass : Status::Inconclusive;
    }
    res.best = best;
    res.ratio = best_ratio;
    res.evaluations = evals;
    return res;
}

// ---------------------------------------------------------------- f_l decomposition

double slz_c_gamma_q(double q, double gamma) {
    check_slz(q, gamma, 1.0);
    const double l2e = std::log(std::log(2.0 * std::numbers::e));
    double integral = integrate_finite(
        [&](double s, double) { return s == 0.0 ? 0.0 : std::pow(s, q - gamma) * std::exp(q * (s - std::exp(s))); }, 0.0,
        l2e);
    return std::pow(2.0 * std::numbers::e, q) * std::pow(l2e, gamma - 1.0) * integral;
}

double slz_c_r_gamma_q(double q, double gamma) {
    check_slz(q, gamma, 1.0);
    const double l2e = std::log(std::log(2.0 * std::numbers::e));
    double integral = integrate_finite(
        [&](double x, double d) {
            // 1 - x kept exact near x = 1
            double om = x > 0.75 ? d : 1.0 - x;
            if (om <= 0.0) return 0.0;
            double lx = std::log1p(-om);
            double s = 1.0 - lx;
            double ls = std::log1p(-lx);
            return std::pow(om, q - gamma) * std::pow(om / ls, gamma) / (s * x);
        },
        0.5, 1.0);
    return std::pow(l2e, gamma - 1.0) * std::pow(2.0, q) * integral;
}

SlzDecomposition slz_asymptotics(const HomogeneousGroup& g, double q, double gamma, double R, double ell) {
    check_slz(q, gamma, R);
    if (!(ell * std::numbers::e * R > std::exp(std::numbers::e)))
        throw DomainError("slz_asymptotics: l e R must exceed e^e (got l = " + fmt(ell) + ", R = " + fmt(R) + ")");
    SlzDecomposition d;
    d.q = q;
    d.gamma = gamma;
    d.R = R;
    d.ell = ell;
    auto lll = [](double x) { return std::log(std::log(std::log(x))); };
    d.log3_term = lll(ell * std::numbers::e * R) - lll(2.0 * std::numbers::e);
    d.c_gamma_q = slz_c_gamma_q(q, gamma);
    d.c_r_gamma_q = slz_c_r_gamma_q(q, gamma);
    d.limit = std::pow((gamma - 1.0) / q, q);
    d.rhs_closed = d.limit * d.log3_term + d.c_gamma_q;
    d.lhs_closed = 1.0 / (gamma - 1.0) + d.log3_term + d.c_r_gamma_q;
    auto s = slz_quadrature(g, q, gamma, R, ell);
    d.lhs_quadrature = s.lhs;
    d.rhs_quadrature = s.rhs;
    d.quotient = s.rhs / s.lhs;
    d.lhs_rel_error = std::abs(d.lhs_quadrature - d.lhs_closed) / std::abs(d.lhs_closed);
    d.rhs_rel_error = std::abs(d.rhs_quadrature - d.rhs_closed) / std::abs(d.rhs_closed);
    return d;
}

// ---------------------------------------------------------------- Hoelder witness

HolderWitness holder_witness(const HomogeneousGroup& g, double p, double alpha) {
    if (!(p > 1.0)) throw DomainError("holder_witness requires p > 1");
    const double Q = g.Q();
    HolderWitness w;
    w.C = (Q - alpha * p) / p;
    if (w.C == 0.0) throw DomainError("holder_witness requires Q != alpha p");
    auto power = std::make_shared<ExpPoly>(
        std::vector<ExpPoly::Term>{{Polynomial::constant(1.0), Polynomial({0.0, -w.C})}}, "homogeneous");
    auto f = std::make_shared<Product>(std::vector<RadialFunctionPtr>{
        power, std::make_shared<SmoothStep>(-5.0, 1.0, false), std::make_shared<SmoothStep>(4.0, 1.0, true)});
    LogGrid grid(-12.0, 12.0, 8192);
    auto sampled = RadialProfile::sample(grid, f);
    RadialProfile bare(grid, sampled.values());
    auto e = euler_apply(g, bare);
    for (int j = 0; j < grid.size(); ++j) {
        double u = grid.node(j);
        if (u < -4.0 || u > 4.0) continue;
        double gv = std::abs(bare.values()[j]);
        double ev = std::abs(e.values()[j]);
        // logs of both sides
        double lhs = -p * std::log(std::abs(w.C)) + p * (std::log(ev) - alpha * u);
        double rhs = p / (p - 1.0) * ((p - 1.0) * std::log(gv) - alpha * (p - 1.0) * u);
        w.max_rel_deviation = std::max(w.max_rel_deviation, std::abs(std::expm1(lhs - rhs)));
        ++w.nodes;
    }
    return w;
}

}  // namespace hgineq
