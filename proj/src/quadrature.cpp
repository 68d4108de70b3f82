#include "hgineq/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "hgineq/errors.hpp"
#include "hgineq/parallel.hpp"
#include "hgineq/rng.hpp"

namespace hgineq {

namespace bq = boost::math::quadrature;

// ---------------------------------------------------------------- WeightSpec

double WeightSpec::log_center() const { return std::log(R) + (e_shift ? 1.0 : 0.0); }

void WeightSpec::validate() const {
    if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("weighted norm requires p > 1");
    if (!(R > 0.0)) throw DomainError("weighted norm requires R > 0");
    if (!(sphere_mass > 0.0)) throw ArgumentError("sphere mass must be positive");
    double near_c = (log_active ? lambda1 * p : 0.0) + 1.0;
    if (near_c < 0.0 || (near_c == 0.0 && !(loglog_active && lambda2 * p < -1.0))) {
        std::ostringstream os;
        os << "non-integrable weight at |x| = " << (e_shift ? "eR" : "R") << ": needs lambda1*p + 1 > 0"
           << " (or = 0 with lambda2*p < -1); got lambda1*p + 1 = " << near_c;
        throw DomainError(os.str());
    }
    if (loglog_active) {
        double at_unit = lambda2 * p + (vanishes_at_unit_log ? p : 0.0);
        if (!(at_unit > -1.0)) {
            std::ostringstream os;
            os << "non-integrable double-log weight where |log(c/|x|)| = 1: needs lambda2*p"
               << (vanishes_at_unit_log ? " + p" : "") << " > -1; got " << at_unit;
            throw DomainError(os.str());
        }
    }
}

// ---------------------------------------------------------------- one-dimensional rules

namespace {

bq::tanh_sinh<double>& tanh_sinh_rule() {
    thread_local bq::tanh_sinh<double> rule;
    return rule;
}

bq::exp_sinh<double>& exp_sinh_rule() {
    thread_local bq::exp_sinh<double> rule;
    return rule;
}

void check_result(double value, double err, double l1, const char* what) {
    if (!std::isfinite(value)) throw AccuracyError(std::string(what) + ": integrand produced a non-finite value");
    if (err > 1e-7 * l1 && err > 1e-300) {
        std::ostringstream os;
        os << what << ": quadrature did not converge (error estimate " << err << ", L1 " << l1 << ")";
        throw AccuracyError(os.str());
    }
}

}  // namespace

double integrate_finite(const std::function<double(double, double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    if (!(a < b)) throw ArgumentError("integrate_finite needs a < b");
    double err = 0.0, l1 = 0.0;
    auto g = [&](double x, double xc) {
        // xc is the signed distance to the nearer endpoint, exact near the ends.
        double d = std::abs(xc);
        double xx = xc <= 0.0 ? a + d : b - d;
        if (d == 0.0) xx = x;
        return f(xx, d);
    };
    double v = tanh_sinh_rule().integrate(g, a, b, tol, &err, &l1);
    check_result(v, err, l1, "tanh-sinh");
    return v;
}

double integrate_half_line(const std::function<double(double)>& f, double a, bool upper, double tol) {
    double err = 0.0, l1 = 0.0;
    double v;
    // (-inf, a] -> [0, inf)
    auto g = [&](double s) { return upper ? f(a + s) : f(a - s); };
    v = exp_sinh_rule().integrate(g, 0.0, std::numeric_limits<double>::infinity(), tol, &err, &l1);
    check_result(v, err, l1, "exp-sinh");
    return v;
}

// ---------------------------------------------------------------- radial integrals and norms

namespace {

std::complex<double> trapezoid_radial(double Q, const RadialProfile& psi, bool check) {
    const LogGrid& g = psi.grid();
    int n = g.size();
    std::complex<double> acc = 0.0;
    double big = 0.0;
    std::vector<double> mag(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        std::complex<double> v = psi.values()[j];
        if (v == std::complex<double>(0.0)) continue;
        double w = std::exp(Q * g.node(j));
        acc += v * w;
        mag[j] = std::abs(v) * w;
        big = std::max(big, mag[j]);
    }
    if (check && big > 0.0) {
        for (int j : {0, 1, n - 2, n - 1})
            if (mag[j] > 1e-14 * big) throw AccuracyError("radial integral: integrand does not decay inside the grid");
    }
    return acc * g.h();
}

}  // namespace

std::complex<double> radial_integral(const HomogeneousGroup& g, const RadialProfile& psi) {
    double Q = g.Q();
    std::complex<double> value = trapezoid_radial(Q, psi, true);
    if (!psi.closed_form()) return value;
    LogGrid grid = psi.grid();
    while (grid.size() < (1 << 18)) {
        grid = grid.refined();
        std::complex<double> next = trapezoid_radial(Q, RadialProfile::sample(grid, psi.closed_form(), false), true);
        double scale = std::max(std::abs(next), 1e-300);
        bool done = std::abs(next - value) <= 1e-12 * scale;
        value = next;
        if (done) return value;
    }
    throw AccuracyError("radial integral: refinement did not stabilize");
}

std::complex<double> inner_product(const HomogeneousGroup& g, const RadialProfile& phi, const RadialProfile& psi) {
    if (!(phi.grid() == psi.grid())) throw ArgumentError("inner product needs profiles on the same grid");
    const LogGrid& grid = phi.grid();
    std::complex<double> acc = 0.0;
    for (int j = 0; j < grid.size(); ++j)
        acc += phi.values()[j] * std::conj(psi.values()[j]) * std::exp(g.Q() * grid.node(j));
    return acc * grid.h();
}

double lp_power_grid(double Q, const RadialProfile& phi, double p, double alpha, double log_power) {
    const LogGrid& g = phi.grid();
    double acc = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        double a = std::abs(phi.values()[j]);
        if (a == 0.0) continue;
        double u = g.node(j);
        double e = p * std::log(a) + (Q - alpha * p) * u;
        if (log_power != 0.0) {
            if (u == 0.0) continue;
            e += log_power * std::log(std::abs(u));
        }
        acc += std::exp(e);
    }
    return acc * g.h();
}

double log_weighted_power(double Q, const std::function<cplx(double)>& f, const WeightSpec& w,
                          const std::vector<double>& kinks_u) {
    w.validate();
    const double p = w.p;
    const double lc = w.log_center();
    const double a_exp = Q - w.alpha * p;
    const double t_exp = (w.log_active ? w.lambda1 * p : 0.0) + 1.0;
    const double ll_exp = w.loglog_active ? w.lambda2 * p : 0.0;

    thread_local bq::tanh_sinh<double> finite_rule;
    thread_local bq::exp_sinh<double> tail_rule;
    const double inf = std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (int side : {-1, 1}) {
        if (side < 0 && w.side == WeightSpec::Side::Outer) continue;
        if (side > 0 && w.side == WeightSpec::Side::Inner) continue;
        auto integrand = [&](double t) -> double {
            double et = std::exp(t);
            double u = lc + side * et;
            if (!std::isfinite(u)) u = side * 1e300;  // f at its limit
            double a = std::abs(f(u));
            if (a == 0.0 || !std::isfinite(a)) return 0.0;
            double e = p * std::log(a) + a_exp * u + t_exp * t;
            if (ll_exp != 0.0) e += ll_exp * std::log(std::abs(t));
            return std::exp(e);
        };
        std::vector<double> breaks{0.0};
        for (double uk : kinks_u) {
            double d = side * (uk - lc);
            if (d > 0.0 && std::isfinite(d)) breaks.push_back(std::log(d));
        }
        breaks.push_back(-1.0);
        breaks.push_back(1.0);
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
        // tails through t = -+e^s: the weight may decay only like |t|^(lambda2 p)
        double lo = breaks.front(), hi = breaks.back();
        double err = 0.0, l1 = 0.0, err_sum = 0.0, l1_sum = 0.0, part = 0.0;
        auto add = [&](double v) {
            part += v;
            err_sum += err;
            l1_sum += l1;
        };
        auto tail = [&](double sign) {
            return [&, sign](double s) {
                double e = std::exp(s);
                double v = std::isfinite(e) ? integrand(sign * e) : 0.0;
                return v == 0.0 ? 0.0 : v * e;
            };
        };
        add(tail_rule.integrate([&](double s) { return tail(-1.0)(std::log(-lo) + s); }, 0.0, inf, 1e-13, &err, &l1));
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
            double a = breaks[i], b = breaks[i + 1];
            add(finite_rule.integrate([&](double t) { return integrand(t); }, a, b, 1e-13, &err, &l1));
        }
        add(tail_rule.integrate([&](double s) { return tail(1.0)(std::log(hi) + s); }, 0.0, inf, 1e-13, &err, &l1));
        check_result(part, err_sum, l1_sum, "log_weighted_power");
        total += part;
    }
    return total;
}

double weighted_lp_power(const HomogeneousGroup& g, const RadialProfile& phi, const WeightSpec& w) {
    w.validate();
    if (!w.log_active && !w.loglog_active && w.side == WeightSpec::Side::Both)
        return lp_power_grid(g.Q(), phi, w.p, w.alpha);
    std::vector<double> kinks;
    if (phi.closed_form()) kinks = phi.closed_form()->kinks();
    return log_weighted_power(g.Q(), [&](double u) { return phi.eval(u); }, w, kinks);
}

double weighted_lp_norm(const HomogeneousGroup& g, const RadialProfile& phi, const WeightSpec& w) {
    return std::pow(w.sphere_mass * weighted_lp_power(g, phi, w), 1.0 / w.p);
}

// ---------------------------------------------------------------- kernels and identities

double ip_kernel(double h, double g, double p) {
    if (!(p > 1.0)) throw DomainError("I_p kernel requires p > 1");
    if (p == 2.0) return 0.5;
    if (h == g) {
        if (h == 0.0 && p < 2.0) throw DomainError("I_p kernel diverges at h = g = 0 for p < 2");
        return 0.5 * (p - 1.0) * std::pow(std::abs(h), p - 2.0);
    }
    double m = std::max(std::abs(h), std::abs(g));
    if (std::abs(h - g) > 1e-2 * m) {
        // (p-1)/(h-g)^2 [(|h|^p - |g|^p)/p - g (F(h) - F(g))], F(s) = sgn(s)|s|^(p-1)/(p-1)
        double hs = h / m, gs = g / m;
        auto F = [&](double s) { return std::copysign(std::pow(std::abs(s), p - 1.0), s) / (p - 1.0); };
        double br = (std::pow(std::abs(hs), p) - std::pow(std::abs(gs), p)) / p - gs * (F(hs) - F(gs));
        return std::pow(m, p - 2.0) * (p - 1.0) * br / ((hs - gs) * (hs - gs));
    }
    // |xi h + (1-xi) g| = |h - g| |xi - xi0|, xi0 = g/(g - h)
    double slope = std::abs(h - g);
    double xi0 = g / (g - h);
    auto piece = [&](double a, double b) {
        // Endpoints coinciding with xi0 are singular for p < 2; distances keep them exact.
        return integrate_finite(
            [&](double xi, double d) {
                double dist;
                if (a == xi0) dist = xi < 0.5 * (a + b) ? d : std::abs(xi - xi0);
                else if (b == xi0) dist = xi > 0.5 * (a + b) ? d : std::abs(xi - xi0);
                else dist = std::abs(xi - xi0);
                return std::pow(slope * dist, p - 2.0) * xi;
            },
            a, b, 1e-14);
    };
    double v = (xi0 > 0.0 && xi0 < 1.0) ? piece(0.0, xi0) + piece(xi0, 1.0) : piece(0.0, 1.0);
    return (p - 1.0) * v;
}

std::vector<double> ip_kernel(std::span<const double> h, std::span<const double> g, double p) {
    if (h.size() != g.size()) throw ArgumentError("ip_kernel: mismatched input lengths");
    std::vector<double> out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) out[i] = ip_kernel(h[i], g[i], p);
    return out;
}

double davies_identity_residual(std::complex<double> z, double p) {
    if (!(p > 0.0)) throw DomainError("Davies identity requires p > 0");
    constexpr double pi = std::numbers::pi;
    double r = std::abs(z), ph = std::arg(z);
    // Re(z) cos t + Im(z) sin t = r cos(t - ph); zeros at ph +- pi/2, folded into [-pi, pi].
    auto fold = [&](double t) {
        while (t <= -pi) t += 2 * pi;
        while (t > pi) t -= 2 * pi;
        return t;
    };
    auto angular = [&](double shift, double scale) {
        std::vector<double> br{-pi, pi, fold(shift + pi / 2), fold(shift - pi / 2)};
        std::sort(br.begin(), br.end());
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < br.size(); ++i) {
            if (br[i + 1] - br[i] <= 0.0) continue;
            acc += integrate_finite([&](double t, double) { return std::pow(std::abs(scale * std::cos(t - shift)), p); },
                                    br[i], br[i + 1], 1e-14);
        }
        return acc;
    };
    double lhs = std::pow(r, p);
    double rhs = angular(ph, r) / angular(0.0, 1.0);
    if (lhs == 0.0) return std::abs(rhs);
    return std::abs(lhs - rhs) / lhs;
}

// ---------------------------------------------------------------- Monte Carlo

namespace {

constexpr std::int64_t kBlock = 1 << 15;

struct Welford {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    std::int64_t hits = 0;

    void add(double x) {
        ++n;
        double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    void merge(const Welford& o) {
        if (o.n == 0) return;
        std::int64_t tot = n + o.n;
        double d = o.mean - mean;
        mean += d * static_cast<double>(o.n) / static_cast<double>(tot);
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / static_cast<double>(tot);
        n = tot;
        hits += o.hits;
    }
    double std_error() const {
        if (n < 2) return 0.0;
        return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
    }
};

/// Block-parallel box sampler; sample(x) returns the estimator value and whether x was a hit.
template <class Sample>
Welford box_estimate(const std::vector<double>& half_widths, std::int64_t samples, std::uint64_t seed,
                     std::uint64_t stream_base, int jobs, const Sample& sample) {
    if (samples < 1) throw ArgumentError("Monte Carlo needs at least one sample");
    std::size_t blocks = static_cast<std::size_t>((samples + kBlock - 1) / kBlock);
    std::vector<Welford> parts(blocks);
    parallel_for(blocks, resolve_jobs(jobs), [&](std::size_t b) {
        CounterRng rng(seed, stream_base + b);
        std::int64_t begin = static_cast<std::int64_t>(b) * kBlock;
        std::int64_t count = std::min(kBlock, samples - begin);
        std::vector<double> x(half_widths.size());
        Welford acc;
        for (std::int64_t i = 0; i < count; ++i) {
            for (std::size_t d = 0; d < x.size(); ++d) x[d] = rng.uniform(-half_widths[d], half_widths[d]);
            auto [value, hit] = sample(x);
            acc.add(value);
            if (hit) ++acc.hits;
        }
        parts[b] = acc;
    });
    Welford total;
    for (const auto& w : parts) total.merge(w);
    return total;
}

double box_volume(const std::vector<double>& half_widths) {
    double v = 1.0;
    for (double b : half_widths) v *= 2.0 * b;
    return v;
}

}  // namespace

SphereMeasureEstimate sphere_integral_mc(const HomogeneousGroup& g, const SphereFunction& h, std::int64_t samples,
                                         std::uint64_t seed, double r1, double r2, int jobs) {
    if (!(r1 >= 0.0 && r2 > r1)) throw ArgumentError("shell radii must satisfy 0 <= r1 < r2");
    std::vector<double> half(g.weights().size());
    for (std::size_t i = 0; i < half.size(); ++i) half[i] = std::pow(r2, g.weights()[i]);
    double Q = g.Q();
    double scale = box_volume(half) * Q / (std::pow(r2, Q) - std::pow(r1, Q));
    Welford w = box_estimate(half, samples, seed, 0, jobs, [&](const std::vector<double>& x) {
        double r = g.quasi_norm(x);
        if (!(r > r1 && r < r2)) return std::pair<double, bool>{0.0, false};
        return std::pair<double, bool>{scale * h(g.project_to_sphere(x)), true};
    });
    if (w.hits == 0) throw GeometryError("sphere Monte Carlo: no sample fell inside the shell");
    return {w.mean, w.std_error(), w.n};
}

GroupIntegralEstimate separable_group_integral(const HomogeneousGroup& g, const RadialProfile& phi,
                                               const SphereFunction& h, std::int64_t samples, std::uint64_t seed,
                                               int jobs) {
    double radial = radial_integral(g, phi).real();
    SphereMeasureEstimate s = sphere_integral_mc(g, h, samples, seed, 1.0, 2.0, jobs);
    return {radial * s.value, std::abs(radial) * s.std_error};
}

GroupIntegralEstimate direct_group_integral_mc(const HomogeneousGroup& g, const RadialProfile& phi,
                                               const SphereFunction& h, std::int64_t samples, std::uint64_t seed,
                                               int jobs) {
    const LogGrid& grid = phi.grid();
    double Q = g.Q(), big = 0.0;
    std::vector<double> mag(static_cast<std::size_t>(grid.size()));
    for (int j = 0; j < grid.size(); ++j) {
        mag[j] = std::abs(phi.values()[j]) * std::exp(Q * grid.node(j));
        big = std::max(big, mag[j]);
    }
    if (big == 0.0) return {0.0, 0.0};
    int last = grid.size() - 1;
    while (last > 0 && mag[last] < 1e-14 * big) --last;
    double r_max = std::exp(grid.node(std::min(last + 1, grid.size() - 1)));
    std::vector<double> half(g.weights().size());
    for (std::size_t i = 0; i < half.size(); ++i) half[i] = std::pow(r_max, g.weights()[i]);
    double vol = box_volume(half);
    // Streams disjoint from the sphere estimator.
    Welford w = box_estimate(half, samples, seed, std::uint64_t{1} << 40, jobs, [&](const std::vector<double>& x) {
        double r = g.quasi_norm(x);
        if (r == 0.0 || r > r_max) return std::pair<double, bool>{0.0, false};
        double v = phi.eval(std::log(r)).real() * h(g.project_to_sphere(x));
        return std::pair<double, bool>{vol * v, true};
    });
    return {w.mean, w.std_error()};
}

// ---------------------------------------------------------------- break-point quadrature

std::vector<double> sign_change_points(const std::function<double(double)>& f, const LogGrid& scan) {
    std::vector<double> out;
    int n = scan.size();
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) v[j] = f(scan.node(j));
    for (int j = 0; j + 1 < n; ++j) {
        double a = scan.node(j), b = scan.node(j + 1);
        if (v[j] == 0.0) {
            bool left = j > 0 && v[j - 1] != 0.0, right = v[j + 1] != 0.0;
            if (left || right) out.push_back(a);
            continue;
        }
        if ((v[j] < 0.0) == (v[j + 1] < 0.0) || v[j + 1] == 0.0) continue;
        std::uintmax_t iters = 200;
        auto tol = [](double x, double y) { return std::abs(x - y) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)); };
        auto r = boost::math::tools::toms748_solve(f, a, b, v[j], v[j + 1], tol, iters);
        out.push_back(0.5 * (r.first + r.second));
    }
    return out;
}

double integrate_line(const std::function<double(double)>& g, std::vector<double> breaks) {
    thread_local bq::tanh_sinh<double> finite_rule;
    thread_local bq::exp_sinh<double> tail_rule;
    if (breaks.empty()) breaks.push_back(0.0);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    const double inf = std::numeric_limits<double>::infinity();
    double total = 0.0, err_sum = 0.0, l1_sum = 0.0, err = 0.0, l1 = 0.0;
    auto add = [&](double v) {
        if (!std::isfinite(v)) throw AccuracyError("integrate_line: integrand produced a non-finite value");
        total += v;
        err_sum += err;
        l1_sum += l1;
    };
    double lo = breaks.front(), hi = breaks.back();
    add(tail_rule.integrate([&](double s) { return g(lo - s); }, 0.0, inf, 1e-13, &err, &l1));
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double a = breaks[i], b = breaks[i + 1];
        auto f = [&](double x, double xc) {
            double d = std::abs(xc);
            return g(d == 0.0 ? x : (xc <= 0.0 ? a + d : b - d));
        };
        add(finite_rule.integrate(f, a, b, 1e-13, &err, &l1));
    }
    add(tail_rule.integrate([&](double s) { return g(hi + s); }, 0.0, inf, 1e-13, &err, &l1));
    // convergence judged on the whole line; negligible pieces may stop early
    check_result(total, err_sum, l1_sum, "integrate_line");
    return total;
}

double power_integral_de(double Q, const std::function<cplx(double)>& f, double p, double alpha, double log_power,
                         std::vector<double> breaks) {
    const double a_exp = Q - alpha * p;
    auto integrand = [&](double u) -> double {
        if (!std::isfinite(u)) return 0.0;
        double a = std::abs(f(u));
        if (a == 0.0 || !std::isfinite(a)) return 0.0;
        double e = p * std::log(a) + a_exp * u;
        if (log_power != 0.0) {
            if (u == 0.0) return log_power > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
            e += log_power * std::log(std::abs(u));
        }
        return std::exp(e);
    };
    if (log_power != 0.0) breaks.push_back(0.0);
    if (breaks.empty()) breaks.push_back(0.0);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    double total = integrate_half_line(integrand, breaks.front(), false);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        total += integrate_finite([&](double u, double) { return integrand(u); }, breaks[i], breaks[i + 1]);
    total += integrate_half_line(integrand, breaks.back(), true);
    return total;
}

double lp_power_auto(double Q, const RadialProfile& phi, double p, double alpha, double log_power) {
    if (!(p > 1.0)) throw DomainError("L^p norms require p > 1");
    const auto& cf = phi.closed_form();
    if (p == 2.0 || !cf) return lp_power_grid(Q, phi, p, alpha, log_power);
    std::vector<double> breaks = cf->kinks();
    if (cf->is_real()) {
        auto z = sign_change_points([&](double u) { return cf->at(u).real(); }, phi.grid());
        breaks.insert(breaks.end(), z.begin(), z.end());
    }
    return power_integral_de(Q, [&](double u) { return cf->at(u); }, p, alpha, log_power, std::move(breaks));
}

}  // namespace hgineq
