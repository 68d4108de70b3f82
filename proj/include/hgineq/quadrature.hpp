#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hgineq/group_model.hpp"
#include "hgineq/radial_calculus.hpp"

namespace hgineq {

/// Weight |x|^(-alpha p) |log(c/|x|)|^(lambda1 p) |log|log(c/|x|)||^(lambda2 p)
/// with c = eR or R, attached to an L^p norm against dx = r^(Q-1) dr dsigma.
struct WeightSpec {
    enum class Side { Both, Inner, Outer };

    double p = 2.0;
    double alpha = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double R = 1.0;
    bool log_active = false;
    bool loglog_active = false;
    bool e_shift = true;  ///< log argument eR/|x| instead of R/|x|
    /// The integrand function vanishes (linearly) where |log(c/|x|)| = 1,
    /// relaxing the integrability condition of the double-log factor there.
    bool vanishes_at_unit_log = false;
    Side side = Side::Both;  ///< restrict to |x| < c or |x| > c
    double sphere_mass = 1.0;

    double log_center() const;  ///< log c
    void validate() const;
};

struct SphereMeasureEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
};

struct GroupIntegralEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

using SphereFunction = std::function<double(std::span<const double>)>;

// ---------------------------------------------------------------- one-dimensional rules

/// Tanh-sinh on [a, b]; f receives (x, distance of x to the nearer endpoint).
double integrate_finite(const std::function<double(double, double)>& f, double a, double b, double tol = 1e-13);
/// Exp-sinh on [a, inf) (upper) or (-inf, a] (lower); f receives x.
double integrate_half_line(const std::function<double(double)>& f, double a, bool upper, double tol = 1e-13);

// ---------------------------------------------------------------- radial integrals and norms

/// int_0^inf psi(r) r^(Q-1) dr by the trapezoid rule in u = log r. A closed-form
/// integrand is re-sampled on doubled grids until the value changes by < 1e-12.
std::complex<double> radial_integral(const HomogeneousGroup& g, const RadialProfile& psi);

/// int_0^inf phi conj(psi) r^(Q-1) dr on the common grid.
std::complex<double> inner_product(const HomogeneousGroup& g, const RadialProfile& phi, const RadialProfile& psi);

/// int_0^inf |phi|^p r^(Q-1-alpha p) |log r|^(log_power) dr by the grid trapezoid rule,
/// evaluated in log space.
double lp_power_grid(double Q, const RadialProfile& phi, double p, double alpha, double log_power = 0.0);

/// p-th power of the weighted norm without the sphere mass.
double weighted_lp_power(const HomogeneousGroup& g, const RadialProfile& phi, const WeightSpec& w);
/// Weighted L^p norm including the sphere mass factor.
double weighted_lp_norm(const HomogeneousGroup& g, const RadialProfile& phi, const WeightSpec& w);

/// Double-exponential quadrature of |f(u)|^p e^((Q-alpha p) u) times the log factors,
/// in the variable t = log|log(c/r)|, for f given in log radius.
double log_weighted_power(double Q, const std::function<cplx(double)>& f, const WeightSpec& w,
                          const std::vector<double>& kinks_u = {});

// ---------------------------------------------------------------- kernels and identities

/// I_p(h, g) = (p-1) int_0^1 |xi h + (1-xi) g|^(p-2) xi dxi.
double ip_kernel(double h, double g, double p);
std::vector<double> ip_kernel(std::span<const double> h, std::span<const double> g, double p);

/// Relative mismatch between |z|^p and its normalized angular integral representation.
double davies_identity_residual(std::complex<double> z, double p);

// ---------------------------------------------------------------- Monte Carlo

/// int over the unit quasi-sphere of h d sigma, from the shell r1 < |x| < r2 sampled by
/// rejection from the box [-r2^nu_i, r2^nu_i]. Deterministic in (seed, samples, jobs-independent).
SphereMeasureEstimate sphere_integral_mc(const HomogeneousGroup& g, const SphereFunction& h, std::int64_t samples,
                                         std::uint64_t seed, double r1 = 1.0, double r2 = 2.0, int jobs = 0);

/// (int phi r^(Q-1) dr) (int h d sigma) for f(r y) = phi(r) h(y).
GroupIntegralEstimate separable_group_integral(const HomogeneousGroup& g, const RadialProfile& phi,
                                               const SphereFunction& h, std::int64_t samples, std::uint64_t seed,
                                               int jobs = 0);

/// Direct n-dimensional Monte Carlo of int_G phi(|x|) h(D_{1/|x|} x) dx over a box
/// containing the numerical support of phi.
GroupIntegralEstimate direct_group_integral_mc(const HomogeneousGroup& g, const RadialProfile& phi,
                                               const SphereFunction& h, std::int64_t samples, std::uint64_t seed,
                                               int jobs = 0);

}  // namespace hgineq

namespace hgineq {

/// Points where a real function changes sign, located on the scan grid and polished
/// by bracketing root finding.
std::vector<double> sign_change_points(const std::function<double(double)>& f, const LogGrid& scan);

/// int_R g(u) du split at the break points: tanh-sinh between breaks, exp-sinh on the two tails.
/// Runs on integrator instances separate from integrate_finite, so g may call that itself.
double integrate_line(const std::function<double(double)>& g, std::vector<double> breaks);

/// int_R |f(u)|^p e^((Q - alpha p) u) |u|^log_power du by double-exponential rules
/// between the given break points (zeros, kinks) and to +-infinity.

double power_integral_de(double Q, const std::function<cplx(double)>& f, double p, double alpha, double log_power,
                         std::vector<double> breaks);

/// int_0^inf |phi|^p r^(Q-1-alpha p) |log r|^log_power dr. Smooth p = 2 integrands and
/// grid-only profiles use the log-grid trapezoid rule; other exponents integrate the
/// closed form with the zeros of phi as break points, where |phi|^p is not smooth.
double lp_power_auto(double Q, const RadialProfile& phi, double p, double alpha, double log_power = 0.0);

}  // namespace hgineq
