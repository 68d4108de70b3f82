#pragma once

#include <complex>
#include <string>
#include <vector>

#include "hgineq/closed_forms.hpp"
#include "hgineq/group_model.hpp"

namespace hgineq {

/// Uniform grid in u = log r: u_j = u_min + j h, h = (u_max - u_min)/N, j = 0..N-1.
class LogGrid {
public:
    LogGrid(double u_min = -20.0, double u_max = 20.0, int n = 4096);

    double u_min() const { return u_min_; }
    double u_max() const { return u_max_; }
    int size() const { return n_; }
    double h() const { return (u_max_ - u_min_) / n_; }
    double node(int j) const { return u_min_ + j * h(); }
    double radius(int j) const;
    /// Twice the points over a range widened by 25% about its centre.
    LogGrid refined() const;
    /// Same spacing, range shifted by du.
    LogGrid shifted(double du) const { return LogGrid(u_min_ + du, u_max_ + du, n_); }
    /// Smallest power-of-two grid on [u_min, u_max] whose spacing is at most h_max.
    static LogGrid with_spacing(double u_min, double u_max, double h_max, int n_cap = 1 << 20);

    bool operator==(const LogGrid&) const = default;

private:
    double u_min_, u_max_;
    int n_;
};

/// Radial profile sampled on a log grid, optionally backed by a closed form.
class RadialProfile {
public:
    RadialProfile(LogGrid grid, std::vector<cplx> values, RadialFunctionPtr closed_form = nullptr);
    /// Samples f on the grid; when check_support is set, throws AccuracyError
    /// if the values do not decay at both ends.
    static RadialProfile sample(const LogGrid& grid, RadialFunctionPtr f, bool check_support = true);

    const LogGrid& grid() const { return grid_; }
    const std::vector<cplx>& values() const { return values_; }
    const RadialFunctionPtr& closed_form() const { return closed_; }
    std::string label() const;
    bool is_real() const;
    double max_abs() const;
    bool is_zero() const { return max_abs() == 0.0; }

    /// |values| below rel_tol * max|values| on the outermost nodes.
    bool support_inside(double rel_tol = 1e-14) const;
    void require_support(const std::string& context) const;
    /// Resample on another grid; uses the closed form when present,
    /// otherwise trigonometric interpolation of the samples.
    RadialProfile resampled(const LogGrid& grid) const;
    /// Band-limited interpolant of the samples at an arbitrary u.
    cplx interpolate(double u) const;
    /// Value at u: closed form if present, else the interpolant.
    cplx eval(double u) const;

    RadialProfile scaled(cplx c) const;

private:
    LogGrid grid_;
    std::vector<cplx> values_;
    RadialFunctionPtr closed_;
};

struct OperatorSymbol {
    enum class Kind { Euler, EulerAdjoint, A, Resolvent, Fractional };
    Kind kind = Kind::A;
    double lambda = 0.0;       ///< resolvent parameter
    std::complex<double> beta;  ///< fractional exponent, |E|^beta := A^(beta/2)
    int power = 1;              ///< Euler and adjoint symbols are raised to this power

    static OperatorSymbol euler(int k = 1) { return {Kind::Euler, 0.0, {}, k}; }
    static OperatorSymbol euler_adjoint() { return {Kind::EulerAdjoint, 0.0, {}}; }
    static OperatorSymbol a_operator() { return {Kind::A, 0.0, {}}; }
    static OperatorSymbol resolvent(double lambda) { return {Kind::Resolvent, lambda, {}}; }
    static OperatorSymbol fractional(std::complex<double> beta) { return {Kind::Fractional, 0.0, beta}; }

    /// Multiplier value at frequency xi after the conjugation by (U phi)(u) = e^(Qu/2) phi(e^u).
    std::complex<double> operator()(double xi, double Q) const;
    std::string describe() const;
};

/// E phi = r phi'(r). Exact when the closed form carries a derivative, spectral otherwise.
RadialProfile euler_apply(const HomogeneousGroup& g, const RadialProfile& phi);
/// E* phi = -Q phi - E phi.
RadialProfile euler_adjoint_apply(const HomogeneousGroup& g, const RadialProfile& phi);
/// E^k phi. Closed-form derivatives where available; otherwise spectral, taking at each node
/// the better of the direct and the e^(Qu/2)-conjugated frame.
RadialProfile euler_power(const HomogeneousGroup& g, const RadialProfile& phi, int k);
/// U^-1 m(xi) U phi on the grid.
RadialProfile multiplier_apply(const HomogeneousGroup& g, const RadialProfile& phi, const OperatorSymbol& sym);

/// k-th u-derivative of the samples through the FFT (Nyquist mode dropped).
RadialProfile spectral_derivative(const RadialProfile& phi, int k);
/// Fourth-order central differences in u (one-sided stencils at the ends).
RadialProfile fd4_derivative(const RadialProfile& phi);

/// FFT angular frequency of index j on a grid of n points and spacing h.
double fft_frequency(int j, int n, double h);

}  // namespace hgineq
