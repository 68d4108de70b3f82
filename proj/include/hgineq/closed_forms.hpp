#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace hgineq {

using cplx = std::complex<double>;

class RadialFunction;
using RadialFunctionPtr = std::shared_ptr<const RadialFunction>;

/// A radial function written in the log-radius u = log r, i.e. u -> phi(e^u).
/// euler() returns the closed form of E phi = d/du phi(e^u) when one is known.
class RadialFunction {
public:
    virtual ~RadialFunction() = default;
    virtual cplx at(double u) const = 0;
    virtual RadialFunctionPtr euler() const { return nullptr; }
    virtual bool is_real() const { return true; }
    virtual std::string label() const = 0;
    /// Locations (in u) where the function or its derivative has a kink.
    virtual std::vector<double> kinks() const { return {}; }

    cplx at_radius(double r) const;
};

/// Closed form of E^k phi, or nullptr when the chain breaks before k.
RadialFunctionPtr closed_euler_power(RadialFunctionPtr f, int k);

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> coeffs);  // coeffs[i] multiplies u^i
    static Polynomial constant(cplx c) { return Polynomial({c}); }

    cplx operator()(cplx x) const;
    cplx operator()(double x) const { return (*this)(cplx(x, 0.0)); }
    Polynomial derivative() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(cplx c) const;
    const std::vector<cplx>& coeffs() const { return c_; }
    bool is_real() const;
    bool is_zero() const { return c_.empty(); }

private:
    void trim();
    std::vector<cplx> c_;
};

/// sum_i P_i(u) exp(S_i(u)); closed under differentiation.
class ExpPoly final : public RadialFunction {
public:
    struct Term {
        Polynomial amplitude;
        Polynomial exponent;
    };
    ExpPoly(std::vector<Term> terms, std::string label);
    /// c * exp(-a (u - u0)^2)
    static std::shared_ptr<const ExpPoly> gaussian(double a, double u0, cplx c = 1.0);

    cplx at(double u) const override;
    RadialFunctionPtr euler() const override;
    bool is_real() const override;
    std::string label() const override { return label_; }
    const std::vector<Term>& terms() const { return terms_; }

private:
    std::vector<Term> terms_;
    std::string label_;
};

/// P(s) (1 - s^2)^(-n) exp(-1/(1 - s^2)) with s = (u - center)/half_width, zero for |s| >= 1.
class Bump final : public RadialFunction {
public:
    Bump(double center, double half_width, Polynomial poly = Polynomial::constant(1.0), int n = 0,
         std::string label = "bump");
    /// Bump supported on radii [r_lo, r_hi].
    static std::shared_ptr<const Bump> on_radii(double r_lo, double r_hi);

    cplx at(double u) const override;
    RadialFunctionPtr euler() const override;
    bool is_real() const override { return poly_.is_real(); }
    std::string label() const override { return label_; }
    double center() const { return c_; }
    double half_width() const { return w_; }

private:
    double c_, w_;
    Polynomial poly_;
    int n_;
    std::string label_;
};

/// Smooth transition built from exp(-1/t): 0 for u <= u0, 1 for u >= u0 + width
/// (or the reverse when descending).
class SmoothStep final : public RadialFunction {
public:
    SmoothStep(double u0, double width, bool descending);
    static double value(double x);       ///< step on [0, 1]
    static double derivative(double x);  ///< its derivative in x
    static double derivative(double x, int n);  ///< n-th derivative in x, n <= 8

    cplx at(double u) const override;
    RadialFunctionPtr euler() const override;
    std::string label() const override { return "smooth_step"; }
    /// Ends of the transition; the step is smooth there but flat on one side.
    std::vector<double> kinks() const override;

private:
    double u0_, width_;
    bool descending_;
};

class Product final : public RadialFunction {
public:
    explicit Product(std::vector<RadialFunctionPtr> factors);
    cplx at(double u) const override;
    RadialFunctionPtr euler() const override;
    bool is_real() const override;
    std::string label() const override;
    std::vector<double> kinks() const override;

private:
    std::vector<RadialFunctionPtr> f_;
};

class Sum final : public RadialFunction {
public:
    explicit Sum(std::vector<RadialFunctionPtr> terms, std::string label = {});
    cplx at(double u) const override;
    RadialFunctionPtr euler() const override;
    bool is_real() const override;
    std::string label() const override;
    std::vector<double> kinks() const override;

private:
    std::vector<RadialFunctionPtr> t_;
    std::string label_;
};

class Scaled final : public RadialFunction {
public:
    Scaled(cplx c, RadialFunctionPtr f);
    cplx at(double u) const override { return c_ * f_->at(u); }
    RadialFunctionPtr euler() const override;
    bool is_real() const override { return c_.imag() == 0.0 && f_->is_real(); }
    std::string label() const override { return f_->label(); }
    std::vector<double> kinks() const override { return f_->kinks(); }

private:
    cplx c_;
    RadialFunctionPtr f_;
};

/// phi o D_lambda for radial phi: u -> phi(u + log lambda).
class Dilated final : public RadialFunction {
public:
    Dilated(RadialFunctionPtr f, double lambda);
    cplx at(double u) const override { return f_->at(u + shift_); }
    RadialFunctionPtr euler() const override;
    bool is_real() const override { return f_->is_real(); }
    std::string label() const override { return f_->label(); }
    std::vector<double> kinks() const override;

private:
    RadialFunctionPtr f_;
    double lambda_, shift_;
};

}  // namespace hgineq
