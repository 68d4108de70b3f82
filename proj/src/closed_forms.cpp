#include "hgineq/closed_forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "hgineq/errors.hpp"

namespace hgineq {

cplx RadialFunction::at_radius(double r) const {
    if (!(r > 0.0)) throw ArgumentError("radial functions are evaluated at r > 0");
    return at(std::log(r));
}

RadialFunctionPtr closed_euler_power(RadialFunctionPtr f, int k) {
    for (int i = 0; i < k && f; ++i) f = f->euler();
    return f;
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
}

cplx Polynomial::operator()(cplx x) const {
    cplx acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<cplx> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<cplx> s(std::max(c_.size(), o.c_.size()), cplx(0.0));
    for (std::size_t i = 0; i < c_.size(); ++i) s[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) s[i] += o.c_[i];
    return Polynomial(std::move(s));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    std::vector<cplx> p(c_.size() + o.c_.size() - 1, cplx(0.0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) p[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(p));
}

Polynomial Polynomial::operator*(cplx c) const {
    std::vector<cplx> p = c_;
    for (auto& v : p) v *= c;
    return Polynomial(std::move(p));
}

bool Polynomial::is_real() const {
    return std::all_of(c_.begin(), c_.end(), [](cplx v) { return v.imag() == 0.0; });
}

// ---------------------------------------------------------------- ExpPoly

ExpPoly::ExpPoly(std::vector<Term> terms, std::string label) : terms_(std::move(terms)), label_(std::move(label)) {}

std::shared_ptr<const ExpPoly> ExpPoly::gaussian(double a, double u0, cplx c) {
    Polynomial S({-a * u0 * u0, 2.0 * a * u0, -a});
    return std::make_shared<ExpPoly>(std::vector<Term>{{Polynomial::constant(c), S}}, "gaussian");
}

cplx ExpPoly::at(double u) const {
    cplx acc = 0.0;
    for (const auto& t : terms_) {
        cplx s = t.exponent(u);
        if (s.real() < -745.0) continue;
        acc += t.amplitude(u) * std::exp(s);
    }
    return acc;
}

RadialFunctionPtr ExpPoly::euler() const {
    std::vector<Term> d;
    d.reserve(terms_.size());
    for (const auto& t : terms_) {
        Polynomial amp = t.amplitude.derivative() + t.amplitude * t.exponent.derivative();
        if (!amp.is_zero()) d.push_back({amp, t.exponent});
    }
    return std::make_shared<ExpPoly>(std::move(d), "E " + label_);
}

bool ExpPoly::is_real() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return t.amplitude.is_real() && t.exponent.is_real(); });
}

// ---------------------------------------------------------------- Bump

Bump::Bump(double center, double half_width, Polynomial poly, int n, std::string label)
    : c_(center), w_(half_width), poly_(std::move(poly)), n_(n), label_(std::move(label)) {
    if (!(half_width > 0.0)) throw ArgumentError("bump half width must be positive");
}

std::shared_ptr<const Bump> Bump::on_radii(double r_lo, double r_hi) {
    if (!(r_lo > 0.0 && r_hi > r_lo)) throw ArgumentError("bump radii must satisfy 0 < r_lo < r_hi");
    double a = std::log(r_lo), b = std::log(r_hi);
    return std::make_shared<Bump>(0.5 * (a + b), 0.5 * (b - a), Polynomial::constant(1.0), 0, "bump");
}

cplx Bump::at(double u) const {
    double s = (u - c_) / w_;
    double q = 1.0 - s * s;
    if (!(q > 0.0)) return 0.0;
    double e = -1.0 / q - n_ * std::log(q);
    if (e < -745.0) return 0.0;
    return poly_(s) * std::exp(e);
}

RadialFunctionPtr Bump::euler() const {
    // d/ds [P q^-n e^(-1/q)] = q^-(n+2) e^(-1/q) [P' q^2 + 2 n s q P - 2 s P], q = 1 - s^2
    Polynomial q({1.0, 0.0, -1.0});
    Polynomial s({0.0, 1.0});
    Polynomial next = poly_.derivative() * q * q + s * q * poly_ * cplx(2.0 * n_) + s * poly_ * cplx(-2.0);
    return std::make_shared<Bump>(c_, w_, next * cplx(1.0 / w_), n_ + 2, "E " + label_);
}

// ---------------------------------------------------------------- SmoothStep

namespace {

class SmoothStepDerivative final : public RadialFunction {
public:
    SmoothStepDerivative(double u0, double width, bool descending, int order = 1)
        : u0_(u0), width_(width), descending_(descending), order_(order) {}
    cplx at(double u) const override {
        double x = (u - u0_) / width_;
        double d = order_ == 1 ? SmoothStep::derivative(x) : SmoothStep::derivative(x, order_);
        return (descending_ ? -1.0 : 1.0) * d / std::pow(width_, order_);
    }
    RadialFunctionPtr euler() const override {
        if (order_ >= 8) return nullptr;
        return std::make_shared<SmoothStepDerivative>(u0_, width_, descending_, order_ + 1);
    }
    std::string label() const override { return "E^" + std::to_string(order_) + " smooth_step"; }
    std::vector<double> kinks() const override { return {u0_, u0_ + width_}; }

private:
    double u0_, width_;
    bool descending_;
    int order_;
};

// truncated Taylor series in h about a point, degree kJet
constexpr int kJet = 8;
using Jet = std::array<double, kJet + 1>;

Jet jet_mul(const Jet& a, const Jet& b, int n) {
    Jet c{};
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) c[i + j] += a[i] * b[j];
    return c;
}

Jet jet_recip(const Jet& a, int n) {
    Jet r{};
    r[0] = 1.0 / a[0];
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= k; ++i) acc += a[i] * r[k - i];
        r[k] = -acc * r[0];
    }
    return r;
}

Jet jet_exp(const Jet& a, int n) {
    Jet e{};
    e[0] = std::exp(a[0]);
    if (e[0] == 0.0) return e;
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= k; ++i) acc += i * a[i] * e[k - i];
        e[k] = acc / k;
    }
    return e;
}

}  // namespace

SmoothStep::SmoothStep(double u0, double width, bool descending)
    : u0_(u0), width_(width), descending_(descending) {
    if (!(width > 0.0)) throw ArgumentError("step width must be positive");
}

double SmoothStep::value(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double d = 1.0 / x - 1.0 / (1.0 - x);
    return 1.0 / (1.0 + std::exp(d));
}

double SmoothStep::derivative(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    double a = 1.0 / x, b = 1.0 / (1.0 - x);
    double c = std::cosh(a - b);
    if (!std::isfinite(c)) return 0.0;
    return (a * a + b * b) / (2.0 + 2.0 * c);
}

double SmoothStep::derivative(double x, int n) {
    if (n < 0 || n > kJet) throw ArgumentError("smooth step derivatives are available up to order 8");
    if (n == 0) return value(x);
    if (x <= 0.0 || x >= 1.0) return 0.0;
    // g = 1/x - 1/(1-x); value = 1/(1 + e^g) = w/(1 + w) with w = e^(-g) when g > 0
    Jet xs{}, ys{};
    xs[0] = x;
    xs[1] = 1.0;
    ys[0] = 1.0 - x;
    ys[1] = -1.0;
    Jet ix = jet_recip(xs, n), iy = jet_recip(ys, n);
    Jet g{};
    for (int i = 0; i <= n; ++i) g[i] = ix[i] - iy[i];
    bool flip = g[0] > 0.0;
    if (flip)
        for (auto& c : g) c = -c;
    Jet w = jet_exp(g, n);
    if (w[0] == 0.0) return 0.0;
    Jet one_plus = w;
    one_plus[0] += 1.0;
    Jet v = flip ? jet_mul(w, jet_recip(one_plus, n), n) : jet_recip(one_plus, n);
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    double d = v[n] * fact;
    return std::isfinite(d) ? d : 0.0;
}

cplx SmoothStep::at(double u) const {
    double v = value((u - u0_) / width_);
    return descending_ ? 1.0 - v : v;
}

std::vector<double> SmoothStep::kinks() const { return {u0_, u0_ + width_}; }

RadialFunctionPtr SmoothStep::euler() const {
    return std::make_shared<SmoothStepDerivative>(u0_, width_, descending_);
}

// ---------------------------------------------------------------- Product / Sum / Scaled / Dilated

Product::Product(std::vector<RadialFunctionPtr> factors) : f_(std::move(factors)) {
    if (f_.empty()) throw ArgumentError("empty product");
}

cplx Product::at(double u) const {
    // zero factors first
    std::vector<cplx> v(f_.size());
    for (std::size_t i = 0; i < f_.size(); ++i) {
        v[i] = f_[i]->at(u);
        if (v[i] == cplx(0.0)) return 0.0;
    }
    cplx acc = 1.0;
    for (const auto& x : v) acc *= x;
    return acc;
}

RadialFunctionPtr Product::euler() const {
    std::vector<RadialFunctionPtr> terms;
    for (std::size_t i = 0; i < f_.size(); ++i) {
        auto d = f_[i]->euler();
        if (!d) return nullptr;
        auto factors = f_;
        factors[i] = d;
        terms.push_back(std::make_shared<Product>(std::move(factors)));
    }
    if (terms.size() == 1) return terms.front();
    return std::make_shared<Sum>(std::move(terms), "E " + label());
}

bool Product::is_real() const {
    return std::all_of(f_.begin(), f_.end(), [](const auto& f) { return f->is_real(); });
}

std::string Product::label() const {
    std::string s;
    for (const auto& f : f_) s += (s.empty() ? "" : "*") + f->label();
    return s;
}

std::vector<double> Product::kinks() const {
    std::vector<double> k;
    for (const auto& f : f_) {
        auto kf = f->kinks();
        k.insert(k.end(), kf.begin(), kf.end());
    }
    return k;
}

Sum::Sum(std::vector<RadialFunctionPtr> terms, std::string label) : t_(std::move(terms)), label_(std::move(label)) {}

cplx Sum::at(double u) const {
    cplx acc = 0.0;
    for (const auto& t : t_) acc += t->at(u);
    return acc;
}

RadialFunctionPtr Sum::euler() const {
    std::vector<RadialFunctionPtr> d;
    for (const auto& t : t_) {
        auto e = t->euler();
        if (!e) return nullptr;
        d.push_back(e);
    }
    return std::make_shared<Sum>(std::move(d), "E " + label());
}

bool Sum::is_real() const {
    return std::all_of(t_.begin(), t_.end(), [](const auto& f) { return f->is_real(); });
}

std::string Sum::label() const {
    if (!label_.empty()) return label_;
    std::string s;
    for (const auto& f : t_) s += (s.empty() ? "" : "+") + f->label();
    return s;
}

std::vector<double> Sum::kinks() const {
    std::vector<double> k;
    for (const auto& f : t_) {
        auto kf = f->kinks();
        k.insert(k.end(), kf.begin(), kf.end());
    }
    return k;
}

Scaled::Scaled(cplx c, RadialFunctionPtr f) : c_(c), f_(std::move(f)) {}

RadialFunctionPtr Scaled::euler() const {
    auto d = f_->euler();
    return d ? std::make_shared<Scaled>(c_, d) : nullptr;
}

Dilated::Dilated(RadialFunctionPtr f, double lambda) : f_(std::move(f)), lambda_(lambda) {
    if (!(lambda > 0.0)) throw ArgumentError("dilation factor must be positive");
    shift_ = std::log(lambda);
}

RadialFunctionPtr Dilated::euler() const {
    auto d = f_->euler();
    return d ? std::make_shared<Dilated>(d, lambda_) : nullptr;
}

std::vector<double> Dilated::kinks() const {
    auto k = f_->kinks();
    for (auto& v : k) v -= shift_;
    return k;
}

}  // namespace hgineq
