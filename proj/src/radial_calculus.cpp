#include "hgineq/radial_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>

#include "hgineq/errors.hpp"
#include "hgineq/fft.hpp"

namespace hgineq {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

// ---------------------------------------------------------------- LogGrid

LogGrid::LogGrid(double u_min, double u_max, int n) : u_min_(u_min), u_max_(u_max), n_(n) {
    if (!(u_min < u_max) || !std::isfinite(u_min) || !std::isfinite(u_max))
        throw ArgumentError("log grid needs finite u_min < u_max");
    if (n < 16 || !is_power_of_two(n)) throw ArgumentError("log grid size must be a power of two >= 16");
}

double LogGrid::radius(int j) const { return std::exp(node(j)); }

LogGrid LogGrid::refined() const {
    double c = 0.5 * (u_min_ + u_max_), half = 0.5 * (u_max_ - u_min_) * 1.25;
    return LogGrid(c - half, c + half, 2 * n_);
}

LogGrid LogGrid::with_spacing(double u_min, double u_max, double h_max, int n_cap) {
    int n = 16;
    while ((u_max - u_min) / n > h_max && n < n_cap) n *= 2;
    return LogGrid(u_min, u_max, n);
}

double fft_frequency(int j, int n, double h) {
    int k = j <= n / 2 ? j : j - n;
    return kTwoPi * k / (n * h);
}

// ---------------------------------------------------------------- RadialProfile

RadialProfile::RadialProfile(LogGrid grid, std::vector<cplx> values, RadialFunctionPtr closed_form)
    : grid_(grid), values_(std::move(values)), closed_(std::move(closed_form)) {
    if (static_cast<int>(values_.size()) != grid_.size())
        throw ArgumentError("profile sample count does not match the grid");
}

RadialProfile RadialProfile::sample(const LogGrid& grid, RadialFunctionPtr f, bool check_support) {
    if (!f) throw ArgumentError("null radial function");
    std::vector<cplx> v(static_cast<std::size_t>(grid.size()));
    for (int j = 0; j < grid.size(); ++j) v[j] = f->at(grid.node(j));
    RadialProfile p(grid, std::move(v), std::move(f));
    if (check_support) p.require_support("sampling " + p.label());
    return p;
}

std::string RadialProfile::label() const { return closed_ ? closed_->label() : "grid_profile"; }

bool RadialProfile::is_real() const {
    if (closed_) return closed_->is_real();
    return std::all_of(values_.begin(), values_.end(), [](cplx v) { return v.imag() == 0.0; });
}

double RadialProfile::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool RadialProfile::support_inside(double rel_tol) const {
    double m = max_abs();
    if (m == 0.0) return true;
    int n = grid_.size();
    for (int j : {0, 1, n - 2, n - 1})
        if (std::abs(values_[j]) > rel_tol * m) return false;
    return true;
}

void RadialProfile::require_support(const std::string& context) const {
    if (!support_inside()) {
        std::ostringstream os;
        os << context << ": profile support reaches the grid boundary [" << grid_.u_min() << ", " << grid_.u_max()
           << "] in log radius";
        throw AccuracyError(os.str());
    }
}

RadialProfile RadialProfile::resampled(const LogGrid& grid) const {
    if (closed_) return sample(grid, closed_, false);
    std::vector<cplx> v(static_cast<std::size_t>(grid.size()));
    for (int j = 0; j < grid.size(); ++j) v[j] = interpolate(grid.node(j));
    return RadialProfile(grid, std::move(v));
}

cplx RadialProfile::interpolate(double u) const {
    // Outside the sampled window the periodic extension is meaningless; support is assumed inside.
    if (u < grid_.u_min() || u > grid_.u_max()) return 0.0;
    int n = grid_.size();
    std::vector<cplx> c = values_;
    fft_forward(c);
    double x = (u - grid_.u_min()) / (n * grid_.h());
    cplx z = std::polar(1.0, kTwoPi * x);
    cplx zk = 1.0;
    cplx acc = c[0];
    for (int k = 1; k < n / 2; ++k) {
        zk *= z;
        acc += c[k] * zk + c[n - k] * std::conj(zk);
    }
    zk *= z;
    acc += c[n / 2] * zk.real();
    return acc / static_cast<double>(n);
}

cplx RadialProfile::eval(double u) const { return closed_ ? closed_->at(u) : interpolate(u); }

RadialProfile RadialProfile::scaled(cplx c) const {
    std::vector<cplx> v = values_;
    for (auto& x : v) x *= c;
    RadialFunctionPtr f = closed_ ? std::make_shared<Scaled>(c, closed_) : nullptr;
    return RadialProfile(grid_, std::move(v), f);
}

// ---------------------------------------------------------------- OperatorSymbol

std::complex<double> OperatorSymbol::operator()(double xi, double Q) const {
    double a = xi * xi + 0.25 * Q * Q;
    switch (kind) {
        case Kind::Euler: return std::pow(std::complex<double>(-0.5 * Q, xi), power);
        case Kind::EulerAdjoint: return std::pow(std::complex<double>(-0.5 * Q, -xi), power);
        case Kind::A: return a;
        case Kind::Resolvent: return 1.0 / (lambda + a);
        case Kind::Fractional: return std::exp(0.5 * beta * std::log(a));
    }
    return 0.0;
}

std::string OperatorSymbol::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Euler: os << "euler"; if (power != 1) os << "^" << power; break;
        case Kind::EulerAdjoint: os << "euler_adjoint"; break;
        case Kind::A: os << "A"; break;
        case Kind::Resolvent: os << "resolvent(lambda=" << lambda << ")"; break;
        case Kind::Fractional: os << "fractional(beta=" << beta.real() << "+" << beta.imag() << "i)"; break;
    }
    return os.str();
}

// ---------------------------------------------------------------- Euler calculus

RadialProfile spectral_derivative(const RadialProfile& phi, int k) {
    if (k < 0) throw ArgumentError("derivative order must be non-negative");
    const LogGrid& g = phi.grid();
    phi.require_support("spectral differentiation of " + phi.label());
    int n = g.size();
    std::vector<cplx> c = phi.values();
    fft_forward(c);
    for (int j = 0; j < n; ++j) {
        if (j == n / 2) {
            c[j] = 0.0;
            continue;
        }
        cplx m = std::pow(cplx(0.0, fft_frequency(j, n, g.h())), k);
        c[j] *= m;
    }
    fft_inverse(c);
    if (phi.is_real())
        for (auto& v : c) v = v.real();
    return RadialProfile(g, std::move(c));
}

RadialProfile fd4_derivative(const RadialProfile& phi) {
    const auto& f = phi.values();
    const LogGrid& g = phi.grid();
    int n = g.size();
    double s = 1.0 / (12.0 * g.h());
    std::vector<cplx> d(static_cast<std::size_t>(n));
    for (int j = 2; j < n - 2; ++j) d[j] = (-f[j + 2] + 8.0 * f[j + 1] - 8.0 * f[j - 1] + f[j - 2]) * s;
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * s;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * s;
    d[n - 1] = -(-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] - 3.0 * f[n - 5]) * s;
    d[n - 2] = -(-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] + f[n - 5]) * s;
    return RadialProfile(g, std::move(d));
}

RadialProfile euler_apply(const HomogeneousGroup& g, const RadialProfile& phi) {
    return euler_power(g, phi, 1);
}

RadialProfile euler_adjoint_apply(const HomogeneousGroup& g, const RadialProfile& phi) {
    RadialProfile e = euler_apply(g, phi);
    double Q = g.Q();
    std::vector<cplx> v(phi.values().size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = -Q * phi.values()[j] - e.values()[j];
    RadialFunctionPtr closed;
    if (phi.closed_form() && e.closed_form()) {
        closed = std::make_shared<Sum>(
            std::vector<RadialFunctionPtr>{std::make_shared<Scaled>(-Q, phi.closed_form()),
                                           std::make_shared<Scaled>(-1.0, e.closed_form())},
            "E* " + phi.label());
    }
    return RadialProfile(phi.grid(), std::move(v), closed);
}

RadialProfile euler_power(const HomogeneousGroup& g, const RadialProfile& phi, int k) {
    if (k < 1) throw ArgumentError("Euler power must be at least 1");
    RadialFunctionPtr f = phi.closed_form();
    int done = 0;
    while (f && done < k) {
        auto d = f->euler();
        if (!d) break;
        f = d;
        ++done;
    }
    if (done == k) return RadialProfile::sample(phi.grid(), f, false);
    RadialProfile base = done == 0 ? phi : RadialProfile::sample(phi.grid(), f, false);
    // spectral in phi and in e^(Qu/2) phi; each node takes the frame with the smaller noise floor
    std::optional<RadialProfile> direct, conj;
    try {
        if (base.max_abs() > 1e150) throw AccuracyError("profile dynamic range too large for spectral differentiation");
        direct = spectral_derivative(base, k - done);
    } catch (const AccuracyError&) {
    }
    try {
        conj = multiplier_apply(g, base, OperatorSymbol::euler(k - done));
    } catch (const AccuracyError&) {
        if (!direct) throw;
    }
    if (!conj) return *direct;
    if (!direct) return *conj;
    const LogGrid& grid = base.grid();
    const double Q = g.Q();
    double m_phi = base.max_abs(), m_psi = 0.0;
    for (int j = 0; j < grid.size(); ++j)
        m_psi = std::max(m_psi, std::abs(base.values()[j]) * std::exp(0.5 * Q * grid.node(j)));
    std::vector<cplx> v = direct->values();
    for (int j = 0; j < grid.size(); ++j)
        if (m_psi * std::exp(-0.5 * Q * grid.node(j)) < m_phi) v[j] = conj->values()[j];
    return RadialProfile(grid, std::move(v));
}

RadialProfile multiplier_apply(const HomogeneousGroup& g, const RadialProfile& phi, const OperatorSymbol& sym) {
    if (sym.kind == OperatorSymbol::Kind::Resolvent && !(sym.lambda > 0.0))
        throw ArgumentError("resolvent parameter lambda must be positive");
    phi.require_support("multiplier " + sym.describe());
    const LogGrid& grid = phi.grid();
    int n = grid.size();
    double Q = g.Q();
    std::vector<cplx> psi(static_cast<std::size_t>(n));
    double mpsi = 0.0;
    for (int j = 0; j < n; ++j) {
        psi[j] = std::exp(0.5 * Q * grid.node(j)) * phi.values()[j];
        mpsi = std::max(mpsi, std::abs(psi[j]));
    }
    for (int j : {0, 1, n - 2, n - 1}) {
        if (std::abs(psi[j]) > 1e-14 * mpsi)
            throw AccuracyError("multiplier " + sym.describe() +
                                ": conjugated profile e^(Qu/2) phi reaches the grid boundary");
    }
    // zero-padded to twice the period
    std::vector<cplx> padded(static_cast<std::size_t>(2 * n), 0.0);
    std::copy(psi.begin(), psi.end(), padded.begin() + n / 2);
    fft_forward(padded);
    for (int j = 0; j < 2 * n; ++j) padded[j] *= sym(fft_frequency(j, 2 * n, grid.h()), Q);
    fft_inverse(padded);
    bool keeps_real = phi.is_real() && (sym.kind != OperatorSymbol::Kind::Fractional || sym.beta.imag() == 0.0);
    for (int j = 0; j < n; ++j) {
        psi[j] = padded[j + n / 2] * std::exp(-0.5 * Q * grid.node(j));
        if (keeps_real) psi[j] = psi[j].real();
    }
    return RadialProfile(grid, std::move(psi));
}

}  // namespace hgineq
