#include "hgineq/profiles.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "hgineq/errors.hpp"
#include "hgineq/rng.hpp"

namespace hgineq {

namespace {

using Term = ExpPoly::Term;

RadialFunctionPtr exppoly(std::vector<Term> terms, const std::string& name) {
    return std::make_shared<ExpPoly>(std::move(terms), name);
}

// exp(-a (u - u0)^2 + i kappa u)
Polynomial gauss_exponent(double a, double u0, double kappa = 0.0) {
    return Polynomial({cplx(-a * u0 * u0, 0.0), cplx(2.0 * a * u0, kappa), cplx(-a, 0.0)});
}

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

void check_keys(const std::string& name, const std::map<std::string, double>& p,
                std::initializer_list<const char*> allowed) {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : p)
        if (!ok.count(k)) throw ConfigurationError("profile '" + name + "': unknown parameter '" + k + "'");
}

}  // namespace

RadialFunctionPtr make_profile(const std::string& name, const std::map<std::string, double>& p) {
    if (name == "gauss_log") {
        check_keys(name, p, {"a", "u0"});
        double a = param(p, "a", 1.0);
        if (!(a > 0.0)) throw ConfigurationError("profile 'gauss_log': a must be positive");
        return exppoly({{Polynomial::constant(1.0), gauss_exponent(a, param(p, "u0", 0.0))}}, name);
    }
    if (name == "shifted_gauss") {
        check_keys(name, p, {});
        return exppoly({{Polynomial::constant(1.0), gauss_exponent(2.0, 0.7)}}, name);
    }
    if (name == "two_gauss") {
        check_keys(name, p, {});
        return exppoly({{Polynomial::constant(1.0), gauss_exponent(1.0, -1.0)},
                        {Polynomial::constant(0.5), gauss_exponent(3.0, 1.2)}},
                       name);
    }
    if (name == "poly_gauss") {
        check_keys(name, p, {});
        return exppoly({{Polynomial({1.0, 0.5, 0.5}), gauss_exponent(0.5, 0.0)}}, name);
    }
    if (name == "quartic_exp") {
        check_keys(name, p, {});
        return exppoly({{Polynomial::constant(1.0), Polynomial({0.0, 1.0, 0.0, 0.0, -0.25})}}, name);
    }
    if (name == "bump") {
        check_keys(name, p, {"r_lo", "r_hi"});
        auto b = Bump::on_radii(param(p, "r_lo", 0.2), param(p, "r_hi", 0.8));
        return b;
    }
    if (name == "complex_gauss") {
        check_keys(name, p, {"a", "u0", "kappa"});
        double a = param(p, "a", 1.0);
        if (!(a > 0.0)) throw ConfigurationError("profile 'complex_gauss': a must be positive");
        return exppoly({{Polynomial::constant(1.0), gauss_exponent(a, param(p, "u0", 0.0), param(p, "kappa", 1.5))}},
                       name);
    }
    throw ConfigurationError("unknown profile '" + name + "'");
}

std::vector<std::string> builtin_profile_names() {
    return {"gauss_log", "shifted_gauss", "two_gauss", "poly_gauss", "quartic_exp", "bump", "complex_gauss"};
}

std::vector<NamedProfile> standard_battery() {
    std::vector<NamedProfile> out;
    for (const char* n : {"gauss_log", "shifted_gauss", "two_gauss", "poly_gauss", "quartic_exp"})
        out.push_back({n, make_profile(n)});
    return out;
}

std::vector<NamedProfile> complex_battery() {
    return {
        {"complex_gauss", make_profile("complex_gauss")},
        {"complex_two_gauss", exppoly({{Polynomial::constant(cplx(1.0, 0.5)), gauss_exponent(1.0, -0.5, 2.0)},
                                       {Polynomial::constant(cplx(-0.3, 0.8)), gauss_exponent(2.0, 1.0, -1.0)}},
                                      "complex_two_gauss")},
        {"complex_poly_gauss", exppoly({{Polynomial({cplx(1.0, 0.0), cplx(0.0, 0.7)}), gauss_exponent(0.8, 0.3, 0.9)}},
                                       "complex_poly_gauss")},
    };
}

std::vector<HomogeneousGroup> standard_groups() {
    return {HomogeneousGroup::euclidean(3),
            HomogeneousGroup({1.0, 2.0}, QuasiNormSpec::power(), std::nullopt, "anisotropic_1_2"),
            HomogeneousGroup::heisenberg()};
}

RadialFunctionPtr random_profile(std::uint64_t seed, std::uint64_t index, bool real_valued) {
    CounterRng rng(seed, index);
    int terms = 1 + static_cast<int>(rng.next() % 3);
    std::vector<Term> t;
    for (int i = 0; i < terms; ++i) {
        double a = rng.uniform(0.5, 3.0);
        double u0 = rng.uniform(-3.0, 3.0);
        double kappa = real_valued ? 0.0 : rng.uniform(-3.0, 3.0);
        double mag = rng.uniform(0.2, 2.0);
        double phase = real_valued ? (rng.uniform() < 0.5 ? 0.0 : std::numbers::pi) : rng.uniform(0.0, 2 * std::numbers::pi);
        t.push_back({Polynomial::constant(std::polar(mag, phase)), gauss_exponent(a, u0, kappa)});
    }
    return exppoly(std::move(t), "random_" + std::to_string(index));
}

double numerical_support_radius(const RadialProfile& phi, double rel_tol) {
    const auto& v = phi.values();
    double m = phi.max_abs();
    if (m == 0.0) return 0.0;
    int j = phi.grid().size() - 1;
    while (j > 0 && std::abs(v[j]) <= rel_tol * m) --j;
    return std::exp(phi.grid().node(std::min(j + 1, phi.grid().size() - 1)));
}

}  // namespace hgineq
