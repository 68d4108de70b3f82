#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hgineq/errors.hpp"
#include "hgineq/profiles.hpp"
#include "hgineq/quadrature.hpp"

using namespace hgineq;

namespace {

constexpr double pi = std::numbers::pi;

// exp(-r^s) written in log radius
class StretchedExp final : public RadialFunction {
public:
    explicit StretchedExp(double s) : s_(s) {}
    cplx at(double u) const override { return std::exp(-std::exp(s_ * u)); }
    std::string label() const override { return "stretched_exp"; }

private:
    double s_;
};

RadialFunctionPtr poly_times_gauss(std::vector<cplx> poly) {
    return std::make_shared<ExpPoly>(
        std::vector<ExpPoly::Term>{{Polynomial(std::move(poly)), Polynomial({0.0, 0.0, -1.0})}}, "poly_gauss");
}

double pooled(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

TEST_CASE("radial integrals against Gamma moments") {
    LogGrid grid(-30, 5, 4096);
    auto g4 = HomogeneousGroup::euclidean(4);
    auto v = radial_integral(g4, RadialProfile::sample(grid, std::make_shared<StretchedExp>(1.0), false));
    CHECK(std::abs(v.real() - 6.0) <= 1e-9 * 6.0);
    CHECK(std::abs(v.imag()) == 0.0);

    auto g3 = HomogeneousGroup::euclidean(3);
    auto w = radial_integral(g3, RadialProfile::sample(grid, std::make_shared<StretchedExp>(2.0), false));
    CHECK(std::abs(w.real() - 0.5 * std::tgamma(1.5)) <= 1e-10);

    RadialProfile zero(grid, std::vector<cplx>(grid.size(), 0.0));
    CHECK(radial_integral(g3, zero) == cplx(0.0));

    // integrand r^(Q) e^(-r) truncated at r = e^5 does not decay at the upper end for r^10
    auto slow = std::make_shared<ExpPoly>(
        std::vector<ExpPoly::Term>{{Polynomial::constant(1.0), Polynomial({0.0, -1.0})}}, "slow");
    CHECK_THROWS_AS(radial_integral(HomogeneousGroup::euclidean(1), RadialProfile::sample(grid, slow, false)),
                    AccuracyError);
}

TEST_CASE("weighted norms") {
    auto g = HomogeneousGroup::euclidean(4);
    LogGrid grid(-20, 20, 4096);
    auto phi = RadialProfile::sample(grid, make_profile("gauss_log"));
    WeightSpec w;
    w.p = 2.0;
    w.alpha = 1.0;
    CHECK(std::abs(weighted_lp_norm(g, phi, w) - std::sqrt(std::sqrt(pi / 2) * std::exp(0.5))) <= 1e-12);
    w.sphere_mass = 2.0 * pi * pi;
    CHECK(weighted_lp_norm(g, phi, w) ==
          doctest::Approx(std::sqrt(2.0 * pi * pi * std::sqrt(pi / 2) * std::exp(0.5))).epsilon(1e-12));

    // unit weight is the plain norm
    WeightSpec plain;
    plain.p = 3.0;
    CHECK(weighted_lp_power(g, phi, plain) == doctest::Approx(lp_power_auto(4.0, phi, 3.0, 0.0)).epsilon(1e-12));
}

TEST_CASE("log weights reduce to |u| powers when c = 1") {
    auto g = HomogeneousGroup::euclidean(3);
    LogGrid grid(-20, 20, 8192);
    auto f = make_profile("two_gauss");
    auto phi = RadialProfile::sample(grid, f);
    WeightSpec w;
    w.p = 2.0;
    w.alpha = 0.5;
    w.R = 1.0;
    w.e_shift = false;
    w.log_active = true;
    w.lambda1 = 0.5;
    double de = weighted_lp_power(g, phi, w);
    // same integral in u with a break point at the kink of |u|
    double u_space = power_integral_de(3.0, [&](double u) { return f->at(u); }, 2.0, 0.5, 1.0, {});
    CHECK(de == doctest::Approx(u_space).epsilon(1e-10));
    // the trapezoid rule is only second order across the kink
    double grid_value = lp_power_grid(3.0, phi, 2.0, 0.5, 1.0);
    CHECK(de == doctest::Approx(grid_value).epsilon(1e-5));

    w.lambda1 = -0.6;  // lambda1 p + 1 < 0: not integrable at r = c
    CHECK_THROWS_AS(weighted_lp_power(g, phi, w), DomainError);
    w.lambda1 = -0.5;
    w.loglog_active = true;
    w.lambda2 = -0.4;  // lambda1 p + 1 = 0 needs lambda2 p < -1
    CHECK_THROWS_AS(weighted_lp_power(g, phi, w), DomainError);
    w.lambda2 = -0.6;  // lambda2 p = -1.2 is allowed only for functions vanishing at |log| = 1
    CHECK_THROWS_AS(w.validate(), DomainError);
    w.vanishes_at_unit_log = true;
    CHECK_NOTHROW(w.validate());
}

TEST_CASE("break-point quadrature for p != 2") {
    // int |u|^3 e^(-3u^2) du = 1/9
    LogGrid grid(-20, 20, 4096);
    auto phi = RadialProfile::sample(grid, poly_times_gauss({0.0, 1.0}));
    CHECK(lp_power_auto(3.0, phi, 3.0, 1.0) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
    // int |u^2 - 1|^1.5 e^(-1.5 u^2) du against the fine-grid trapezoid: the sign changes at +-1 are found
    auto f = poly_times_gauss({-1.0, 0.0, 1.0});
    auto zeros = sign_change_points([&](double u) { return f->at(u).real(); }, LogGrid(-10, 10, 1024));
    REQUIRE(zeros.size() == 2);
    CHECK(zeros[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(zeros[1] == doctest::Approx(1.0).epsilon(1e-14));
    double de = lp_power_auto(2.0, RadialProfile::sample(grid, f), 1.5, 2.0 / 1.5);
    LogGrid fine(-20, 20, 1 << 18);
    double tr = lp_power_grid(2.0, RadialProfile::sample(fine, f), 1.5, 2.0 / 1.5);
    CHECK(de == doctest::Approx(tr).epsilon(1e-7));
}

TEST_CASE("I_p kernel") {
    for (double p : {1.5, 2.0, 3.0, 4.5}) CHECK(ip_kernel(1.0, 1.0, p) == doctest::Approx((p - 1) / 2).epsilon(1e-14));
    CHECK(ip_kernel(0.3, -2.0, 2.0) == 0.5);
    CHECK(ip_kernel(1.0, 0.0, 3.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(ip_kernel(1.0, 2.0, 3.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
    CHECK(ip_kernel(2.0, 1.0, 3.0) == doctest::Approx(5.0 / 3.0).epsilon(1e-13));
    // crossing zero at xi = 1/2 with an integrable singularity
    CHECK(ip_kernel(1.0, -1.0, 1.5) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_THROWS_AS(ip_kernel(1.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(ip_kernel(0.0, 0.0, 1.5), DomainError);

    // closed forms in s = xi h + (1 - xi) g:
    // int_0^1 |s|^(p-2) d xi = (F(h) - F(g))/(h - g), F(s) = sgn(s)|s|^(p-1)/(p-1)
    // I_p(h, g) = (p-1)/(h-g)^2 [(|h|^p - |g|^p)/p - g (F(h) - F(g))]
    auto F = [](double s, double p) { return std::copysign(std::pow(std::abs(s), p - 1), s) / (p - 1); };
    std::vector<std::pair<double, double>> pairs{{1.0, 2.0}, {-0.7, 1.3}, {2.5, -0.1}, {0.4, 0.0}};
    for (double p : {1.3, 1.8, 2.7, 3.5}) {
        for (auto [h, g] : pairs) {
            double dF = F(h, p) - F(g, p);
            double expect = (p - 1) / ((h - g) * (h - g)) *
                            ((std::pow(std::abs(h), p) - std::pow(std::abs(g), p)) / p - g * dF);
            CHECK(ip_kernel(h, g, p) == doctest::Approx(expect).epsilon(1e-10));
            double sum = ip_kernel(h, g, p) + ip_kernel(g, h, p);
            CHECK(sum == doctest::Approx((p - 1) * dF / (h - g)).epsilon(1e-10));
        }
    }
    std::vector<double> hs{1.0, 1.0, 2.0}, gs{1.0, 0.0, 1.0};
    auto v = ip_kernel(hs, gs, 3.0);
    CHECK(v[1] == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(ip_kernel(std::span<const double>(hs), std::span<const double>(gs).first(2), 3.0), ArgumentError);
}

TEST_CASE("angular representation of |z|^p") {
    for (double p : {1.2, 2.0, 3.3})
        for (cplx z : {cplx(1, 0), cplx(-0.3, 2.0), cplx(0, -5), cplx(1e-3, 1e-3)})
            CHECK(davies_identity_residual(z, p) <= 1e-8);
}

TEST_CASE("sphere measure by Monte Carlo") {
    auto one = [](std::span<const double>) { return 1.0; };
    auto zero = [](std::span<const double>) { return 0.0; };
    auto r2 = HomogeneousGroup::euclidean(2);
    auto s = sphere_integral_mc(r2, one, 200000, 7);
    CHECK(s.std_error > 0.0);
    CHECK(s.samples == 200000);
    CHECK(std::abs(s.value - 2 * pi) <= 3 * s.std_error);
    auto z = sphere_integral_mc(r2, zero, 1000, 7);
    CHECK(z.value == 0.0);

    auto h = HomogeneousGroup::heisenberg();
    auto a = sphere_integral_mc(h, one, 200000, 1);
    auto b = sphere_integral_mc(h, one, 200000, 2);
    CHECK(std::abs(a.value - b.value) <= 3 * pooled(a.std_error, b.std_error));

    // identical results independent of the thread count
    auto j1 = sphere_integral_mc(h, one, 100000, 5, 1.0, 2.0, 1);
    auto j4 = sphere_integral_mc(h, one, 100000, 5, 1.0, 2.0, 4);
    CHECK(j1.value == j4.value);
    CHECK(j1.std_error == j4.std_error);

    CHECK_THROWS_AS(sphere_integral_mc(r2, one, 1000, 7, 2.0, 1.0), ArgumentError);
}

TEST_CASE("polar decomposition: factorized against direct integration") {
    LogGrid grid(-20, 20, 4096);
    auto r2 = HomogeneousGroup::euclidean(2);
    auto gauss = RadialProfile::sample(grid, std::make_shared<StretchedExp>(2.0), false);
    auto one = [](std::span<const double>) { return 1.0; };
    auto sep = separable_group_integral(r2, gauss, one, 200000, 3);
    CHECK(std::abs(sep.value - pi) <= 3 * sep.std_error);

    // radial factors decaying fast in r keep the direct sampling box tight
    auto tilt = [](std::span<const double> y) { return 1.0 + 0.5 * y[0]; };
    std::vector<RadialFunctionPtr> radial{std::make_shared<StretchedExp>(2.0), Bump::on_radii(0.2, 0.8)};
    for (const auto& g : standard_groups()) {
        for (const auto& rf : radial) {
            auto phi = RadialProfile::sample(grid, rf, false);
            auto f = separable_group_integral(g, phi, tilt, 200000, 11);
            auto d = direct_group_integral_mc(g, phi, tilt, 200000, 11);
            INFO(g.name() << " " << rf->label());
            CHECK(std::abs(f.value - d.value) <= 3 * pooled(f.std_error, d.std_error));
        }
    }
}

TEST_CASE("dilation scaling of norms") {
    LogGrid grid(-20, 20, 4096);
    for (const auto& g : standard_groups()) {
        double Q = g.Q();
        auto f = make_profile("poly_gauss");
        for (double lambda : {0.25, 4.0}) {
            auto fl = std::make_shared<Dilated>(f, lambda);
            for (double p : {1.5, 2.0, 3.0}) {
                double n = std::pow(lp_power_auto(Q, RadialProfile::sample(grid, f), p, 0.0), 1 / p);
                double nl = std::pow(lp_power_auto(Q, RadialProfile::sample(grid, fl), p, 0.0), 1 / p);
                CHECK(std::abs(nl - std::pow(lambda, -Q / p) * n) <= 1e-8 * nl);
            }
            // ||f||_p / ||E f||_q scales as lambda^(Q/q - Q/p)
            double p = 2.0, q = 3.0;
            auto ratio = [&](RadialFunctionPtr h) {
                auto prof = RadialProfile::sample(grid, h);
                return std::pow(lp_power_auto(Q, prof, p, 0.0), 1 / p) /
                       std::pow(lp_power_auto(Q, RadialProfile::sample(grid, h->euler()), q, 0.0), 1 / q);
            };
            double r0 = ratio(f), r1 = ratio(fl);
            CHECK(std::abs(r1 / r0 - std::pow(lambda, Q / q - Q / p)) <= 1e-8 * std::pow(lambda, Q / q - Q / p));
        }
    }
}
