#include <cmath>
#include <vector>

#include "doctest.h"
#include "hgineq/errors.hpp"
#include "hgineq/group_model.hpp"
#include "hgineq/rng.hpp"

using namespace hgineq;

TEST_CASE("dilate scales each coordinate by its weight") {
    auto h = HomogeneousGroup::heisenberg();
    std::vector<double> x{1, 1, 1};
    CHECK(h.dilate(2.0, x) == std::vector<double>{2, 2, 4});
    CHECK(h.dilate(1.0, x) == x);

    auto a = HomogeneousGroup::anisotropic({1, 2});
    std::vector<double> y{1, 1};
    CHECK(a.dilate(3.0, y) == std::vector<double>{3, 9});

    CHECK_THROWS_AS(h.dilate(0.0, x), ArgumentError);
    CHECK_THROWS_AS(h.dilate(-1.0, x), ArgumentError);
}

TEST_CASE("quasi-norm formulas") {
    auto h = HomogeneousGroup::heisenberg();
    CHECK(h.quasi_norm(std::vector<double>{1, 0, 0}) == doctest::Approx(1.0));
    CHECK(h.quasi_norm(std::vector<double>{0, 0, 0}) == 0.0);
    // ((1+4)^2 + 9)^(1/4)
    CHECK(h.quasi_norm(std::vector<double>{1, 2, 3}) == doctest::Approx(std::pow(34.0, 0.25)).epsilon(1e-15));

    auto a = HomogeneousGroup::anisotropic({1, 2}, 1.0);
    CHECK(a.quasi_norm(std::vector<double>{3, 4}) == doctest::Approx(std::sqrt(13.0)).epsilon(1e-15));

    auto e = HomogeneousGroup::euclidean(3);
    CHECK(e.quasi_norm(std::vector<double>{1, 2, 2}) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("homogeneity and symmetry on sampled points") {
    std::vector<HomogeneousGroup> groups{HomogeneousGroup::euclidean(3), HomogeneousGroup::heisenberg(),
                                         HomogeneousGroup::anisotropic({1, 2}),
                                         HomogeneousGroup::anisotropic({0.5, 1.5, 3.0}, 0.7)};
    CounterRng rng(7, 0);
    for (const auto& g : groups) {
        for (int i = 0; i < 1000; ++i) {
            std::vector<double> x(static_cast<std::size_t>(g.dimension()));
            for (auto& v : x) v = rng.uniform(-5.0, 5.0);
            double lambda = std::exp(rng.uniform(-4.0, 4.0));
            double n0 = g.quasi_norm(x);
            double n1 = g.quasi_norm(g.dilate(lambda, x));
            CHECK(std::abs(n1 - lambda * n0) <= 1e-12 * lambda * n0);
            std::vector<double> mx = x;
            for (auto& v : mx) v = -v;
            CHECK(g.quasi_norm(mx) == n0);
        }
    }
}

TEST_CASE("Q is recomputed and validated") {
    HomogeneousGroup g({1, 1, 2}, QuasiNormSpec::koranyi(), 4.0);
    CHECK(g.Q() == 4.0);
    CHECK_THROWS_AS(HomogeneousGroup({1, 1, 2}, QuasiNormSpec::koranyi(), 5.0), ConfigurationError);
    CHECK(HomogeneousGroup::anisotropic({0.5, 1.25}).Q() == doctest::Approx(1.75));
}

TEST_CASE("incompatible norm variants are rejected") {
    CHECK_THROWS_AS(HomogeneousGroup({1, 2}, QuasiNormSpec::euclidean()), ConfigurationError);
    CHECK_THROWS_AS(HomogeneousGroup({1, 1, 1}, QuasiNormSpec::koranyi()), ConfigurationError);
    CHECK_THROWS_AS(HomogeneousGroup({1, -1}, QuasiNormSpec::power()), ConfigurationError);
    CHECK_THROWS_AS(HomogeneousGroup({1, 2}, QuasiNormSpec::power(-1.0)), ConfigurationError);
    CHECK(HomogeneousGroup({1, 2}, QuasiNormSpec::power()).power_M() == 2.0);
}

TEST_CASE("projection lands on the unit sphere") {
    auto h = HomogeneousGroup::heisenberg();
    std::vector<double> x{0.3, -1.2, 2.5};
    auto y = h.project_to_sphere(x);
    CHECK(h.quasi_norm(y) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(h.project_to_sphere(std::vector<double>{0, 0, 0}), ArgumentError);
}
