#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nodallab/plap.hpp"
#include "../oracles.hpp"

using namespace nodallab;
constexpr double pi = std::numbers::pi;

TEST_CASE("p = 2 reduces to the Laplacian") {
    const auto e = sinp_eigenpair(2.0, 1.0);
    CHECK(std::abs(e.lambda - pi * pi) < 1e-6);
    const auto& g = *e.profile.grid;
    for (std::size_t i = 0; i < g.size(); i += 101)
        CHECK(e.profile.values[i] == doctest::Approx(std::sqrt(2.0) * std::sin(pi * g.coords[i][0])).epsilon(1e-8).scale(1.0));
    CHECK(lp_norm(e.profile, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("interval eigenvalues match the sin_p closed form") {
    for (double p : {1.2, 1.5, 3.0, 5.0, 9.0})
        for (double L : {1.0, 2.5}) CHECK(sinp_eigenpair(p, L).lambda == doctest::Approx(oracle::sinp_lambda(p, L)).epsilon(1e-8));
}

TEST_CASE("shooting agrees with Rayleigh-quotient descent at p = 3") {
    CHECK(sinp_eigenpair(3.0, 1.0).lambda == doctest::Approx(oracle::descent_plap_lambda(3.0, 48)).epsilon(1e-3));
}

TEST_CASE("radial p = 2 gives j_0 squared and scales like R^-p") {
    const double j0 = oracle::bessel_first_zero(0);
    CHECK(radial_plap_eigenpair(2.0, 1.0).lambda == doctest::Approx(j0 * j0).epsilon(1e-8));
    for (double p : {1.5, 3.0}) {
        const double l1 = radial_plap_eigenpair(p, 1.0).lambda, l2 = radial_plap_eigenpair(p, 2.0).lambda;
        CHECK(l2 * std::pow(2.0, p) == doctest::Approx(l1).epsilon(1e-8));
    }
    CHECK(radial_plap_eigenpair(2.0, 1.0).domain_volume == doctest::Approx(pi));
}

TEST_CASE("Lindqvist bound holds with slack") {
    for (double p : {1.5, 2.0, 3.0, 5.0}) {
        const auto e = sinp_eigenpair(p, 1.0);
        const auto r = check_lindqvist(e, 1, 1.0);
        CHECK(r.pass);
        CHECK(r.rhs / r.lhs > 1.0);
        CHECK(r.constant == 4.0);
    }
    const auto r2 = check_lindqvist(radial_plap_eigenpair(2.0, 1.0), 2, pi);
    CHECK(r2.pass);
}

TEST_CASE("count bound and argument checks") {
    const auto c = count_bound_plap({3.0, 1.0, 0.5}, 0.9, 10.0, 1, 2.0, 1.0);
    CHECK(c.count == 2);
    CHECK(c.bound == doctest::Approx(4.0 / 0.9 * std::sqrt(10.0)).epsilon(1e-14));
    CHECK_THROWS_AS(sinp_eigenpair(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(sinp_eigenpair(11.0, 1.0), std::invalid_argument);
}
