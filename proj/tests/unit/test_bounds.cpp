#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nodallab/bounds.hpp"
#include "../oracles.hpp"

using namespace nodallab;
constexpr double pi = std::numbers::pi;

TEST_CASE("Chiti constants in three dimensions reduce to closed forms") {
    // J_{1/2} = sqrt(2/(pi r)) sin r makes both integrals elementary
    CHECK(std::abs(chiti_constant(3, 2).value - 1.0 / (pi * std::sqrt(2.0))) < 1e-12);
    CHECK(std::abs(chiti_constant(3, 1).value - 1.0 / (4 * pi * pi)) < 1e-12);
    CHECK(chiti_constant(3, 2).quad_error < 1e-10);
}

TEST_CASE("Chiti constant in two dimensions against Simpson quadrature") {
    const double j = oracle::bessel_first_zero(0);
    for (double p : {1.0, 2.0, 3.0}) {
        const double I = oracle::simpson([&](double r) { return r * std::pow(std::cyl_bessel_j(0, r), p); }, 0, j, 20000);
        const double want = 1.0 / (std::pow(2 * pi, 1.0 / p) * std::pow(I, 1.0 / p));
        CHECK(chiti_constant(2, p).value == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("Sogge delta is continuous at the breakpoint") {
    for (int n = 2; n <= 6; ++n) {
        const double pc = 2.0 * (n + 1) / (n - 1);
        CHECK(sogge_breakpoint(n) == doctest::Approx(pc));
        CHECK(std::abs(sogge_delta(n, pc * (1 - 1e-13)) - sogge_delta(n, pc * (1 + 1e-13))) < 1e-12);
        CHECK(sogge_delta(n, 2.0) == doctest::Approx(0.0).scale(1.0));
        CHECK(sogge_delta(n, infinity) == doctest::Approx((n - 1) / 4.0));
    }
    CHECK_THROWS_AS(sogge_delta(2, 1.5), std::invalid_argument);
}

TEST_CASE("Smith-Sogge alpha is continuous and needs n >= 3") {
    for (int n = 3; n <= 6; ++n) {
        const double pc = smith_sogge_breakpoint(n);
        CHECK(std::abs(smith_sogge_alpha(n, pc * (1 - 1e-13)) - smith_sogge_alpha(n, pc * (1 + 1e-13))) < 1e-12);
    }
    CHECK_THROWS_AS(smith_sogge_alpha(2, 4.0), std::invalid_argument);
}

TEST_CASE("boundary exponent preconditions") {
    CHECK(boundary_exponent_applies(3, 5.0));
    CHECK_FALSE(boundary_exponent_applies(3, 4.0));
    CHECK(boundary_exponent_applies(4, 4.0));
    CHECK(boundary_manifold_exponent(3, 5.0) == doctest::Approx(1.5 + 7.5 * 0.3 - 1.25));
    CHECK_THROWS_AS(boundary_manifold_exponent(3, 4.0), std::invalid_argument);
}

TEST_CASE("Superlevel volume bound and Faber-Krahn constant") {
    CHECK(superlevel_volume_bound(3, 0.0, 1.0) == doctest::Approx(std::pow(2.0, 1.5) * 4 * pi / 3).epsilon(1e-14));
    CHECK(superlevel_volume_bound(3, 0.5, 4.0) == doctest::Approx(std::pow(0.5, 1.5) * std::pow(2.0, 1.5) * 4 * pi / 3 / 8).epsilon(1e-14));
    const double j0 = oracle::bessel_first_zero(0);
    CHECK(faber_krahn_constant(2) == doctest::Approx(j0 * j0 * pi).epsilon(1e-12));
    CHECK(faber_krahn_constant(3) == doctest::Approx(pi * pi * pi * 4 * pi / 3).epsilon(1e-12));
}

TEST_CASE("fit_scaling recovers a power law") {
    std::vector<double> l, v;
    for (int i = 1; i <= 10; ++i) {
        l.push_back(i * 3.0);
        v.push_back(2.5 * std::pow(i * 3.0, 0.75));
    }
    const auto f = fit_scaling(l, v);
    CHECK(f.slope == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(std::exp(f.intercept) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(f.stderr_slope < 1e-10);
    CHECK_THROWS_AS(fit_scaling({1, 2, 3}, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(fit_scaling({1, 2, 3, 3, 4}, {1, 2, 3, 4, 5}), std::invalid_argument);
}

TEST_CASE("upper envelope collapses repeated eigenvalues") {
    const auto f = fit_upper_envelope({1, 2, 2, 3, 4, 5}, {1, 1, 2, 3, 4, 5});
    CHECK(f.lambdas.size() == 5);
    CHECK(f.values[1] == 2.0);
}

TEST_CASE("report margin and tolerance") {
    const auto r = make_report("x", 1.0, 1.04, 1.0, 1.0, Provenance::explicit_constant, 0.05);
    CHECK(r.margin == doctest::Approx(-0.04));
    CHECK(r.pass);
    CHECK_FALSE(make_report("x", 1.0, 1.06, 1.0, 1.0, Provenance::explicit_constant, 0.05).pass);
    CHECK(to_string(Provenance::fitted) == "fitted");
}

TEST_CASE("Chiti inequality is an equality on the disk") {
    const auto e = analytic_spectrum(DomainSpec::disk(1.0), 1)[0];
    for (double p : {1.0, 2.0}) {
        const auto r = check_chiti_inequality(e, p);
        CHECK(r.lhs / r.rhs == doctest::Approx(1.0).epsilon(1e-6));
    }
    const auto sq = analytic_spectrum(DomainSpec::rectangle(1, 1), 1)[0];
    CHECK(check_chiti_inequality(sq, 1.0).lhs / check_chiti_inequality(sq, 1.0).rhs < 0.99);
}

TEST_CASE("extremal profile at the origin") {
    CHECK(extremal_z(2, 4.0, 0.0) == doctest::Approx(1.0));
    CHECK(extremal_z(3, 1.0, 0.0) == doctest::Approx(std::sqrt(2.0 / pi)).epsilon(1e-12));
    CHECK(extremal_z(2, 1.0, 1.0) == doctest::Approx(std::cyl_bessel_j(0, 1.0)).epsilon(1e-12));
}

TEST_CASE("explicit extrema sums on a square spectrum") {
    auto d = DomainSpec::rectangle(1.0, 1.0);
    d.points_per_axis = {128, 128};
    std::vector<NodalDecomposition> spec;
    for (const auto& e : analytic_spectrum(d, 20)) spec.push_back(decompose(e));
    const auto c1 = check_extrema_sums(spec, 1.0, 0, ExtremaMode::explicit_constant);
    const auto c2 = check_extrema_sums(spec, 2.0, 0, ExtremaMode::explicit_constant);
    CHECK(c1.pass);
    CHECK(c2.pass);
    CHECK(c1.rows.size() == 20);
    CHECK(c1.rows[0].id == "Thm1.8-P1");
    CHECK_THROWS_AS(check_extrema_sums(spec, 3.0, 0, ExtremaMode::explicit_constant), std::invalid_argument);
    for (const auto& nd : spec) {
        CHECK(check_cauchy_schwarz(nd).pass);
        CHECK(check_extrema_chain(nd, 2.0, 2).pass);
    }
}
