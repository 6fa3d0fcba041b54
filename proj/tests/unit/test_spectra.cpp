#include <cmath>
#include <map>
#include <numbers>

#include "doctest.h"
#include "nodallab/spectra.hpp"
#include "../oracles.hpp"

using namespace nodallab;
constexpr double pi = std::numbers::pi;

TEST_CASE("rectangle eigenvalues are pi^2 (k^2/a^2 + l^2/b^2)") {
    auto d = DomainSpec::rectangle(1.0, 2.0);
    const auto modes = analytic_modes(d, 12);
    std::vector<double> want;
    for (int k = 1; k < 10; ++k)
        for (int l = 1; l < 20; ++l) want.push_back(pi * pi * (k * k + l * l / 4.0));
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 12; ++i) CHECK(modes[i].lambda == doctest::Approx(want[i]).epsilon(1e-14));
}

TEST_CASE("Neumann rectangle starts with the constant mode") {
    const auto modes = analytic_modes(DomainSpec::rectangle(pi, pi, BoundaryCondition::neumann), 4);
    CHECK(modes[0].lambda == 0.0);
    CHECK(modes[1].lambda == doctest::Approx(1.0));
    CHECK(modes[3].lambda == doctest::Approx(2.0));
}

TEST_CASE("sphere multiplicities and order") {
    const auto modes = analytic_modes(DomainSpec::sphere(), 25);
    std::map<int, int> mult;
    for (const auto& m : modes) mult[static_cast<int>(std::lround(m.lambda))]++;
    for (int l = 0; l <= 4; ++l) CHECK(mult[l * (l + 1)] == 2 * l + 1);
    CHECK(modes[4].label(DomainKind::sphere) == "Y2,0");
    CHECK(modes[5].label(DomainKind::sphere) == "Y2,1");
    CHECK(modes[6].label(DomainKind::sphere) == "Y2,-1");
}

TEST_CASE("disk eigenvalues are squared Bessel zeros") {
    const auto modes = analytic_modes(DomainSpec::disk(2.0), 6);
    const double j01 = oracle::bessel_first_zero(0), j11 = oracle::bessel_first_zero(1), j21 = oracle::bessel_first_zero(2);
    CHECK(modes[0].lambda == doctest::Approx(j01 * j01 / 4).epsilon(1e-11));
    CHECK(modes[1].lambda == doctest::Approx(j11 * j11 / 4).epsilon(1e-11));
    CHECK(modes[2].lambda == doctest::Approx(j11 * j11 / 4).epsilon(1e-11));
    CHECK(modes[3].lambda == doctest::Approx(j21 * j21 / 4).epsilon(1e-11));
}

TEST_CASE("torus spectrum of the 2 pi torus is sums of two squares") {
    const auto modes = analytic_modes(DomainSpec::torus({2 * pi, 2 * pi}), 9);
    const double want[] = {0, 1, 1, 1, 1, 2, 2, 2, 2};
    for (int i = 0; i < 9; ++i) CHECK(modes[i].lambda == doctest::Approx(want[i]).epsilon(1e-13));
}

TEST_CASE("sampled modes are discretely orthonormal") {
    for (auto d : {DomainSpec::rectangle(1.0, 1.0), DomainSpec::sphere(), DomainSpec::disk(1.0)}) {
        const auto s = analytic_spectrum(d, 8);
        for (int i = 0; i < 8; ++i) {
            CHECK(s[i].norm_l2 == doctest::Approx(1.0).epsilon(1e-12));
            for (int j = i + 1; j < 8; ++j) CHECK(std::abs(inner_product(s[i].field, s[j].field)) < 2e-3);
        }
    }
}

TEST_CASE("spherical harmonics have discrete mean zero") {
    const auto s = analytic_spectrum(DomainSpec::sphere(), 36);
    for (int i = 1; i < 36; ++i) CHECK(std::abs(discrete_mean(s[i].field)) < 1e-8);
}

TEST_CASE("sampled sphere harmonic has the zonal closed form") {
    auto d = DomainSpec::sphere();
    auto g = build_grid(d);
    const auto modes = analytic_modes(d, 9);
    const auto raw = sample_mode(d, *g, modes[4]);  // Y2,0
    for (std::size_t p = 0; p < g->size(); p += 997) {
        const double x = std::cos(g->coords[p][0]);
        CHECK(raw[p] == doctest::Approx(std::sqrt(5.0 / (4 * pi)) * 0.5 * (3 * x * x - 1)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("lp norms on a square") {
    auto d = DomainSpec::rectangle(1.0, 1.0);
    const auto e = analytic_spectrum(d, 1)[0];
    CHECK(lp_norm(e.field, infinity) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(lp_norm(e.field, 1.0) == doctest::Approx(8.0 / (pi * pi)).epsilon(1e-4));
    CHECK_THROWS_AS(lp_norm(e.field, 0.5), std::invalid_argument);
}

TEST_CASE("dense and Krylov solvers agree") {
    auto d = DomainSpec::masked_lshape(1.0 / 16.0, BoundaryCondition::dirichlet);
    auto g = build_grid(d);
    const auto a = lattice_laplacian(*g, BoundaryCondition::dirichlet);
    const auto dense = dense_lowest(a, 12);
    const auto kry = krylov_lowest(a, 12);
    for (int i = 0; i < 12; ++i) {
        CHECK(kry.values[i] == doctest::Approx(dense.values[i]).epsilon(1e-9));
        CHECK(kry.residuals[i] < 1e-7);
    }
}

TEST_CASE("FD square converges at second order to 2 pi^2") {
    const double exact = 2 * pi * pi;
    double err[2];
    int i = 0;
    for (double h : {1.0 / 32, 1.0 / 64}) {
        SolverInfo info;
        const auto s = fd_spectrum(DomainSpec::masked_rectangle(1, 1, h, BoundaryCondition::dirichlet), 4, &info);
        err[i++] = std::abs(s[0].lambda - exact);
        CHECK(info.max_residual < 1e-6);
        CHECK(s[1].lambda == doctest::Approx(s[2].lambda).epsilon(1e-8));
    }
    CHECK(err[0] / err[1] >= 3.5);
}

TEST_CASE("FD Neumann square has a zero eigenvalue") {
    const auto s = fd_spectrum(DomainSpec::masked_rectangle(1, 1, 1.0 / 32, BoundaryCondition::neumann), 3);
    CHECK(std::abs(s[0].lambda) < 1e-9);
    CHECK(s[1].lambda == doctest::Approx(pi * pi).epsilon(2e-3));
}

TEST_CASE("domain hashes are stable and distinguish specs") {
    CHECK(DomainSpec::rectangle(1, 1).hash() == DomainSpec::rectangle(1, 1).hash());
    CHECK(DomainSpec::rectangle(1, 1).hash() != DomainSpec::rectangle(1, 2).hash());
    CHECK(DomainSpec::rectangle(1, 1).hash().size() == 16);
    CHECK_THROWS_AS(DomainSpec::rectangle(-1, 1), std::invalid_argument);
}
