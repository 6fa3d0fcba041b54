#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nodallab/bounds.hpp"
#include "nodallab/plap.hpp"
#include "nodallab/rearrange.hpp"
#include "nodallab/specfun.hpp"
#include "../oracles.hpp"

using namespace nodallab;
constexpr double pi = std::numbers::pi;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<NodalDecomposition> decomposed(const std::vector<EigenPair>& s) {
    std::vector<NodalDecomposition> out;
    for (const auto& e : s) out.push_back(decompose(e));
    return out;
}

DomainSpec fd_square(double h) { return DomainSpec::masked_rectangle(1, 1, h, BoundaryCondition::dirichlet); }
DomainSpec fd_lshape(double h) { return DomainSpec::masked_lshape(h, BoundaryCondition::dirichlet); }

Outcome chiti_closed_forms() {
    // K = 2^{1-n/2} (n alpha_n)^{-1/p} / (Gamma(n/2) I^{1/p}) with I by Simpson on std::cyl_bessel_j
    auto oracle_k = [](double p) {
        const double I = oracle::simpson(
            [&](double r) { return r <= 0 ? 0.0 : std::pow(r, p - 1.5 * p + 2.0) * std::pow(std::cyl_bessel_j(0.5, r), p); },
            0.0, pi, 200000);
        return std::pow(2.0, -0.5) * std::pow(4 * pi, -1.0 / p) / (std::tgamma(1.5) * std::pow(I, 1.0 / p));
    };
    const double k2 = chiti_constant(3, 2).value, k1 = chiti_constant(3, 1).value;
    const double e2 = std::max(std::abs(k2 - oracle_k(2)), std::abs(k2 - 1 / (pi * std::sqrt(2.0))));
    const double e1 = std::max(std::abs(k1 - oracle_k(1)), std::abs(k1 - 1 / (4 * pi * pi)));
    return {e1 < 1e-8 && e2 < 1e-8, fmt("K3,2=%.12f err %.1e; K3,1=%.12f err %.1e", k2, e2, k1, e1)};
}

Outcome chiti_equality() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto disk = analytic_spectrum(DomainSpec::disk(1.0), 1)[0];
    const auto sq = analytic_spectrum(DomainSpec::rectangle(1.0, 1.0), 1)[0];
    bool ok = true;
    std::string d;
    for (double p : {1.0, 2.0}) {
        const auto rd = check_chiti_inequality(disk, p), rs = check_chiti_inequality(sq, p);
        const double qd = rd.lhs / rd.rhs, qs = rs.lhs / rs.rhs;
        ok = ok && qd >= 0.995 && qd <= 1.0 && qs <= 0.99;
        d += fmt("p=%g disk %.6f square %.6f; ", p, qd, qs);
    }
    const double t = seconds_since(t0);
    return {ok && t < 5.0, d + fmt("%.2f s", t)};
}

Outcome explicit_sums() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double worst1 = infinity, worst2 = infinity;
    int rows = 0;
    for (const auto& d : {fd_square(1.0 / 64), fd_lshape(1.0 / 64)}) {
        const auto spec = decomposed(compute_spectrum(d, 50));
        const auto c1 = check_extrema_sums(spec, 1.0, 0, ExtremaMode::explicit_constant, grid_slack);
        const auto c2 = check_extrema_sums(spec, 2.0, 0, ExtremaMode::explicit_constant, grid_slack);
        ok = ok && c1.pass && c2.pass && c1.rows.size() == 50 && c2.rows.size() == 50;
        for (const auto& r : c1.rows) worst1 = std::min(worst1, r.margin / r.rhs);
        for (const auto& r : c2.rows) worst2 = std::min(worst2, r.margin / r.rhs);
        rows += static_cast<int>(c1.rows.size() + c2.rows.size());
    }
    const double t = seconds_since(t0);
    return {ok && t < 90.0, fmt("%g rows, worst relative margin p=1 %.4f p=2 %.4f, %.1f s", rows, worst1, worst2, t)};
}

Outcome superlevel_lemma() {
    const std::vector<double> deltas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<double> exact_fraction;
    for (double dl : deltas) exact_fraction.push_back(oracle::triple_sine_superlevel_fraction(dl));
    bool ok = true;
    double worst_ratio = infinity;
    double err[2] = {0, 0};
    int modes_checked = 0;
    for (int pass = 0; pass < 2; ++pass) {
        auto d = DomainSpec::box(1, 1, 1);
        d.resolution = pass == 0 ? 64 : 128;
        const auto all = analytic_modes(d, 200);
        auto grid = build_grid(d);
        int index = 1;
        for (const auto& m : all) {
            if (m.lambda > 300.0) break;
            const auto nd = decompose(make_eigenpair(d, grid, m, index++));
            const auto s = superlevel_volumes(nd, deltas);
            const double cell = 1.0 / (m.q[0] * m.q[1] * m.q[2]);
            for (std::size_t k = 0; k < deltas.size(); ++k) {
                const double bound = superlevel_volume_bound(3, deltas[k], m.lambda);
                for (const auto& v : s.volumes) {
                    if (pass == 0) {
                        ok = ok && v[k] >= bound * (1 - grid_slack);
                        worst_ratio = std::min(worst_ratio, v[k] / bound);
                    }
                    err[pass] = std::max(err[pass], std::abs(v[k] - cell * exact_fraction[k]) / (cell * exact_fraction[k]));
                }
            }
            if (pass == 0) ++modes_checked;
        }
    }
    const bool halves = err[1] <= 0.5 * err[0];
    return {ok && halves && modes_checked > 0,
            fmt("%g modes, min volume/bound %.3f; volume error h=1/64 %.4f, h=1/128 %.4f", modes_checked, worst_ratio,
                err[0], err[1])};
}

Outcome torus_sharpness() {
    bool exact = true;
    std::vector<double> lambdas, sums;
    double worst = 0;
    for (int m = 1; m <= 10; ++m) {
        auto d = DomainSpec::torus({2 * pi, 2 * pi});
        const int pts = 4 * m * static_cast<int>(std::ceil(128.0 / (4.0 * m)));
        d.points_per_axis = {pts, pts};
        Mode mode;
        mode.lambda = 2.0 * m * m;
        mode.q = {m, m, 0};
        mode.variant = 3;
        const auto nd = decompose(make_eigenpair(d, build_grid(d), mode, m));
        // the unit-amplitude mode has L2 norm pi on this torus
        const double sum = extrema_power_sum(nd, 1.0) * pi;
        worst = std::max(worst, std::abs(sum - 4.0 * m * m) / (4.0 * m * m));
        exact = exact && nd.domains.size() == static_cast<std::size_t>(4 * m * m) && worst < 1e-9;
        lambdas.push_back(mode.lambda);
        sums.push_back(sum);
    }
    const auto f = fit_scaling(lambdas, sums);
    return {exact && std::abs(f.slope - 1.0) <= 0.02, fmt("max relative deviation from 4m^2 %.1e, slope %.6f", worst, f.slope)};
}

Outcome sogge_consistency() {
    double jump = 0;
    for (int n = 2; n <= 6; ++n) {
        const double pc = sogge_breakpoint(n);
        jump = std::max(jump, std::abs(sogge_delta(n, std::nextafter(pc, 0.0)) - sogge_delta(n, std::nextafter(pc, 1e9))));
    }
    const auto d = DomainSpec::sphere();
    const auto modes = analytic_modes(d, 13 * 13);
    auto grid = build_grid(d);
    std::vector<double> lambdas, sup;
    for (int l = 2; l <= 12; ++l) {
        const auto& m = modes[static_cast<std::size_t>(l * l)];
        if (m.q[0] != l || m.q[1] != 0) return {false, "zonal mode not at index l^2"};
        const auto e = make_eigenpair(d, grid, m, l * l + 1);
        lambdas.push_back(e.lambda);
        sup.push_back(lp_norm(e.field, infinity));
    }
    const auto f = fit_scaling(lambdas, sup);
    return {jump < 1e-12 && std::abs(f.slope - 0.25) <= 0.03,
            fmt("max jump %.1e; zonal sup-norm slope %.4f +- %.4f", jump, f.slope, f.stderr_slope)};
}

Outcome courant() {
    int total = 0, violations = 0;
    const std::vector<std::pair<DomainSpec, int>> runs{{fd_square(1.0 / 64), 50},
                                                       {DomainSpec::disk(1.0), 30},
                                                       {fd_lshape(1.0 / 64), 50},
                                                       {DomainSpec::torus({2 * pi, 2 * pi}), 30},
                                                       {DomainSpec::sphere(), 49}};
    for (const auto& [d, n] : runs) {
        for (const auto& e : compute_spectrum(d, n)) {
            ++total;
            if (!courant_holds(decompose(e))) ++violations;
        }
    }
    return {violations == 0 && total >= 150, fmt("%g eigenfunctions, %g violations", total, violations)};
}

Outcome faber_krahn() {
    const std::vector<std::pair<DomainSpec, int>> runs{{fd_square(1.0 / 128), 50},
                                                       {fd_lshape(1.0 / 64), 50},
                                                       {DomainSpec::disk(1.0), 30},
                                                       {DomainSpec::rectangle(1.0, 1.0), 50}};
    int domains = 0, fails = 0;
    double worst = infinity, disk_dev = infinity;
    for (const auto& [d, n] : runs) {
        for (const auto& e : compute_spectrum(d, n)) {
            const auto rows = faber_krahn_check(decompose(e), 2, grid_slack);
            for (const auto& r : rows) {
                ++domains;
                fails += !r.pass;
                worst = std::min(worst, r.volume / r.bound);
            }
            if (d.kind == DomainKind::disk && e.index == 1) disk_dev = std::abs(rows.front().volume / rows.front().bound - 1);
        }
    }
    return {fails == 0 && disk_dev <= 0.02,
            fmt("%g domains, %g below bound, min volume/bound %.4f, disk ground deviation %.2e", domains, fails, worst,
                disk_dev)};
}

Outcome bathtub_hl() {
    constexpr int cells_per_axis = 64;
    const double h = 2.0 / cells_per_axis;
    std::vector<RadialSample> samples;
    for (int j = 0; j < cells_per_axis; ++j)
        for (int i = 0; i < cells_per_axis; ++i)
            samples.push_back({std::hypot(-1.0 + (i + 0.5) * h, -1.0 + (j + 0.5) * h), h * h});
    const auto t = bathtub_random_subsets(RadialProfile{[](double r) { return 1.0 / r; }}, samples, 400, 200, 7);
    int beaten = 0;
    for (double v : t.subset_values) beaten += v > t.greedy;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> val(-1.0, 1.0), wt(0.01, 1.0);
    int hl_fail = 0;
    for (int k = 0; k < 1000; ++k) {
        const int n = 2 + static_cast<int>(rng() % 63);
        std::vector<double> u(n), v(n), w(n);
        for (int i = 0; i < n; ++i) {
            u[i] = val(rng);
            v[i] = val(rng);
            w[i] = wt(rng);
        }
        const auto r = hardy_littlewood_check(WeightedSamples(u, w), WeightedSamples(v, w));
        hl_fail += r.lhs > r.rhs * (1 + 1e-12);
    }
    return {beaten == 0 && t.subset_values.size() == 200 && hl_fail == 0,
            fmt("%g of 200 subsets exceed greedy; %g of 1000 pairs violate", beaten, hl_fail)};
}

Outcome potential_mc() {
    const double bound = newtonian_potential_sup(3, 4 * pi / 3);
    double worst = 0;
    for (std::uint64_t s = 1; s <= 50; ++s)
        worst = std::max(worst, newtonian_potential_mc(random_ellipsoid(1000 + s), 200000, s).value);
    const double ball = newtonian_potential_mc(Ellipsoid{}, 200000, 99).value;
    return {worst <= bound * 1.01 && std::abs(ball - 0.5) <= 0.005,
            fmt("bound %.4f, largest estimate %.5f, centered ball %.5f", bound, worst, ball)};
}

Outcome plap() {
    const double l2 = sinp_eigenpair(2.0, 1.0).lambda;
    bool ok = std::abs(l2 - pi * pi) < 1e-6;
    double worst_agree = 0;
    for (double p : {1.5, 2.0, 3.0, 5.0}) {
        const auto e = sinp_eigenpair(p, 1.0);
        ok = ok && check_lindqvist(e, 1, 1.0).pass;
        const double rel = std::abs(e.lambda / oracle::descent_plap_lambda(p) - 1.0);
        worst_agree = std::max(worst_agree, rel);
    }
    const auto r = radial_plap_eigenpair(2.0, 1.0);
    ok = ok && check_lindqvist(r, 2, pi).pass;
    return {ok && worst_agree <= 1e-3, fmt("|lambda(2)-pi^2| %.1e, shooting vs descent max %.2e", std::abs(l2 - pi * pi), worst_agree)};
}

Outcome fd_convergence() {
    const double exact = 2 * pi * pi;
    const double e32 = std::abs(compute_spectrum(fd_square(1.0 / 32), 1)[0].lambda - exact);
    const double e64 = std::abs(compute_spectrum(fd_square(1.0 / 64), 1)[0].lambda - exact);
    return {e32 / e64 >= 3.5, fmt("errors %.5f, %.5f, ratio %.3f", e32, e64, e32 / e64)};
}

Outcome neumann() {
    auto d = DomainSpec::rectangle(pi, pi, BoundaryCondition::neumann);
    d.points_per_axis = {256, 256};
    auto grid = build_grid(d);
    std::vector<NodalDecomposition> spec;
    for (int k = 1; k <= 12; ++k) {
        Mode m;
        m.lambda = 2.0 * k * k;
        m.q = {k, k, 0};
        spec.push_back(decompose(make_eigenpair(d, grid, m, k)));
    }
    const auto c = check_neumann(spec);
    const double s1 = c.sum1.fit->slope, s2 = c.sum2.fit->slope, st = c.touching.slope;
    return {s1 <= 1.05 && s2 <= 1.05 && std::abs(st - 0.5) <= 0.1,
            fmt("slopes sum m %.4f, sum m^2 %.4f, touching %.4f", s1, s2, st)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"chiti constants match closed forms", chiti_closed_forms},
        {"reverse Holder equality on the disk only", chiti_equality},
        {"explicit extrema sums on square and L-shape", explicit_sums},
        {"superlevel volume lower bound on the unit box", superlevel_lemma},
        {"torus sharpness of the extrema sum", torus_sharpness},
        {"Sogge exponent continuity and zonal sup norms", sogge_consistency},
        {"Courant nodal count", courant},
        {"Faber-Krahn volume bound", faber_krahn},
        {"bathtub and Hardy-Littlewood", bathtub_hl},
        {"Newtonian potential Monte-Carlo", potential_mc},
        {"p-Laplacian eigenpairs", plap},
        {"finite-difference convergence", fd_convergence},
        {"Neumann extrema scaling", neumann},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
