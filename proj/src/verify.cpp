#include "nodallab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nodallab/plap.hpp"
#include "nodallab/rearrange.hpp"
#include "nodallab/specfun.hpp"

namespace nodallab {

using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

json double_list(const std::vector<double>& v) {
    json out = json::array();
    for (double x : v) {
        if (std::isinf(x)) out.push_back("inf");
        else out.push_back(x);
    }
    return out;
}

BoundaryCondition parse_bc(const std::string& s) {
    if (s == "dirichlet") return BoundaryCondition::dirichlet;
    if (s == "neumann") return BoundaryCondition::neumann;
    throw std::invalid_argument("unknown boundary condition: " + s);
}

std::string p_tag(double p) {
    if (std::isinf(p)) return "inf";
    return format_double(p);
}

// one claim's rows and verdict

CsvTable rows_table() {
    return CsvTable{{"claim", "domain", "index", "lambda", "lhs", "rhs", "constant", "provenance", "exponent_source",
                     "tolerance", "margin", "pass"},
                    {}};
}

struct ClaimAcc {
    std::string id;
    CsvTable table = rows_table();
    std::vector<ReportRow> rows;
    bool asserted_ok = true;
    bool fitted = false;
    bool fit_ok = true;
    std::optional<ClaimFit> fit;
    CsvTable fit_table{{"claim", "domain", "slope", "stderr", "intercept", "exponent", "lambda_stable", "points"}, {}};

    explicit ClaimAcc(std::string claim_id) : id(std::move(claim_id)) {}

    void add(const BoundCheckReport& r, const std::string& domain, int index, bool asserted = true) {
        rows.push_back(ReportRow{r.lambda, r.lhs, r.rhs, r.margin, r.pass});
        if (asserted && !r.pass) asserted_ok = false;
        table.rows.push_back({id, domain, static_cast<long long>(index), r.lambda, r.lhs, r.rhs, r.constant,
                              to_string(r.provenance), r.exponent_source, r.tolerance, r.margin,
                              std::string(r.pass ? "true" : "false")});
    }

    void add_fit(const ScalingFit& f, double exponent, double lambda_stable, const std::string& domain, bool asserted) {
        fitted = true;
        if (!fit) fit = ClaimFit{f.slope, f.stderr_slope};
        if (asserted && f.slope > exponent + slope_tolerance) fit_ok = false;
        fit_table.rows.push_back({id, domain, f.slope, f.stderr_slope, f.intercept, exponent, lambda_stable,
                                  static_cast<long long>(f.lambdas.size())});
    }

    void finish(VerifyOutput& out) {
        if (rows.empty()) throw std::invalid_argument(id + ": insufficient spectra (no rows)");
        ClaimResult c;
        c.id = id;
        c.rows = rows;
        c.fit = fit;
        if (!asserted_ok || !fit_ok) c.verdict = "fail";
        else c.verdict = fitted ? "reported" : "pass";
        out.claims.push_back(std::move(c));
        out.tables.push_back({id, std::move(table)});
        if (!fit_table.rows.empty()) out.tables.push_back({id + "-fit", std::move(fit_table)});
    }
};

// spectra

std::string domain_label(const DomainSpec& d) {
    if (d.kind == DomainKind::masked_grid) return d.shape_name + "-fd";
    return to_string(d.kind);
}

/// Calls fn on each eigenpair in ascending order. Analytic spectra are sampled
/// one mode at a time; grid spectra go through the cache.
void for_each_eigenpair(const RunConfig& cfg, const DomainSpec& d, int count,
                        const std::function<void(const EigenPair&)>& fn) {
    if (d.kind == DomainKind::masked_grid) {
        for (const auto& e : load_or_compute(cfg.cache_dir, d, count).spectrum) fn(e);
        return;
    }
    auto grid = build_grid(d);
    int index = 1;
    for (const auto& mode : analytic_modes(d, count)) fn(make_eigenpair(d, grid, mode, index++));
}

NodalDecomposition decompose_cfg(const RunConfig& cfg, const EigenPair& e) {
    return decompose(e, cfg.zero_tolerance * lp_norm(e.field, infinity));
}

/// Drops samples and point lists, keeping what the fitted sums need.
void slim(NodalDecomposition& nd) {
    nd.field.values.clear();
    nd.field.values.shrink_to_fit();
    for (auto& dom : nd.domains) {
        dom.points.clear();
        dom.points.shrink_to_fit();
    }
}

std::vector<NodalDecomposition> decomposed_spectrum(const RunConfig& cfg, const DomainSpec& d, int count) {
    std::vector<NodalDecomposition> out;
    for_each_eigenpair(cfg, d, count, [&](const EigenPair& e) { out.push_back(decompose_cfg(cfg, e)); });
    return out;
}

int count_or(const RunConfig& cfg, int fallback) { return cfg.count > 0 ? cfg.count : fallback; }

std::vector<double> ps_or(const RunConfig& cfg, std::vector<double> fallback) {
    return cfg.ps.empty() ? std::move(fallback) : cfg.ps;
}

std::vector<DomainSpec> domains_or(const RunConfig& cfg, const std::vector<std::string>& fallback) {
    std::vector<DomainSpec> out;
    if (!cfg.domain.empty()) out.push_back(domain_from_config(cfg, cfg.domain));
    else
        for (const auto& n : fallback) out.push_back(domain_from_config(cfg, n));
    return out;
}

CsvTable superlevel_table() { return CsvTable{{"claim", "domain", "index", "lambda", "nodal_domain", "delta", "volume"}, {}}; }

void add_superlevel_rows(CsvTable& t, const std::string& id, const std::string& dom, const NodalDecomposition& nd,
                         const SuperlevelStats& s) {
    for (std::size_t i = 0; i < s.volumes.size(); ++i)
        for (std::size_t k = 0; k < s.deltas.size(); ++k)
            t.rows.push_back({id, dom, static_cast<long long>(nd.index), nd.lambda, static_cast<long long>(i + 1),
                              s.deltas[k], s.volumes[i][k]});
}

// claims

VerifyOutput claim_superlevel_volume(const RunConfig& cfg) {
    VerifyOutput out;
    ClaimAcc acc("Lem1.2");
    CsvTable sl = superlevel_table();
    for (const auto& d : domains_or(cfg, {"box"})) {
        if (d.dimension() < 3 || !d.is_euclidean())
            throw std::invalid_argument("Lem1.2 needs a Euclidean domain of dimension >= 3");
        int count = cfg.count;
        if (count <= 0) {
            if (d.kind == DomainKind::masked_grid) throw std::invalid_argument("Lem1.2: no 3-D grid domains");
            const auto modes = analytic_modes(d, 400);
            count = static_cast<int>(std::count_if(modes.begin(), modes.end(), [](const Mode& m) { return m.lambda <= 300.0; }));
        }
        const auto name = domain_label(d);
        for_each_eigenpair(cfg, d, count, [&](const EigenPair& e) {
            const auto nd = decompose_cfg(cfg, e);
            const int n = e.field.grid->dimension;
            const auto s = superlevel_volumes(nd, cfg.deltas);
            add_superlevel_rows(sl, acc.id, name, nd, s);
            for (std::size_t k = 0; k < cfg.deltas.size(); ++k) {
                double vmin = infinity;
                for (const auto& v : s.volumes) vmin = std::min(vmin, v[k]);
                const double bound = superlevel_volume_bound(n, cfg.deltas[k], e.lambda);
                acc.add(make_report(acc.id, e.lambda, bound, vmin, bound * std::pow(e.lambda, 0.5 * n),
                                    Provenance::explicit_constant, cfg.slack * bound, "delta=" + format_double(cfg.deltas[k])),
                        name, e.index);
            }
        });
    }
    acc.finish(out);
    out.tables.push_back({"Lem1.2-superlevel", std::move(sl)});
    return out;
}

VerifyOutput claim_thm13(const RunConfig& cfg) {
    VerifyOutput out;
    ClaimAcc acc("Thm1.3");
    CsvTable sl = superlevel_table();
    for (const auto& d : domains_or(cfg, {"torus", "sphere"})) {
        if (!d.is_closed()) throw std::invalid_argument("Thm1.3 needs a closed manifold (torus or sphere)");
        const auto name = domain_label(d);
        for_each_eigenpair(cfg, d, count_or(cfg, 30), [&](const EigenPair& e) {
            if (!(e.lambda > 1e-9)) return;
            const auto nd = decompose_cfg(cfg, e);
            const int n = e.field.grid->dimension;
            add_superlevel_rows(sl, acc.id, name, nd, superlevel_volumes(nd, cfg.deltas));
            const auto c = superlevel_constants(nd, cfg.deltas, n);
            for (std::size_t k = 0; k < c.size(); ++k) {
                auto r = make_report(acc.id, e.lambda, 0.0, c[k], c[k], Provenance::fitted, 0.0,
                                     "delta=" + format_double(cfg.deltas[k]));
                r.pass = c[k] > 0.0;
                acc.add(r, name, e.index);
            }
        });
    }
    acc.finish(out);
    out.tables.push_back({"Thm1.3-superlevel", std::move(sl)});
    return out;
}

VerifyOutput claim_thm15(const RunConfig& cfg) {
    VerifyOutput out;
    std::vector<double> ps;
    for (double p : ps_or(cfg, {2.0, 6.0, infinity}))
        if (p >= 2.0) ps.push_back(p);
    if (ps.empty()) throw std::invalid_argument("Thm1.5 needs p >= 2");
    for (const auto& d : domains_or(cfg, {"sphere"})) {
        if (!d.is_closed()) throw std::invalid_argument("Thm1.5 needs a closed manifold (torus or sphere)");
        const auto name = domain_label(d);
        std::vector<ClaimAcc> accs;
        for (double p : ps) accs.emplace_back("Thm1.5-p" + p_tag(p));
        std::vector<NodalDecomposition> spectrum;
        for_each_eigenpair(cfg, d, count_or(cfg, 100), [&](const EigenPair& e) {
            auto nd = decompose_cfg(cfg, e);
            if (e.lambda > 1e-9)
                for (std::size_t i = 0; i < ps.size(); ++i)
                    if (!std::isinf(ps[i])) accs[i].add(check_extrema_chain(nd, ps[i], nd.field.grid->dimension), name, e.index);
            slim(nd);
            spectrum.push_back(std::move(nd));
        });
        const int n = d.dimension();
        for (std::size_t i = 0; i < ps.size(); ++i) {
            // p = inf compares max m with lambda^delta(inf)
            const bool sup = std::isinf(ps[i]);
            const double ex = sup ? sogge_delta(n, infinity) : closed_manifold_exponent(n, ps[i]);
            const auto chk = check_extrema_sums(spectrum, ps[i], ex, ExtremaMode::fitted);
            for (const auto& r : chk.rows) {
                auto row = r;
                row.id = accs[i].id;
                row.exponent_source = sup ? "delta(inf)" : "n/2+p*delta(p)";
                accs[i].add(row, name, 0, false);
            }
            accs[i].add_fit(*chk.fit, ex, chk.lambda_stable, name, true);
            accs[i].finish(out);
        }
    }
    return out;
}

VerifyOutput claim_cor16(const RunConfig& cfg) {
    VerifyOutput out;
    ClaimAcc acc("Cor1.6");
    std::vector<NodalDecomposition> spectrum;
    std::string name;
    if (cfg.domain.empty()) {
        // sin(mx) sin(my) on the 2 pi torus
        name = "torus-diagonal";
        for (int m = 1; m <= 10; ++m) {
            auto d = DomainSpec::torus({2 * pi, 2 * pi});
            const int pts = 4 * m * static_cast<int>(std::ceil(128.0 / (4.0 * m)));
            d.points_per_axis = {pts, pts};
            Mode mode;
            mode.lambda = 2.0 * m * m;
            mode.q = {m, m, 0};
            mode.variant = 3;
            const auto e = make_eigenpair(d, build_grid(d), mode, m);
            spectrum.push_back(decompose_cfg(cfg, e));
        }
    } else {
        const auto d = domain_from_config(cfg, cfg.domain);
        name = domain_label(d);
        spectrum = decomposed_spectrum(cfg, d, count_or(cfg, 100));
    }
    for (const auto& nd : spectrum)
        if (nd.lambda > 1e-9) acc.add(check_cauchy_schwarz(nd), name, nd.index);
    const int n = spectrum.front().field.grid->dimension;
    const double ex = 0.5 * n;
    const auto chk = check_extrema_sums(spectrum, 1.0, ex, ExtremaMode::fitted);
    for (auto r : chk.rows) {
        r.id = acc.id;
        r.exponent_source = "n/2";
        acc.add(r, name, 0, false);
    }
    acc.add_fit(*chk.fit, ex, chk.lambda_stable, name, true);
    acc.finish(out);
    return out;
}

VerifyOutput claim_cor17(const RunConfig& cfg) {
    constexpr double a = 0.5;
    VerifyOutput out;
    ClaimAcc acc("Cor1.7");
    for (const auto& d : domains_or(cfg, {"sphere"})) {
        const auto name = domain_label(d);
        std::vector<double> lambdas, counts;
        std::vector<int> indices;
        for_each_eigenpair(cfg, d, count_or(cfg, 100), [&](const EigenPair& e) {
            if (!(e.lambda > 1e-9)) return;
            const auto nd = decompose_cfg(cfg, e);
            lambdas.push_back(e.lambda);
            counts.push_back(count_high_extrema(nd, a, e.field.grid->dimension));
            indices.push_back(e.index);
        });
        double cmax = 0.0;
        for (double c : counts) cmax = std::max(cmax, c);
        for (std::size_t i = 0; i < counts.size(); ++i)
            acc.add(make_report(acc.id, lambdas[i], counts[i], cmax, cmax, Provenance::fitted, 0.0, "a=0.5"), name,
                    indices[i], false);
        std::vector<double> shifted(counts);
        for (auto& c : shifted) c += 1.0;
        const auto fit = fit_upper_envelope(lambdas, shifted);
        acc.add_fit(fit, 0.0, 0.0, name, true);
    }
    acc.finish(out);
    return out;
}

VerifyOutput claim_thm18(const RunConfig& cfg) {
    VerifyOutput out;
    ClaimAcc p1("Thm1.8-P1"), p2("Thm1.8-P2");
    for (const auto& d : domains_or(cfg, {"square-fd", "lshape"})) {
        if (!d.is_euclidean() || d.bc != BoundaryCondition::dirichlet)
            throw std::invalid_argument("Thm1.8 needs a Euclidean Dirichlet domain");
        const auto name = domain_label(d);
        const auto spectrum = decomposed_spectrum(cfg, d, count_or(cfg, 50));
        const auto c1 = check_extrema_sums(spectrum, 1.0, 0.0, ExtremaMode::explicit_constant, cfg.slack);
        const auto c2 = check_extrema_sums(spectrum, 2.0, 0.0, ExtremaMode::explicit_constant, cfg.slack);
        std::vector<int> idx;
        for (const auto& nd : spectrum)
            if (nd.lambda > 1e-9) idx.push_back(nd.index);
        for (std::size_t i = 0; i < c1.rows.size(); ++i) p1.add(c1.rows[i], name, idx[i]);
        for (std::size_t i = 0; i < c2.rows.size(); ++i) p2.add(c2.rows[i], name, idx[i]);
    }
    p1.finish(out);
    p2.finish(out);
    return out;
}

VerifyOutput claim_thm19(const RunConfig& cfg) {
    VerifyOutput out;
    std::vector<NodalDecomposition> spectrum;
    std::string name;
    if (cfg.domain.empty()) {
        // cos(kx) cos(ky) on (0, pi)^2
        name = "rectangle-neumann-diagonal";
        auto d = DomainSpec::rectangle(pi, pi, BoundaryCondition::neumann);
        d.points_per_axis = {256, 256};
        auto grid = build_grid(d);
        for (int k = 1; k <= 12; ++k) {
            Mode mode;
            mode.lambda = 2.0 * k * k;
            mode.q = {k, k, 0};
            spectrum.push_back(decompose_cfg(cfg, make_eigenpair(d, grid, mode, k)));
        }
    } else {
        auto c = cfg;
        c.bc = "neumann";
        const auto d = domain_from_config(c, cfg.domain);
        if (!d.is_euclidean() || d.dimension() != 2) throw std::invalid_argument("Thm1.9 needs a planar domain");
        name = domain_label(d);
        spectrum = decomposed_spectrum(cfg, d, count_or(cfg, 40));
    }
    const auto chk = check_neumann(spectrum);
    ClaimAcc s1("Thm1.9-sum1"), s2("Thm1.9-sum2"), tc("Thm1.9-touching");
    for (const auto& r : chk.sum1.rows) s1.add(r, name, 0, false);
    for (const auto& r : chk.sum2.rows) s2.add(r, name, 0, false);
    s1.add_fit(*chk.sum1.fit, 1.0, chk.sum1.lambda_stable, name, true);
    s2.add_fit(*chk.sum2.fit, 1.0, chk.sum2.lambda_stable, name, true);
    double c = 0.0;
    for (std::size_t i = 0; i < chk.touching.lambdas.size(); ++i)
        c = std::max(c, chk.touching.values[i] / std::sqrt(chk.touching.lambdas[i]));
    for (std::size_t i = 0; i < chk.touching.lambdas.size(); ++i) {
        const double mu = chk.touching.lambdas[i];
        tc.add(make_report(tc.id, mu, chk.touching.values[i], c * std::sqrt(mu), c, Provenance::fitted, 1e-12 * c,
                           "1/2"),
               name, 0, false);
    }
    tc.add_fit(chk.touching, 0.5, 0.0, name, true);
    s1.finish(out);
    s2.finish(out);
    tc.finish(out);
    return out;
}

VerifyOutput claim_thm112(const RunConfig& cfg) {
    VerifyOutput out;
    const auto ps = ps_or(cfg, {5.0, 6.0});
    for (const auto& d : domains_or(cfg, {"box"})) {
        if (!d.is_euclidean() || d.dimension() < 3) throw std::invalid_argument("Thm1.12 needs a domain of dimension >= 3");
        const int n = d.dimension();
        const auto name = domain_label(d);
        std::vector<NodalDecomposition> spectrum;
        for_each_eigenpair(cfg, d, count_or(cfg, 60), [&](const EigenPair& e) {
            auto nd = decompose_cfg(cfg, e);
            slim(nd);
            spectrum.push_back(std::move(nd));
        });
        for (double p : ps) {
            if (p < 2.0) throw std::invalid_argument("Thm1.12 needs p >= 2");
            const bool applies = boundary_exponent_applies(n, p);
            // outside the proven range the conjectured exponent is evaluated only
            const double ex = applies ? boundary_manifold_exponent(n, p) : 0.5 * n + p * smith_sogge_alpha(n, p);
            ClaimAcc acc(applies ? "Thm1.12-p" + p_tag(p) : "Conj-alpha-p" + p_tag(p));
            const auto chk = check_extrema_sums(spectrum, p, ex, ExtremaMode::fitted);
            for (auto r : chk.rows) {
                r.id = acc.id;
                r.exponent_source = applies ? "n/2+np/2(1/2-1/p)-p/4" : "n/2+p*alpha(p)";
                acc.add(r, name, 0, false);
            }
            acc.add_fit(*chk.fit, ex, chk.lambda_stable, name, applies);
            acc.finish(out);
        }
    }
    return out;
}

VerifyOutput claim_thm114(const RunConfig& cfg) {
    VerifyOutput out;
    ClaimAcc acc("Thm1.14");
    ClaimAcc cnt("Thm1.14-count");
    for (double p : ps_or(cfg, {1.5, 2.0, 3.0, 5.0})) {
        for (int dim : {1, 2}) {
            const auto e = dim == 1 ? sinp_eigenpair(p, 1.0) : radial_plap_eigenpair(p, 1.0);
            const std::string name = (dim == 1 ? "interval-p" : "disk-radial-p") + p_tag(p);
            acc.add(check_lindqvist(e, dim, e.domain_volume), name, 1);
            const double m = lp_norm(e.profile, infinity);
            const auto c = count_bound_plap({m}, 0.5 * m, e.lambda, dim, p, e.domain_volume);
            cnt.add(make_report(cnt.id, e.lambda, c.count, c.bound, std::pow(4.0, dim), Provenance::explicit_constant,
                                0.0, "n/p"),
                    name, 1);
        }
    }
    acc.finish(out);
    cnt.finish(out);
    return out;
}

VerifyOutput claim_fk(const RunConfig& cfg) {
    VerifyOutput out;
    ClaimAcc acc("FK"), eq("FK-equality");
    std::vector<std::pair<DomainSpec, int>> runs;
    if (!cfg.domain.empty()) {
        runs.emplace_back(domain_from_config(cfg, cfg.domain), count_or(cfg, 50));
    } else {
        auto c = cfg;
        c.h = 1.0 / 128.0;
        runs.emplace_back(domain_from_config(c, "square-fd"), 50);
        runs.emplace_back(domain_from_config(cfg, "lshape"), 50);
        runs.emplace_back(domain_from_config(cfg, "disk"), 30);
    }
    for (const auto& [d, count] : runs) {
        if (!d.is_euclidean() || d.bc != BoundaryCondition::dirichlet)
            throw std::invalid_argument("FK needs Euclidean Dirichlet domains");
        const auto name = domain_label(d);
        for_each_eigenpair(cfg, d, count, [&](const EigenPair& e) {
            const auto nd = decompose_cfg(cfg, e);
            const int n = e.field.grid->dimension;
            for (const auto& row : faber_krahn_check(nd, n, cfg.slack)) {
                auto r = make_report(acc.id, e.lambda, row.bound, row.volume, faber_krahn_constant(n),
                                     Provenance::explicit_constant, cfg.slack * row.bound, "-n/2");
                acc.add(r, name, e.index);
            }
            if (d.kind == DomainKind::disk && e.index == 1) {
                const auto rows = faber_krahn_check(nd, n, cfg.slack);
                const double dev = std::abs(rows.front().volume / rows.front().bound - 1.0);
                eq.add(make_report(eq.id, e.lambda, dev, 0.02, faber_krahn_constant(n), Provenance::explicit_constant,
                                   0.0, "-n/2"),
                       name, 1);
            }
        });
    }
    acc.finish(out);
    if (!eq.rows.empty()) eq.finish(out);
    return out;
}

VerifyOutput claim_courant(const RunConfig& cfg) {
    VerifyOutput out;
    ClaimAcc acc("Courant");
    std::vector<std::pair<DomainSpec, int>> runs;
    if (!cfg.domain.empty()) {
        runs.emplace_back(domain_from_config(cfg, cfg.domain), count_or(cfg, 30));
    } else {
        runs.emplace_back(domain_from_config(cfg, "square-fd"), 50);
        runs.emplace_back(domain_from_config(cfg, "disk"), 30);
        runs.emplace_back(domain_from_config(cfg, "lshape"), 50);
        runs.emplace_back(domain_from_config(cfg, "torus"), 30);
        runs.emplace_back(domain_from_config(cfg, "sphere"), 49);
    }
    for (const auto& [d, count] : runs) {
        const auto name = domain_label(d);
        for_each_eigenpair(cfg, d, count, [&](const EigenPair& e) {
            const auto nd = decompose_cfg(cfg, e);
            auto r = make_report(acc.id, e.lambda, static_cast<double>(nd.domains.size()), e.index, 1.0,
                                 Provenance::explicit_constant, 0.0, "k");
            r.pass = courant_holds(nd);
            acc.add(r, name, e.index);
        });
    }
    acc.finish(out);
    return out;
}

VerifyOutput claim_bathtub(const RunConfig& cfg) {
    VerifyOutput out;
    ClaimAcc acc("Bathtub");
    constexpr int cells_per_axis = 64;
    constexpr std::size_t cells = 400;
    const double h = 2.0 / cells_per_axis;
    std::vector<RadialSample> samples;
    for (int j = 0; j < cells_per_axis; ++j)
        for (int i = 0; i < cells_per_axis; ++i)
            samples.push_back({std::hypot(-1.0 + (i + 0.5) * h, -1.0 + (j + 0.5) * h), h * h});
    const RadialProfile f{[](double r) { return 1.0 / r; }};
    const auto trial = bathtub_random_subsets(f, samples, cells, 200, cfg.seed);
    for (std::size_t t = 0; t < trial.subset_values.size(); ++t)
        acc.add(make_report(acc.id, 0.0, trial.subset_values[t], trial.greedy, 1.0, Provenance::explicit_constant, 0.0,
                            "exact"),
                "square-cells", static_cast<int>(t + 1));
    acc.finish(out);
    return out;
}

VerifyOutput claim_prop21(const RunConfig& cfg) {
    VerifyOutput out;
    ClaimAcc acc("Prop2.1"), ball("Prop2.1-ball");
    constexpr int samples = 200000;
    const double bound = newtonian_potential_sup(3, 4.0 * pi / 3.0);
    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < 50; ++i) {
        const auto region = random_ellipsoid(rng());
        const auto est = newtonian_potential_mc(region, samples, rng());
        acc.add(make_report(acc.id, 0.0, est.value, bound, bound, Provenance::explicit_constant, 0.01 * bound, "n=3"),
                "ellipsoid", i + 1);
    }
    const auto est = newtonian_potential_mc(Ellipsoid{}, samples, rng());
    ball.add(make_report(ball.id, 0.0, std::abs(est.value - 0.5), 0.005, bound, Provenance::explicit_constant, 0.0,
                         "n=3"),
             "ball", 1);
    acc.finish(out);
    ball.finish(out);
    return out;
}

VerifyOutput claim_hl(const RunConfig& cfg) {
    VerifyOutput out;
    ClaimAcc acc("HL");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> size(2, 64);
    std::uniform_real_distribution<double> val(-1.0, 1.0), wt(0.01, 1.0);
    for (int t = 0; t < 1000; ++t) {
        const int n = size(rng);
        std::vector<double> u(n), v(n), w(n);
        for (int i = 0; i < n; ++i) {
            u[i] = val(rng);
            v[i] = val(rng);
            w[i] = wt(rng);
        }
        const auto r = hardy_littlewood_check(WeightedSamples(u, w), WeightedSamples(v, w));
        acc.add(make_report(acc.id, 0.0, r.lhs, r.rhs, 1.0, Provenance::explicit_constant, 1e-12 * std::abs(r.rhs),
                            "exact"),
                "random", t + 1);
    }
    acc.finish(out);
    return out;
}

VerifyOutput claim_chiti(const RunConfig& cfg) {
    VerifyOutput out;
    ClaimAcc acc("Chiti-eq");
    std::vector<DomainSpec> doms;
    if (!cfg.domain.empty()) doms.push_back(domain_from_config(cfg, cfg.domain));
    else {
        doms.push_back(DomainSpec::disk(1.0));
        doms.push_back(DomainSpec::rectangle(1.0, 1.0));
    }
    for (const auto& d : doms) {
        if (!d.is_euclidean() || d.bc != BoundaryCondition::dirichlet)
            throw std::invalid_argument("Chiti-eq needs a Euclidean Dirichlet domain");
        const auto name = domain_label(d);
        const bool ball = d.kind == DomainKind::disk;
        for_each_eigenpair(cfg, d, 1, [&](const EigenPair& e) {
            for (double p : ps_or(cfg, {1.0, 2.0})) {
                const auto r = check_chiti_inequality(e, p);
                const double ratio = r.lhs / r.rhs;
                const std::string src = "p=" + p_tag(p);
                if (ball) {
                    acc.add(make_report(acc.id, e.lambda, ratio, 1.0, r.constant, Provenance::explicit_constant, 1e-12,
                                        src),
                            name, 1);
                    acc.add(make_report(acc.id, e.lambda, 0.995, ratio, r.constant, Provenance::explicit_constant, 0.0,
                                        src),
                            name, 1);
                } else {
                    acc.add(make_report(acc.id, e.lambda, ratio, 0.99, r.constant, Provenance::explicit_constant, 0.0,
                                        src),
                            name, 1);
                }
            }
        });
    }
    acc.finish(out);
    return out;
}

using ClaimFn = VerifyOutput (*)(const RunConfig&);

const std::map<std::string, ClaimFn>& claim_map() {
    static const std::map<std::string, ClaimFn> m{
        {"Lem1.2", claim_superlevel_volume}, {"Thm1.3", claim_thm13},   {"Thm1.5", claim_thm15},  {"Cor1.6", claim_cor16},
        {"Cor1.7", claim_cor17},   {"Thm1.8", claim_thm18},   {"Thm1.9", claim_thm19},  {"Thm1.12", claim_thm112},
        {"Thm1.14", claim_thm114}, {"FK", claim_fk},          {"Courant", claim_courant}, {"Bathtub", claim_bathtub},
        {"Prop2.1", claim_prop21}, {"HL", claim_hl},          {"Chiti-eq", claim_chiti}};
    return m;
}

}  // namespace

json RunConfig::to_json() const {
    auto opt = [](const std::optional<double>& v) -> json { return v ? json(*v) : json(nullptr); };
    return json{{"command", command},     {"domain", domain},
                {"a", opt(a)},            {"b", opt(b)},
                {"c", opt(c)},            {"radius", radius},
                {"h", h},                 {"bc", bc},
                {"resolution", opt(resolution)}, {"count", count},
                {"deltas", double_list(deltas)}, {"p", double_list(ps)},
                {"n", ns},                {"claims", claims},
                {"seed", seed},           {"slack", slack},
                {"zero_tolerance", zero_tolerance}};
}

void RunConfig::validate() const {
    if (count < 0) throw std::invalid_argument("--count must be >= 0");
    if (!(h > 0.0 && h <= 0.5)) throw std::invalid_argument("--spacing must be in (0, 0.5]");
    if (!(radius > 0.0)) throw std::invalid_argument("--radius must be positive");
    for (const auto* v : {&a, &b, &c})
        if (*v && !(**v > 0.0)) throw std::invalid_argument("side lengths must be positive");
    if (resolution && !(*resolution > 0.0)) throw std::invalid_argument("--resolution must be positive");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0 && deltas[i] < 1.0)) throw std::invalid_argument("--deltas must lie in (0, 1)");
        if (i && !(deltas[i] > deltas[i - 1])) throw std::invalid_argument("--deltas must be ascending");
    }
    for (double p : ps)
        if (!(p >= 1.0)) throw std::invalid_argument("--p values must be >= 1");
    for (int n : ns)
        if (n < 2 || n > 6) throw std::invalid_argument("--n values must lie in 2..6");
    if (!(slack >= 0.0 && slack < 1.0)) throw std::invalid_argument("--slack must lie in [0, 1)");
    if (!(zero_tolerance >= 0.0 && zero_tolerance <= 0.01)) throw std::invalid_argument("--zero-tol must lie in [0, 0.01]");
    parse_bc(bc);
    for (const auto& id : claims)
        if (!claim_map().count(id)) throw std::invalid_argument("unknown claim id: " + id);
}

DomainSpec domain_from_config(const RunConfig& cfg, const std::string& name) {
    const auto bc = parse_bc(cfg.bc);
    DomainSpec d;
    if (name == "rect") d = DomainSpec::rectangle(cfg.a.value_or(1.0), cfg.b.value_or(1.0), bc);
    else if (name == "box") d = DomainSpec::box(cfg.a.value_or(1.0), cfg.b.value_or(1.0), cfg.c.value_or(1.0));
    else if (name == "torus") d = DomainSpec::torus({cfg.a.value_or(2 * pi), cfg.b.value_or(2 * pi)});
    else if (name == "disk") d = DomainSpec::disk(cfg.radius);
    else if (name == "sphere") d = DomainSpec::sphere();
    else if (name == "square-fd") d = DomainSpec::masked_rectangle(cfg.a.value_or(1.0), cfg.b.value_or(1.0), cfg.h, bc);
    else if (name == "lshape") d = DomainSpec::masked_lshape(cfg.h, bc);
    else if (name == "disk-fd") d = DomainSpec::masked_disk(cfg.radius, cfg.h, bc);
    else throw std::invalid_argument("unknown domain: " + name);
    if (name == "box" && bc != BoundaryCondition::dirichlet) throw std::invalid_argument("box supports Dirichlet only");
    if (cfg.resolution) d.resolution = *cfg.resolution;
    return d;
}

const std::vector<std::string>& supported_claims() {
    static const std::vector<std::string> ids{"Lem1.2",  "Thm1.3",  "Thm1.5", "Cor1.6",  "Cor1.7",
                                              "Thm1.8",  "Thm1.9",  "Thm1.12", "Thm1.14", "FK",
                                              "Courant", "Bathtub", "Prop2.1", "HL",      "Chiti-eq"};
    return ids;
}

VerifyOutput run_claim(const std::string& id, const RunConfig& cfg) {
    const auto it = claim_map().find(id);
    if (it == claim_map().end()) throw std::invalid_argument("unknown claim id: " + id);
    return it->second(cfg);
}

Report run_verify(const RunConfig& cfg, std::vector<NamedTable>* tables) {
    Report r;
    r.version = NODALLAB_VERSION;
    r.config = cfg.to_json();
    r.started = timestamp_now();
    const auto& ids = cfg.claims.empty() ? supported_claims() : cfg.claims;
    for (const auto& id : ids) {
        auto o = run_claim(id, cfg);
        for (auto& c : o.claims) r.claims.push_back(std::move(c));
        if (tables)
            for (auto& t : o.tables) tables->push_back(std::move(t));
    }
    r.finished = timestamp_now();
    return r;
}

bool any_failure(const Report& r) {
    return std::any_of(r.claims.begin(), r.claims.end(), [](const ClaimResult& c) { return c.verdict == "fail"; });
}

CsvTable spectrum_table(const std::vector<EigenPair>& spectrum) {
    CsvTable t{{"index", "lambda", "label"}, {}};
    for (const auto& e : spectrum) t.rows.push_back({static_cast<long long>(e.index), e.lambda, e.label});
    return t;
}

CsvTable constants_table(const std::vector<int>& ns, const std::vector<double>& ps) {
    CsvTable t{{"n", "p", "K", "quad_error", "delta", "alpha", "j", "alpha_n"}, {}};
    for (int n : ns) {
        if (n < 2 || n > 6) throw std::invalid_argument("constants: n must lie in 2..6");
        const double j = bessel_first_zero(BesselOrder(0.5 * n - 1.0));
        for (double p : ps) {
            if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("constants: p must be finite and >= 1");
            const auto k = chiti_constant(n, p);
            std::vector<CsvCell> row{static_cast<long long>(n), p, k.value, k.quad_error};
            row.push_back(p >= 2.0 ? CsvCell(sogge_delta(n, p)) : CsvCell(std::string()));
            row.push_back(n >= 3 && p >= 2.0 ? CsvCell(smith_sogge_alpha(n, p)) : CsvCell(std::string()));
            row.push_back(j);
            row.push_back(unit_ball_volume(n));
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

}  // namespace nodallab
