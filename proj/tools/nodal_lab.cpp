#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nodallab/io.hpp"
#include "nodallab/verify.hpp"

using namespace nodallab;

namespace {

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const auto& t : split(s)) {
        if (t == "inf" || t == "infinity") {
            out.push_back(infinity);
            continue;
        }
        std::size_t pos = 0;
        const double v = std::stod(t, &pos);
        if (pos != t.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: " + t);
        out.push_back(v);
    }
    return out;
}

void write_text(const std::filesystem::path& p, const std::string& s) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical lab for Laplace eigenfunctions and their nodal domains", "nodal-lab"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string deltas, ps, ns, claims;
    double a = 0, b = 0, c = 0, resolution = 0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--domain", cfg.domain, "rect, box, torus, disk, sphere, square-fd, lshape, disk-fd");
        sub->add_option("--a", a, "first side length (torus period)");
        sub->add_option("--b", b, "second side length");
        sub->add_option("--c", c, "third side length (box)");
        sub->add_option("--radius", cfg.radius, "disk radius");
        sub->add_option("--spacing", cfg.h, "grid spacing of finite-difference domains");
        sub->add_option("--bc", cfg.bc, "dirichlet or neumann");
        sub->add_option("--resolution", resolution, "samples per unit length on analytic domains");
        sub->add_option("--count", cfg.count, "number of eigenpairs");
        sub->add_option("--cache", cfg.cache_dir, "spectrum cache directory");
        sub->add_option("--out", cfg.out_dir, "output directory");
    };

    auto* spectrum = app.add_subcommand("spectrum", "print the lowest eigenvalues as CSV");
    common(spectrum);
    auto* verify = app.add_subcommand("verify", "run check pipelines and write report.json plus CSV tables");
    common(verify);
    verify->add_option("--claim", claims, "comma-separated claim ids (default: all)");
    verify->add_option("--deltas", deltas, "superlevel fractions, e.g. 0.1,0.3,0.5,0.7,0.9");
    verify->add_option("--p", ps, "exponents, e.g. 1,2");
    verify->add_option("--seed", cfg.seed, "random seed");
    verify->add_option("--slack", cfg.slack, "relative grid slack of explicit checks");
    verify->add_option("--zero-tol", cfg.zero_tolerance, "zero tolerance relative to the sup norm");
    auto* constants = app.add_subcommand("constants", "print constants and exponents as CSV");
    constants->add_option("--n", ns, "dimensions, e.g. 2,3");
    constants->add_option("--p", ps, "exponents, e.g. 1,2");
    constants->add_option("--out", cfg.out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (a > 0) cfg.a = a;
        if (b > 0) cfg.b = b;
        if (c > 0) cfg.c = c;
        if (resolution > 0) cfg.resolution = resolution;
        if (!deltas.empty()) cfg.deltas = parse_doubles(deltas);
        if (!ps.empty()) cfg.ps = parse_doubles(ps);
        if (!ns.empty()) {
            cfg.ns.clear();
            for (const auto& t : split(ns)) cfg.ns.push_back(std::stoi(t));
        }
        cfg.claims = split(claims);
        cfg.validate();
        if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);
        const std::filesystem::path out = cfg.out_dir;

        if (spectrum->parsed()) {
            cfg.command = "spectrum";
            if (cfg.domain.empty()) throw std::invalid_argument("spectrum needs --domain");
            const auto d = domain_from_config(cfg, cfg.domain);
            const auto res = load_or_compute(cfg.cache_dir, d, cfg.count > 0 ? cfg.count : 10);
            if (res.recomputed_corrupt) std::cerr << "cache entry unreadable, recomputed\n";
            const auto csv = format_csv(spectrum_table(res.spectrum));
            std::cout << csv;
            if (!cfg.out_dir.empty()) write_text(out / "spectrum.csv", csv);
            return 0;
        }
        if (constants->parsed()) {
            cfg.command = "constants";
            const auto csv = format_csv(constants_table(cfg.ns, cfg.ps.empty() ? std::vector<double>{1.0, 2.0} : cfg.ps));
            std::cout << csv;
            if (!cfg.out_dir.empty()) write_text(out / "constants.csv", csv);
            return 0;
        }
        cfg.command = "verify";
        std::vector<NamedTable> tables;
        const auto report = run_verify(cfg, &tables);
        const std::filesystem::path dir = cfg.out_dir.empty() ? std::filesystem::path(".") : out;
        write_text(dir / "report.json", emit_report(report));
        for (const auto& t : tables) write_csv(dir / (t.name + ".csv"), t.table);
        for (const auto& cl : report.claims) {
            std::cout << cl.id << ": " << cl.verdict << " (" << cl.rows.size() << " rows";
            if (cl.fit) std::cout << ", slope " << format_double(cl.fit->slope);
            std::cout << ")\n";
        }
        return any_failure(report) ? 1 : 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
