#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "nodallab/plap.hpp"
#include "nodallab/specfun.hpp"
#include "nodallab/verify.hpp"

namespace py = pybind11;
using namespace nodallab;

namespace {

RunConfig config_from(const std::string& domain, const py::kwargs& kw) {
    RunConfig cfg;
    cfg.domain = domain;
    for (const auto& [key, value] : kw) {
        const auto k = key.cast<std::string>();
        if (k == "a") cfg.a = value.cast<double>();
        else if (k == "b") cfg.b = value.cast<double>();
        else if (k == "c") cfg.c = value.cast<double>();
        else if (k == "radius") cfg.radius = value.cast<double>();
        else if (k == "spacing") cfg.h = value.cast<double>();
        else if (k == "bc") cfg.bc = value.cast<std::string>();
        else if (k == "resolution") cfg.resolution = value.cast<double>();
        else if (k == "count") cfg.count = value.cast<int>();
        else if (k == "deltas") cfg.deltas = value.cast<std::vector<double>>();
        else if (k == "p") cfg.ps = value.cast<std::vector<double>>();
        else if (k == "seed") cfg.seed = value.cast<std::uint64_t>();
        else if (k == "cache") cfg.cache_dir = value.cast<std::string>();
        else if (k == "slack") cfg.slack = value.cast<double>();
        else if (k == "zero_tol") cfg.zero_tolerance = value.cast<double>();
        else throw py::key_error("unknown option: " + k);
    }
    cfg.validate();
    return cfg;
}

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

py::dict spectrum(const std::string& domain, int count, bool fields, const py::kwargs& kw) {
    const auto cfg = config_from(domain, kw);
    const auto d = domain_from_config(cfg, domain);
    const auto s = load_or_compute(cfg.cache_dir, d, count).spectrum;
    std::vector<double> lambdas;
    std::vector<std::string> labels;
    for (const auto& e : s) {
        lambdas.push_back(e.lambda);
        labels.push_back(e.label);
    }
    py::dict out;
    out["lambdas"] = to_array(lambdas);
    out["labels"] = labels;
    const auto& g = *s.front().field.grid;
    out["weights"] = to_array(g.weights);
    if (fields) {
        py::array_t<double> f({s.size(), g.size()});
        auto m = f.mutable_unchecked<2>();
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j) m(i, j) = s[i].field.values[j];
        out["fields"] = f;
        py::array_t<double> c({g.size(), std::size_t{3}});
        auto cm = c.mutable_unchecked<2>();
        for (std::size_t j = 0; j < g.size(); ++j)
            for (int a = 0; a < 3; ++a) cm(j, a) = g.coords[j][a];
        out["coords"] = c;
    }
    return out;
}

py::list nodal_summary(const std::string& domain, int count, const py::kwargs& kw) {
    const auto cfg = config_from(domain, kw);
    const auto d = domain_from_config(cfg, domain);
    py::list out;
    for (const auto& e : load_or_compute(cfg.cache_dir, d, count).spectrum) {
        const auto nd = decompose(e, cfg.zero_tolerance * lp_norm(e.field, infinity));
        std::vector<double> vol, ext;
        std::vector<int> sign;
        for (const auto& dom : nd.domains) {
            vol.push_back(dom.volume);
            ext.push_back(dom.max_abs);
            sign.push_back(dom.sign);
        }
        py::dict row;
        row["index"] = e.index;
        row["lambda"] = e.lambda;
        row["label"] = e.label;
        row["domains"] = nd.domains.size();
        row["volumes"] = vol;
        row["extrema"] = ext;
        row["signs"] = sign;
        row["touching"] = count_touching_boundary(nd);
        row["courant"] = courant_holds(nd);
        out.append(row);
    }
    return out;
}

py::dict plap_dict(const PLapEigenPair& e) {
    py::dict out;
    out["p"] = e.p;
    out["lambda"] = e.lambda;
    std::vector<double> x;
    for (const auto& c : e.profile.grid->coords) x.push_back(c[0]);
    out["x"] = to_array(x);
    out["u"] = to_array(e.profile.values);
    out["volume"] = e.domain_volume;
    return out;
}

std::string verify_json(const std::vector<std::string>& claims, const std::string& domain, const py::kwargs& kw) {
    auto cfg = config_from(domain, kw);
    cfg.command = "verify";
    cfg.claims = claims;
    cfg.validate();
    return emit_report(run_verify(cfg));
}

}  // namespace

PYBIND11_MODULE(_nodallab, m) {
    m.doc() = "Laplace eigenfunctions, nodal domains and extrema bounds";
    m.attr("__version__") = NODALLAB_VERSION;

    m.def("bessel_j", [](double nu, double x) { return bessel_j(BesselOrder(nu), x); }, py::arg("nu"), py::arg("x"));
    m.def("bessel_first_zero", [](double nu) { return bessel_first_zero(BesselOrder(nu)); }, py::arg("nu"));
    m.def("unit_ball_volume", &unit_ball_volume, py::arg("n"));
    m.def(
        "chiti_constant",
        [](int n, double p) {
            const auto k = chiti_constant(n, p);
            return py::make_tuple(k.value, k.quad_error);
        },
        py::arg("n"), py::arg("p"), "(K_{n,p}, quadrature error)");
    m.def("sogge_delta", &sogge_delta, py::arg("n"), py::arg("p"));
    m.def("smith_sogge_alpha", &smith_sogge_alpha, py::arg("n"), py::arg("p"));
    m.def("closed_manifold_exponent", &closed_manifold_exponent, py::arg("n"), py::arg("p"));
    m.def("boundary_manifold_exponent", &boundary_manifold_exponent, py::arg("n"), py::arg("p"));
    m.def("superlevel_volume_bound", &superlevel_volume_bound, py::arg("n"), py::arg("delta"), py::arg("lam"));
    m.def("faber_krahn_constant", &faber_krahn_constant, py::arg("n"));

    m.def("spectrum", &spectrum, py::arg("domain"), py::arg("count"), py::arg("fields") = false,
          "Lowest eigenpairs; keyword options as on the command line (a, b, c, radius, spacing, bc, resolution, cache)");
    m.def("nodal_summary", &nodal_summary, py::arg("domain"), py::arg("count"));
    m.def("sinp_eigenpair", [](double p, double length) { return plap_dict(sinp_eigenpair(p, length)); }, py::arg("p"),
          py::arg("length") = 1.0);
    m.def("radial_plap_eigenpair", [](double p, double radius) { return plap_dict(radial_plap_eigenpair(p, radius)); },
          py::arg("p"), py::arg("radius") = 1.0);
    m.def("verify_json", &verify_json, py::arg("claims"), py::arg("domain") = "");
    m.def("constants_csv", [](const std::vector<int>& ns, const std::vector<double>& ps) {
        return format_csv(constants_table(ns, ps));
    });
    m.def("supported_claims", &supported_claims);
}
