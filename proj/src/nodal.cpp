#include "nodallab/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nodallab/specfun.hpp"

namespace nodallab {

namespace {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            auto& px = parent[static_cast<std::size_t>(x)];
            px = parent[static_cast<std::size_t>(px)];
            x = px;
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[static_cast<std::size_t>(b)] = a;
    }
};

}  // namespace

NodalDecomposition decompose(const EigenPair& e, double zero_tolerance) {
    const auto& u = e.field.values;
    const Grid& g = *e.field.grid;
    double sup = 0.0;
    for (double v : u) sup = std::max(sup, std::fabs(v));
    if (!(sup > 0.0)) throw std::invalid_argument("decompose: zero field");
    if (zero_tolerance < 0.0) zero_tolerance = default_zero_tolerance * sup;
    if (zero_tolerance > 0.01 * sup) throw std::invalid_argument("decompose: zero_tolerance above 0.01 ||u||_inf");

    const std::size_t n = u.size();
    DisjointSets sets(n);
    auto sign_of = [&](std::size_t p) { return u[p] > zero_tolerance ? 1 : (u[p] < -zero_tolerance ? -1 : 0); };
    for (std::size_t p = 0; p < n; ++p) {
        const int s = sign_of(p);
        if (s == 0) continue;
        for (int q : g.neighbors_of(p))
            if (static_cast<std::size_t>(q) > p && sign_of(static_cast<std::size_t>(q)) == s)
                sets.unite(static_cast<int>(p), q);
    }

    NodalDecomposition nd;
    nd.zero_tolerance = zero_tolerance;
    nd.lambda = e.lambda;
    nd.index = e.index;
    nd.field = e.field;
    std::vector<int> slot(n, -1);
    for (std::size_t p = 0; p < n; ++p) {
        const int s = sign_of(p);
        if (s == 0) {
            nd.zero_set_volume += g.weights[p];
            continue;
        }
        const auto root = static_cast<std::size_t>(sets.find(static_cast<int>(p)));
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(nd.domains.size());
            nd.domains.emplace_back();
            nd.domains.back().sign = s;
        }
        NodalDomain& d = nd.domains[static_cast<std::size_t>(slot[root])];
        d.points.push_back(static_cast<int>(p));
        d.volume += g.weights[p];
        if (std::fabs(u[p]) > d.max_abs) {
            d.max_abs = std::fabs(u[p]);
            d.argmax = static_cast<int>(p);
        }
        if (g.on_boundary[p]) d.touches_boundary = true;
    }
    // domains were created in order of their smallest point, so a stable sort
    // breaks volume ties by position
    std::stable_sort(nd.domains.begin(), nd.domains.end(),
                     [](const NodalDomain& a, const NodalDomain& b) { return a.volume > b.volume; });
    return nd;
}

SuperlevelStats superlevel_volumes(const NodalDecomposition& nd, const std::vector<double>& deltas) {
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0 && deltas[i] < 1.0))
            throw std::invalid_argument("superlevel_volumes: deltas must lie in (0,1)");
        if (i > 0 && !(deltas[i] > deltas[i - 1]))
            throw std::invalid_argument("superlevel_volumes: deltas must be ascending");
    }
    SuperlevelStats out;
    out.deltas = deltas;
    const auto& u = nd.field.values;
    const auto& w = nd.field.grid->weights;
    for (const auto& d : nd.domains) {
        std::vector<double> vol(deltas.size(), 0.0);
        for (int p : d.points) {
            const auto up = static_cast<std::size_t>(p);
            const double a = std::fabs(u[up]);
            for (std::size_t k = 0; k < deltas.size(); ++k) {
                if (a < deltas[k] * d.max_abs) break;
                vol[k] += w[up];
            }
        }
        out.volumes.push_back(std::move(vol));
    }
    return out;
}

double extrema_power_sum(const NodalDecomposition& nd, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("extrema_power_sum: p must be >= 1");
    double s = 0.0;
    for (const auto& d : nd.domains) s = std::isinf(p) ? std::max(s, d.max_abs) : s + std::pow(d.max_abs, p);
    return s;
}

int count_high_extrema(const NodalDecomposition& nd, double a, int n) {
    if (!(a > 0.0)) throw std::invalid_argument("count_high_extrema: a must be positive");
    const double threshold = a * std::pow(nd.lambda, (n - 1) / 4.0);
    int c = 0;
    for (const auto& d : nd.domains) c += d.max_abs >= threshold;
    return c;
}

int count_touching_boundary(const NodalDecomposition& nd) {
    int c = 0;
    for (const auto& d : nd.domains) c += d.touches_boundary;
    return c;
}

std::vector<FaberKrahnRow> faber_krahn_check(const NodalDecomposition& nd, int n, double slack) {
    if (!nd.field.grid->euclidean) throw std::invalid_argument("faber_krahn_check: non-Euclidean domain");
    const double j = bessel_first_zero(BesselOrder(0.5 * n - 1.0));
    const double bound = std::pow(j, n) * unit_ball_volume(n) * std::pow(nd.lambda, -0.5 * n);
    std::vector<FaberKrahnRow> rows;
    for (const auto& d : nd.domains) {
        FaberKrahnRow r;
        r.volume = d.volume;
        r.bound = bound;
        r.pass = d.volume >= bound * (1.0 - slack);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace nodallab
