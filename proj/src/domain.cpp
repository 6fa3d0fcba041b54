#include "nodallab/domain.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <queue>
#include <stdexcept>

#include "json.hpp"
#include "nodallab/specfun.hpp"

namespace nodallab {

std::string to_string(DomainKind kind) {
    switch (kind) {
        case DomainKind::rectangle: return "rectangle";
        case DomainKind::box: return "box";
        case DomainKind::flat_torus: return "flat_torus";
        case DomainKind::disk: return "disk";
        case DomainKind::sphere: return "sphere_s2";
        case DomainKind::masked_grid: return "masked_grid";
    }
    return "unknown";
}

std::string to_string(BoundaryCondition bc) {
    return bc == BoundaryCondition::dirichlet ? "dirichlet" : "neumann";
}

std::size_t CellMask::count() const {
    std::size_t n = 0;
    for (auto a : active) n += a != 0;
    return n;
}

int DomainSpec::dimension() const {
    switch (kind) {
        case DomainKind::box: return 3;
        case DomainKind::flat_torus: return static_cast<int>(sides.size());
        default: return 2;
    }
}

double DomainSpec::effective_resolution() const {
    if (resolution > 0.0) return resolution;
    return dimension() == 3 ? 64.0 : 256.0;
}

std::string DomainSpec::canonical() const {
    nlohmann::json j;
    j["kind"] = to_string(kind);
    switch (kind) {
        case DomainKind::rectangle:
        case DomainKind::box:
            j["sides"] = sides;
            j["bc"] = to_string(bc);
            break;
        case DomainKind::flat_torus: j["periods"] = sides; break;
        case DomainKind::disk: j["radius"] = radius; break;
        case DomainKind::sphere: break;
        case DomainKind::masked_grid: {
            j["bc"] = to_string(bc);
            j["h"] = h;
            j["origin"] = origin;
            j["nx"] = mask.nx;
            j["ny"] = mask.ny;
            j["shape"] = shape_name;
            std::string bits;
            bits.reserve(mask.active.size());
            for (auto a : mask.active) bits.push_back(a ? '1' : '0');
            j["mask"] = bits;
            break;
        }
    }
    if (kind != DomainKind::masked_grid) {
        j["resolution"] = effective_resolution();
        j["points_per_axis"] = points_per_axis;
    }
    return j.dump();
}

std::string DomainSpec::hash() const {
    std::uint64_t h64 = 1469598103934665603ull;
    for (unsigned char c : canonical()) {
        h64 ^= c;
        h64 *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h64));
    return buf;
}

DomainSpec DomainSpec::rectangle(double a, double b, BoundaryCondition bc) {
    if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("rectangle: side lengths must be positive");
    DomainSpec d;
    d.kind = DomainKind::rectangle;
    d.sides = {a, b};
    d.bc = bc;
    return d;
}

DomainSpec DomainSpec::box(double a, double b, double c) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw std::invalid_argument("box: side lengths must be positive");
    DomainSpec d;
    d.kind = DomainKind::box;
    d.sides = {a, b, c};
    return d;
}

DomainSpec DomainSpec::torus(std::vector<double> periods) {
    if (periods.size() < 2 || periods.size() > 3)
        throw std::invalid_argument("torus: dimension must be 2 or 3");
    for (double p : periods)
        if (!(p > 0.0)) throw std::invalid_argument("torus: periods must be positive");
    DomainSpec d;
    d.kind = DomainKind::flat_torus;
    d.sides = std::move(periods);
    return d;
}

DomainSpec DomainSpec::disk(double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("disk: radius must be positive");
    DomainSpec d;
    d.kind = DomainKind::disk;
    d.radius = radius;
    return d;
}

DomainSpec DomainSpec::sphere() {
    DomainSpec d;
    d.kind = DomainKind::sphere;
    return d;
}

DomainSpec DomainSpec::masked(CellMask mask, double h, BoundaryCondition bc, std::string shape_name,
                              std::array<double, 2> origin) {
    if (!(h > 0.0)) throw std::invalid_argument("masked grid: h must be positive");
    if (mask.nx <= 0 || mask.ny <= 0 ||
        mask.active.size() != static_cast<std::size_t>(mask.nx) * static_cast<std::size_t>(mask.ny))
        throw std::invalid_argument("masked grid: mask dimensions inconsistent");
    DomainSpec d;
    d.kind = DomainKind::masked_grid;
    d.mask = std::move(mask);
    d.h = h;
    d.bc = bc;
    d.shape_name = std::move(shape_name);
    d.origin = origin;
    return d;
}

namespace {

int cells_along(double length, double h) {
    const double n = length / h;
    const long r = std::lround(n);
    if (std::fabs(n - static_cast<double>(r)) > 1e-9 * std::max(1.0, n))
        throw std::invalid_argument("masked grid: side length must be a multiple of h");
    return static_cast<int>(r);
}

}  // namespace

DomainSpec DomainSpec::masked_rectangle(double a, double b, double h, BoundaryCondition bc) {
    CellMask m;
    m.nx = cells_along(a, h);
    m.ny = cells_along(b, h);
    m.active.assign(static_cast<std::size_t>(m.nx) * m.ny, 1);
    return masked(std::move(m), h, bc, a == b ? "square" : "rectangle");
}

DomainSpec DomainSpec::masked_lshape(double h, BoundaryCondition bc) {
    CellMask m;
    m.nx = cells_along(2.0, h);
    m.ny = m.nx;
    const int half = m.nx / 2;
    m.active.assign(static_cast<std::size_t>(m.nx) * m.ny, 1);
    for (int j = half; j < m.ny; ++j)
        for (int i = half; i < m.nx; ++i) m.active[static_cast<std::size_t>(i + m.nx * j)] = 0;
    return masked(std::move(m), h, bc, "lshape");
}

DomainSpec DomainSpec::masked_disk(double radius, double h, BoundaryCondition bc) {
    CellMask m;
    m.nx = 2 * static_cast<int>(std::ceil(radius / h));
    m.ny = m.nx;
    m.active.assign(static_cast<std::size_t>(m.nx) * m.ny, 0);
    const double o = -h * m.nx / 2.0;
    for (int j = 0; j < m.ny; ++j)
        for (int i = 0; i < m.nx; ++i) {
            const double x = o + (i + 0.5) * h;
            const double y = o + (j + 0.5) * h;
            if (x * x + y * y < radius * radius) m.active[static_cast<std::size_t>(i + m.nx * j)] = 1;
        }
    return masked(std::move(m), h, bc, "disk", {o, o});
}

namespace {

struct LatticeLayout {
    int dim = 2;
    std::array<int, 3> n{1, 1, 1};
    std::array<double, 3> step{1.0, 1.0, 1.0};
    std::array<double, 3> offset{0.0, 0.0, 0.0};  ///< coordinate of lattice index 0
    std::array<bool, 3> periodic{false, false, false};
};

// Builds a 4/6-neighbor lattice grid over the active lattice sites. Non-periodic
// faces mark adjacent sites as boundary; so do missing (inactive) neighbors.
std::shared_ptr<Grid> lattice_grid(const LatticeLayout& L, const std::vector<std::uint8_t>* active,
                                   bool euclidean) {
    auto g = std::make_shared<Grid>();
    g->dimension = L.dim;
    g->euclidean = euclidean;
    g->shape = L.n;
    const std::size_t total = static_cast<std::size_t>(L.n[0]) * L.n[1] * L.n[2];
    std::vector<int> point_of(total, -1);
    double cell = 1.0;
    for (int a = 0; a < L.dim; ++a) cell *= L.step[static_cast<std::size_t>(a)];
    g->spacing = L.step[0];
    for (int a = 0; a < L.dim; ++a) g->steps[static_cast<std::size_t>(a)] = L.step[static_cast<std::size_t>(a)];

    for (std::size_t f = 0; f < total; ++f) {
        if (active && !(*active)[f]) continue;
        point_of[f] = static_cast<int>(g->lattice_index.size());
        g->lattice_index.push_back(static_cast<int>(f));
    }
    const std::size_t npts = g->lattice_index.size();
    g->weights.assign(npts, cell);
    g->coords.resize(npts);
    g->on_boundary.assign(npts, 0);
    g->neighbor_offsets.assign(npts + 1, 0);
    g->neighbors.reserve(npts * static_cast<std::size_t>(2 * L.dim));

    for (std::size_t p = 0; p < npts; ++p) {
        const int f = g->lattice_index[p];
        std::array<int, 3> idx{f % L.n[0], (f / L.n[0]) % L.n[1], f / (L.n[0] * L.n[1])};
        for (int a = 0; a < 3; ++a) {
            const auto ua = static_cast<std::size_t>(a);
            g->coords[p][ua] = a < L.dim ? L.offset[ua] + idx[ua] * L.step[ua] : 0.0;
        }
        for (int a = 0; a < L.dim; ++a) {
            const auto ua = static_cast<std::size_t>(a);
            for (int dir : {-1, 1}) {
                auto nb = idx;
                nb[ua] += dir;
                if (nb[ua] < 0 || nb[ua] >= L.n[ua]) {
                    if (!L.periodic[ua]) {
                        g->on_boundary[p] = 1;
                        continue;
                    }
                    nb[ua] = (nb[ua] + L.n[ua]) % L.n[ua];
                }
                const int nf = nb[0] + L.n[0] * (nb[1] + L.n[1] * nb[2]);
                const int q = point_of[static_cast<std::size_t>(nf)];
                if (q < 0) {
                    g->on_boundary[p] = 1;
                    continue;
                }
                if (q == static_cast<int>(p)) continue;  // periodic axis of length 1
                g->neighbors.push_back(q);
            }
        }
        g->neighbor_offsets[p + 1] = static_cast<int>(g->neighbors.size());
    }
    g->total_measure = cell * static_cast<double>(npts);
    return g;
}

int axis_points(const DomainSpec& d, std::size_t axis, double length) {
    if (axis < d.points_per_axis.size()) {
        if (d.points_per_axis[axis] < 2) throw std::invalid_argument("points_per_axis must be >= 2");
        return d.points_per_axis[axis];
    }
    return std::max(2, static_cast<int>(std::lround(length * d.effective_resolution())));
}

// Clenshaw-Curtis weights in x = cos(theta) for the nodes theta_k = k pi / n,
// k = 0..n. They tend to sin(theta) dtheta and integrate polynomials in
// cos(theta) of degree <= n exactly.
std::vector<double> clenshaw_curtis_weights(int n) {
    std::vector<double> w(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        double s = 1.0;
        for (int j = 1; j <= n / 2; ++j) {
            const double b = (2 * j == n) ? 1.0 : 2.0;
            s -= b / (4.0 * j * j - 1.0) * std::cos(2.0 * j * k * std::numbers::pi / n);
        }
        const double c = (k == 0 || k == n) ? 1.0 : 2.0;
        w[static_cast<std::size_t>(k)] = c / n * s;
    }
    return w;
}

std::shared_ptr<Grid> sphere_grid(const DomainSpec& d) {
    const int n_theta = d.points_per_axis.empty() ? 256 : d.points_per_axis[0];
    if (n_theta < 4 || n_theta % 2 != 0)
        throw std::invalid_argument("sphere grid: latitude steps must be even and >= 4");
    const int n_phi = 2 * n_theta;
    const double dt = std::numbers::pi / n_theta;
    const double dp = 2.0 * std::numbers::pi / n_phi;
    const int rings = n_theta - 1;

    auto g = std::make_shared<Grid>();
    g->dimension = 2;
    g->euclidean = false;
    const std::size_t npts = static_cast<std::size_t>(rings) * n_phi + 2;
    g->weights.resize(npts);
    g->coords.resize(npts);
    g->on_boundary.assign(npts, 0);
    const std::vector<double> cc = clenshaw_curtis_weights(n_theta);
    const std::size_t north = 0;
    const std::size_t south = npts - 1;
    auto id = [n_phi](int ring, int k) { return 1 + ring * n_phi + ((k % n_phi) + n_phi) % n_phi; };

    g->weights[north] = 2.0 * std::numbers::pi * cc.front();
    g->coords[north] = {0.0, 0.0, 0.0};
    g->weights[south] = 2.0 * std::numbers::pi * cc.back();
    g->coords[south] = {std::numbers::pi, 0.0, 0.0};
    for (int r = 0; r < rings; ++r) {
        const double theta = (r + 1) * dt;
        for (int k = 0; k < n_phi; ++k) {
            const auto p = static_cast<std::size_t>(id(r, k));
            g->weights[p] = cc[static_cast<std::size_t>(r + 1)] * dp;
            g->coords[p] = {theta, k * dp, 0.0};
        }
    }
    g->neighbor_offsets.assign(npts + 1, 0);
    std::vector<std::vector<int>> adj(npts);
    for (int k = 0; k < n_phi; ++k) {
        adj[north].push_back(id(0, k));
        adj[south].push_back(id(rings - 1, k));
    }
    for (int r = 0; r < rings; ++r)
        for (int k = 0; k < n_phi; ++k) {
            auto& a = adj[static_cast<std::size_t>(id(r, k))];
            a.push_back(id(r, k - 1));
            a.push_back(id(r, k + 1));
            a.push_back(r == 0 ? static_cast<int>(north) : id(r - 1, k));
            a.push_back(r == rings - 1 ? static_cast<int>(south) : id(r + 1, k));
        }
    for (std::size_t p = 0; p < npts; ++p) {
        g->neighbors.insert(g->neighbors.end(), adj[p].begin(), adj[p].end());
        g->neighbor_offsets[p + 1] = static_cast<int>(g->neighbors.size());
    }
    for (double w : g->weights) g->total_measure += w;
    return g;
}

// Polar disk: Gauss-Legendre radial nodes on (0, R), uniform angles. Ring cycles
// plus radial links at equal angle; no center sample.
std::shared_ptr<Grid> disk_grid(const DomainSpec& d) {
    const double R = d.radius;
    const double res = d.effective_resolution();
    const int n_r = d.points_per_axis.size() > 0 ? d.points_per_axis[0]
                                                  : std::max(16, static_cast<int>(std::ceil(0.5 * res * R)));
    const int n_t = d.points_per_axis.size() > 1
                        ? d.points_per_axis[1]
                        : std::max(64, static_cast<int>(std::ceil(std::numbers::pi * res * R)));
    const QuadratureRule rule = gauss_legendre(n_r, 0.0, R);
    const double dtheta = 2.0 * std::numbers::pi / n_t;

    auto g = std::make_shared<Grid>();
    g->dimension = 2;
    g->euclidean = true;
    const std::size_t npts = static_cast<std::size_t>(n_r) * n_t;
    g->weights.resize(npts);
    g->coords.resize(npts);
    g->on_boundary.assign(npts, 0);
    g->neighbor_offsets.assign(npts + 1, 0);
    auto id = [n_t](int i, int k) { return i * n_t + ((k % n_t) + n_t) % n_t; };
    for (int i = 0; i < n_r; ++i) {
        const double r = rule.nodes[static_cast<std::size_t>(i)];
        for (int k = 0; k < n_t; ++k) {
            const auto p = static_cast<std::size_t>(id(i, k));
            g->weights[p] = rule.weights[static_cast<std::size_t>(i)] * r * dtheta;
            g->coords[p] = {r, k * dtheta, 0.0};
            g->on_boundary[p] = i == n_r - 1;
            g->neighbors.push_back(id(i, k - 1));
            g->neighbors.push_back(id(i, k + 1));
            if (i > 0) g->neighbors.push_back(id(i - 1, k));
            if (i < n_r - 1) g->neighbors.push_back(id(i + 1, k));
            g->neighbor_offsets[p + 1] = static_cast<int>(g->neighbors.size());
        }
    }
    for (double w : g->weights) g->total_measure += w;
    return g;
}

void require_connected(const Grid& g) {
    if (g.size() == 0) throw std::invalid_argument("masked grid: no active cells");
    std::vector<std::uint8_t> seen(g.size(), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
        const int p = q.front();
        q.pop();
        for (int nb : g.neighbors_of(static_cast<std::size_t>(p)))
            if (!seen[static_cast<std::size_t>(nb)]) {
                seen[static_cast<std::size_t>(nb)] = 1;
                ++reached;
                q.push(nb);
            }
    }
    if (reached != g.size()) throw std::invalid_argument("masked grid: active cells are not connected");
}

}  // namespace

std::shared_ptr<const Grid> build_grid(const DomainSpec& d) {
    switch (d.kind) {
        case DomainKind::rectangle:
        case DomainKind::box: {
            LatticeLayout L;
            L.dim = d.dimension();
            for (std::size_t a = 0; a < static_cast<std::size_t>(L.dim); ++a) {
                L.n[a] = axis_points(d, a, d.sides[a]);
                L.step[a] = d.sides[a] / L.n[a];
                L.offset[a] = 0.5 * L.step[a];
            }
            return lattice_grid(L, nullptr, true);
        }
        case DomainKind::flat_torus: {
            LatticeLayout L;
            L.dim = d.dimension();
            for (std::size_t a = 0; a < static_cast<std::size_t>(L.dim); ++a) {
                L.n[a] = axis_points(d, a, d.sides[a]);
                L.step[a] = d.sides[a] / L.n[a];
                L.periodic[a] = true;
            }
            return lattice_grid(L, nullptr, false);
        }
        case DomainKind::disk: return disk_grid(d);
        case DomainKind::sphere: return sphere_grid(d);
        case DomainKind::masked_grid: {
            LatticeLayout L;
            L.dim = 2;
            L.n = {d.mask.nx, d.mask.ny, 1};
            L.step = {d.h, d.h, 1.0};
            L.offset = {d.origin[0] + 0.5 * d.h, d.origin[1] + 0.5 * d.h, 0.0};
            auto g = lattice_grid(L, &d.mask.active, true);
            require_connected(*g);
            return g;
        }
    }
    throw std::invalid_argument("build_grid: unsupported domain kind");
}

}  // namespace nodallab
