#include "nodallab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <tuple>

#include "nodallab/specfun.hpp"

namespace nodallab {

namespace {

constexpr double pi = std::numbers::pi;

// Sort position of a signed sphere order m: 0, 1, -1, 2, -2, ...
int sphere_order_rank(int m) { return m == 0 ? 0 : (m > 0 ? 2 * m - 1 : -2 * m); }

std::tuple<int, int, int, int> tie_key(DomainKind kind, const Mode& m) {
    if (kind == DomainKind::sphere) return {m.q[0], sphere_order_rank(m.q[1]), 0, 0};
    return {m.q[0], m.q[1], m.q[2], m.variant};
}

class ModeEnumerator {
public:
    explicit ModeEnumerator(const DomainSpec& d) : d_(d) {}

    // All modes with lambda <= cap.
    std::vector<Mode> below(double cap) {
        std::vector<Mode> out;
        switch (d_.kind) {
            case DomainKind::rectangle: rectangle(cap, out); break;
            case DomainKind::box: box(cap, out); break;
            case DomainKind::flat_torus: torus(cap, out); break;
            case DomainKind::disk: disk(cap, out); break;
            case DomainKind::sphere: sphere(cap, out); break;
            case DomainKind::masked_grid: throw std::invalid_argument("analytic_modes: unsupported kind masked_grid");
        }
        return out;
    }

private:
    void rectangle(double cap, std::vector<Mode>& out) const {
        const int lo = d_.bc == BoundaryCondition::dirichlet ? 1 : 0;
        const double ca = pi / d_.sides[0];
        const double cb = pi / d_.sides[1];
        const bool square = d_.sides[0] == d_.sides[1];
        for (int k = lo; (k * ca) * (k * ca) + (lo * cb) * (lo * cb) <= cap; ++k)
            for (int l = lo;; ++l) {
                const double lam = square ? ca * ca * (k * k + l * l) : (k * ca) * (k * ca) + (l * cb) * (l * cb);
                if (lam > cap) break;
                Mode m;
                m.lambda = lam;
                m.q = {k, l, 0};
                out.push_back(m);
            }
    }

    void box(double cap, std::vector<Mode>& out) const {
        const double c0 = pi / d_.sides[0];
        const double c1 = pi / d_.sides[1];
        const double c2 = pi / d_.sides[2];
        const bool cube = d_.sides[0] == d_.sides[1] && d_.sides[1] == d_.sides[2];
        for (int k = 1; (k * c0) * (k * c0) + c1 * c1 + c2 * c2 <= cap; ++k)
            for (int l = 1; (k * c0) * (k * c0) + (l * c1) * (l * c1) + c2 * c2 <= cap; ++l)
                for (int j = 1;; ++j) {
                    const double lam = cube ? c0 * c0 * (k * k + l * l + j * j)
                                            : (k * c0) * (k * c0) + (l * c1) * (l * c1) + (j * c2) * (j * c2);
                    if (lam > cap) break;
                    Mode m;
                    m.lambda = lam;
                    m.q = {k, l, j};
                    out.push_back(m);
                }
    }

    void torus(double cap, std::vector<Mode>& out) const {
        const int dim = d_.dimension();
        std::array<double, 3> c{0.0, 0.0, 0.0};
        std::array<int, 3> kmax{0, 0, 0};
        bool equal = true;
        for (int a = 0; a < dim; ++a) {
            const auto ua = static_cast<std::size_t>(a);
            c[ua] = 2.0 * pi / d_.sides[ua];
            kmax[ua] = static_cast<int>(std::floor(std::sqrt(cap) / c[ua])) + 1;
            equal = equal && d_.sides[ua] == d_.sides[0];
        }
        std::array<int, 3> k{0, 0, 0};
        for (k[0] = 0; k[0] <= kmax[0]; ++k[0])
            for (k[1] = 0; k[1] <= kmax[1]; ++k[1])
                for (k[2] = 0; k[2] <= (dim == 3 ? kmax[2] : 0); ++k[2]) {
                    double lam = 0.0;
                    if (equal) {
                        lam = c[0] * c[0] * (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
                    } else {
                        for (int a = 0; a < dim; ++a) {
                            const auto ua = static_cast<std::size_t>(a);
                            lam += (k[ua] * c[ua]) * (k[ua] * c[ua]);
                        }
                    }
                    if (lam > cap) continue;
                    int free_mask = 0;
                    for (int a = 0; a < dim; ++a)
                        if (k[static_cast<std::size_t>(a)] > 0) free_mask |= 1 << a;
                    // every subset of the nonzero axes picks sin
                    for (int v = free_mask;; v = (v - 1) & free_mask) {
                        Mode m;
                        m.lambda = lam;
                        m.q = k;
                        m.variant = v;
                        out.push_back(m);
                        if (v == 0) break;
                    }
                }
    }

    void disk(double cap, std::vector<Mode>& out) {
        const double jmax = std::sqrt(cap) * d_.radius;
        for (int m = 0; m <= static_cast<int>(jmax) + 1; ++m) {
            auto& zeros = zeros_[m];
            while (zeros.empty() || zeros.back() <= jmax) {
                const double z = zeros.empty() ? bessel_zero(BesselOrder(m), 1)
                                               : next_zero(m, zeros.back());
                zeros.push_back(z);
            }
            for (std::size_t s = 0; s < zeros.size() && zeros[s] <= jmax; ++s) {
                Mode mode;
                mode.lambda = (zeros[s] / d_.radius) * (zeros[s] / d_.radius);
                mode.q = {m, static_cast<int>(s) + 1, 0};
                out.push_back(mode);
                if (m > 0) {
                    mode.variant = 1;
                    out.push_back(mode);
                }
            }
        }
    }

    static double next_zero(int m, double prev) {
        // zeros of J_m interlace with spacing in (pi/2, 2 pi) past the first
        const BesselOrder order(m);
        double a = prev + 0.5;
        double fa = bessel_j(order, a);
        for (double b = a + 0.05;; b += 0.05) {
            const double fb = bessel_j(order, b);
            if ((fa < 0.0) != (fb < 0.0)) {
                double lo = b - 0.05;
                double hi = b;
                for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if ((bessel_j(order, mid) < 0.0) == (fa < 0.0))
                        lo = mid;
                    else
                        hi = mid;
                }
                return 0.5 * (lo + hi);
            }
            fa = fb;
            if (b > prev + 12.0) throw std::runtime_error("disk modes: Bessel zero scan failed");
        }
    }

    void sphere(double cap, std::vector<Mode>& out) const {
        for (int l = 0; static_cast<double>(l) * (l + 1) <= cap; ++l)
            for (int m = -l; m <= l; ++m) {
                Mode mode;
                mode.lambda = static_cast<double>(l) * (l + 1);
                mode.q = {l, m, 0};
                out.push_back(mode);
            }
    }

    const DomainSpec& d_;
    std::map<int, std::vector<double>> zeros_;
};

}  // namespace

std::string Mode::label(DomainKind kind) const {
    auto trig = [this](int axis) { return (variant >> axis) & 1 ? "sin" : "cos"; };
    switch (kind) {
        case DomainKind::rectangle:
            return "(" + std::to_string(q[0]) + "," + std::to_string(q[1]) + ")";
        case DomainKind::box:
            return "(" + std::to_string(q[0]) + "," + std::to_string(q[1]) + "," + std::to_string(q[2]) + ")";
        case DomainKind::flat_torus: {
            std::string s;
            for (int a = 0; a < 3; ++a) {
                if (q[static_cast<std::size_t>(a)] == 0) continue;
                if (!s.empty()) s += "*";
                s += std::string(trig(a)) + std::to_string(q[static_cast<std::size_t>(a)]) + "x" + std::to_string(a + 1);
            }
            return s.empty() ? "1" : s;
        }
        case DomainKind::disk:
            return "J" + std::to_string(q[0]) + "," + std::to_string(q[1]) +
                   (q[0] == 0 ? "" : (variant ? ".sin" : ".cos"));
        case DomainKind::sphere: return "Y" + std::to_string(q[0]) + "," + std::to_string(q[1]);
        case DomainKind::masked_grid: break;
    }
    return "?";
}

std::vector<Mode> analytic_modes(const DomainSpec& d, int count) {
    if (count < 1) throw std::invalid_argument("analytic_modes: count must be >= 1");
    ModeEnumerator en(d);
    double cap = 16.0;
    std::vector<Mode> modes = en.below(cap);
    while (static_cast<int>(modes.size()) < count) {
        cap *= 2.0;
        modes = en.below(cap);
    }
    std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) { return a.lambda < b.lambda; });
    // order near-equal eigenvalues by quantum numbers
    for (std::size_t i = 0; i < modes.size();) {
        std::size_t j = i + 1;
        while (j < modes.size() && modes[j].lambda - modes[i].lambda <= 1e-12 * std::max(1.0, modes[i].lambda)) ++j;
        std::sort(modes.begin() + static_cast<std::ptrdiff_t>(i), modes.begin() + static_cast<std::ptrdiff_t>(j),
                  [&](const Mode& a, const Mode& b) { return tie_key(d.kind, a) < tie_key(d.kind, b); });
        i = j;
    }
    modes.resize(static_cast<std::size_t>(count));
    return modes;
}

std::vector<double> sample_mode(const DomainSpec& d, const Grid& grid, const Mode& mode) {
    std::vector<double> u(grid.size());
    switch (d.kind) {
        case DomainKind::rectangle:
        case DomainKind::box: {
            const bool sine = d.bc == BoundaryCondition::dirichlet || d.kind == DomainKind::box;
            const int dim = d.dimension();
            for (std::size_t p = 0; p < u.size(); ++p) {
                double v = 1.0;
                for (int a = 0; a < dim; ++a) {
                    const auto ua = static_cast<std::size_t>(a);
                    const double arg = mode.q[ua] * pi * grid.coords[p][ua] / d.sides[ua];
                    v *= sine ? std::sin(arg) : std::cos(arg);
                }
                u[p] = v;
            }
            break;
        }
        case DomainKind::flat_torus: {
            const int dim = d.dimension();
            for (std::size_t p = 0; p < u.size(); ++p) {
                double v = 1.0;
                for (int a = 0; a < dim; ++a) {
                    const auto ua = static_cast<std::size_t>(a);
                    if (mode.q[ua] == 0) continue;
                    const double arg = 2.0 * pi * mode.q[ua] * grid.coords[p][ua] / d.sides[ua];
                    v *= (mode.variant >> a) & 1 ? std::sin(arg) : std::cos(arg);
                }
                u[p] = v;
            }
            break;
        }
        case DomainKind::disk: {
            const int m = mode.q[0];
            const double k = std::sqrt(mode.lambda);
            const BesselOrder order(m);
            double last_r = -1.0;
            double radial = 0.0;
            for (std::size_t p = 0; p < u.size(); ++p) {
                const double r = grid.coords[p][0];
                if (r != last_r) {
                    radial = bessel_j(order, k * r);
                    last_r = r;
                }
                const double th = grid.coords[p][1];
                u[p] = radial * (m == 0 ? 1.0 : (mode.variant ? std::sin(m * th) : std::cos(m * th)));
            }
            break;
        }
        case DomainKind::sphere: {
            const auto l = static_cast<unsigned>(mode.q[0]);
            const int m = mode.q[1];
            const auto am = static_cast<unsigned>(std::abs(m));
            double last_t = -1.0;
            double polar = 0.0;
            for (std::size_t p = 0; p < u.size(); ++p) {
                const double t = grid.coords[p][0];
                if (t != last_t) {
                    polar = std::sph_legendre(l, am, t) * (m == 0 ? 1.0 : std::numbers::sqrt2);
                    last_t = t;
                }
                const double ph = grid.coords[p][1];
                u[p] = polar * (m == 0 ? 1.0 : (m > 0 ? std::cos(am * ph) : std::sin(am * ph)));
            }
            break;
        }
        case DomainKind::masked_grid: throw std::invalid_argument("sample_mode: unsupported kind masked_grid");
    }
    return u;
}

EigenPair make_eigenpair(const DomainSpec& d, std::shared_ptr<const Grid> grid, const Mode& mode, int index) {
    EigenPair e;
    e.lambda = mode.lambda;
    e.field.values = sample_mode(d, *grid, mode);
    e.field.grid = std::move(grid);
    e.index = index;
    e.label = mode.label(d.kind);
    return normalize(std::move(e));
}

std::vector<EigenPair> analytic_spectrum(const DomainSpec& d, int count) {
    const auto modes = analytic_modes(d, count);
    const auto grid = build_grid(d);
    std::vector<EigenPair> out;
    out.reserve(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i)
        out.push_back(make_eigenpair(d, grid, modes[i], static_cast<int>(i) + 1));
    return out;
}

SparseMatrix lattice_laplacian(const Grid& grid, BoundaryCondition bc) {
    if (grid.lattice_index.size() != grid.size())
        throw std::invalid_argument("lattice_laplacian: grid is not a lattice");
    const auto n = static_cast<Eigen::Index>(grid.size());
    const int dim = grid.dimension;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(grid.size() * static_cast<std::size_t>(2 * dim + 1));
    const int n0 = grid.shape[0];
    const int n01 = grid.shape[0] * grid.shape[1];
    for (std::size_t p = 0; p < grid.size(); ++p) {
        const int fp = grid.lattice_index[p];
        std::array<int, 3> present{0, 0, 0};
        double diag = 0.0;
        for (int q : grid.neighbors_of(p)) {
            const int fq = grid.lattice_index[static_cast<std::size_t>(q)];
            // axis of the link from the flat-index difference (periodic wraps included)
            const int axis = (fq / n0 == fp / n0 && fq / n01 == fp / n01) ? 0 : (fq / n01 == fp / n01 ? 1 : 2);
            const double s = grid.steps[static_cast<std::size_t>(axis)];
            const double c = 1.0 / (s * s);
            ++present[static_cast<std::size_t>(axis)];
            trip.emplace_back(static_cast<int>(p), q, -c);
            diag += c;
        }
        for (int a = 0; a < dim; ++a) {
            const auto ua = static_cast<std::size_t>(a);
            const int missing = 2 - present[ua];
            if (missing > 0 && bc == BoundaryCondition::dirichlet)
                diag += 2.0 * missing / (grid.steps[ua] * grid.steps[ua]);
        }
        trip.emplace_back(static_cast<int>(p), static_cast<int>(p), diag);
    }
    SparseMatrix a(n, n);
    a.setFromTriplets(trip.begin(), trip.end());
    return a;
}

std::vector<EigenPair> fd_spectrum(const DomainSpec& d, int count, SolverInfo* info) {
    if (d.kind != DomainKind::masked_grid) throw std::invalid_argument("fd_spectrum: requires a masked grid");
    const auto grid = build_grid(d);
    const auto n = static_cast<int>(grid->size());
    if (n > 20000) throw std::invalid_argument("fd_spectrum: more than 20000 active points");
    if (count < 1 || count > std::min(n, 200)) throw std::invalid_argument("fd_spectrum: count out of range");

    const SparseMatrix a = lattice_laplacian(*grid, d.bc);
    const bool dense = n <= dense_limit;
    const LowestEigenpairs eig = dense ? dense_lowest(a, count) : krylov_lowest(a, count);
    if (info) {
        info->dense = dense;
        info->restarts = eig.restarts;
        info->max_residual = eig.residuals.maxCoeff();
    }

    std::vector<EigenPair> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        EigenPair e;
        e.lambda = eig.values(k);
        e.index = k + 1;
        e.label = "fd" + std::to_string(k + 1);
        e.field.grid = grid;
        e.field.values.resize(grid->size());
        Eigen::Index big = 0;
        eig.vectors.col(k).cwiseAbs().maxCoeff(&big);
        const double sign = eig.vectors(big, k) < 0.0 ? -1.0 : 1.0;
        for (std::size_t p = 0; p < grid->size(); ++p)
            e.field.values[p] = sign * eig.vectors(static_cast<Eigen::Index>(p), k);
        out.push_back(normalize(std::move(e)));
    }
    return out;
}

std::vector<EigenPair> compute_spectrum(const DomainSpec& d, int count) {
    return d.kind == DomainKind::masked_grid ? fd_spectrum(d, count) : analytic_spectrum(d, count);
}

EigenPair normalize(EigenPair e) {
    const double norm = lp_norm(e.field, 2.0);
    if (!(norm > 0.0)) throw std::invalid_argument("normalize: zero field");
    for (double& v : e.field.values) v /= norm;
    e.norm_l2 = lp_norm(e.field, 2.0);
    return e;
}

double lp_norm(const ScalarField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.values) m = std::max(m, std::fabs(v));
        return m;
    }
    const auto& w = f.grid->weights;
    double s = 0.0;
    if (p == 2.0) {
        for (std::size_t i = 0; i < f.values.size(); ++i) s += f.values[i] * f.values[i] * w[i];
        return std::sqrt(s);
    }
    for (std::size_t i = 0; i < f.values.size(); ++i) s += std::pow(std::fabs(f.values[i]), p) * w[i];
    return std::pow(s, 1.0 / p);
}

double discrete_mean(const ScalarField& f) {
    const auto& w = f.grid->weights;
    double s = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) s += f.values[i] * w[i];
    return s / f.grid->total_measure;
}

double inner_product(const ScalarField& a, const ScalarField& b) {
    if (a.grid != b.grid) throw std::invalid_argument("inner_product: fields live on different grids");
    const auto& w = a.grid->weights;
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i] * w[i];
    return s;
}

}  // namespace nodallab
