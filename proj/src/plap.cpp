#include "nodallab/plap.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nodallab {

namespace {

// phi_s(x) = |x|^{s-2} x
double phi(double s, double x) { return x == 0.0 ? 0.0 : std::copysign(std::pow(std::fabs(x), s - 1.0), x); }

struct State {
    double u;
    double w;
};

using Rhs = std::function<State(double, const State&)>;

State rk4(const Rhs& f, double x, const State& y, double h) {
    const State k1 = f(x, y);
    const State k2 = f(x + 0.5 * h, {y.u + 0.5 * h * k1.u, y.w + 0.5 * h * k1.w});
    const State k3 = f(x + 0.5 * h, {y.u + 0.5 * h * k2.u, y.w + 0.5 * h * k2.w});
    const State k4 = f(x + h, {y.u + h * k3.u, y.w + h * k3.w});
    return {y.u + h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
            y.w + h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w)};
}

// Root of a cubic Hermite interpolant on [0, h] with end values/slopes.
double hermite_root(double f0, double d0, double f1, double d1, double h) {
    auto value = [&](double t) {
        const double s = t / h;
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        const double h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s);
        const double h11 = s * s * (s - 1);
        return h00 * f0 + h10 * h * d0 + h01 * f1 + h11 * h * d1;
    };
    double lo = 0.0, hi = h;
    const bool neg0 = f0 < 0.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((value(mid) < 0.0) == neg0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct Shot {
    double event = std::numeric_limits<double>::infinity();  ///< position of the terminal event
    std::vector<double> samples;                              ///< u at every `stride` steps
};

// Integrates from x0 with step h until component `watch` of the state changes
// sign or x exceeds limit. Values are recorded every `stride` steps.
Shot shoot(const Rhs& f, double x0, State y, double h, double limit, bool watch_u, int stride) {
    Shot shot;
    double x = x0;
    long step = 0;
    if (stride > 0) shot.samples.push_back(y.u);
    while (x < limit) {
        const State next = rk4(f, x, y, h);
        const double a = watch_u ? y.u : y.w;
        const double b = watch_u ? next.u : next.w;
        if ((a > 0.0) != (b > 0.0) || b == 0.0) {
            const State da = f(x, y);
            const State db = f(x + h, next);
            shot.event = x + hermite_root(a, watch_u ? da.u : da.w, b, watch_u ? db.u : db.w, h);
            if (stride > 0 && (step + 1) % stride == 0) shot.samples.push_back(next.u);
            return shot;
        }
        y = next;
        x += h;
        ++step;
        if (stride > 0 && step % stride == 0) shot.samples.push_back(y.u);
    }
    return shot;
}

// Bisection in lambda on event(lambda) = target; event decreases with lambda.
double bisect_lambda(const std::function<double(double)>& event, double target, double guess) {
    double lo = 0.5 * guess;
    double hi = 4.0 * guess;
    for (int k = 0; event(lo) < target; ++k) {
        if (k > 200) throw std::runtime_error("p-Laplacian shooting: cannot bracket lambda");
        hi = lo;
        lo *= 0.25;
    }
    for (int k = 0; event(hi) > target; ++k) {
        if (k > 200) throw std::runtime_error("p-Laplacian shooting: cannot bracket lambda");
        lo = hi;
        hi *= 4.0;
    }
    for (int it = 0; it < 300 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (event(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::shared_ptr<Grid> chain_grid(int dimension, std::vector<double> coords, std::vector<double> weights) {
    auto g = std::make_shared<Grid>();
    g->dimension = dimension;
    g->euclidean = true;
    const std::size_t n = coords.size();
    g->coords.resize(n);
    g->on_boundary.assign(n, 0);
    g->neighbor_offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        g->coords[i] = {coords[i], 0.0, 0.0};
        if (i > 0) g->neighbors.push_back(static_cast<int>(i) - 1);
        if (i + 1 < n) g->neighbors.push_back(static_cast<int>(i) + 1);
        g->neighbor_offsets[i + 1] = static_cast<int>(g->neighbors.size());
    }
    g->on_boundary.back() = 1;
    if (dimension == 1) g->on_boundary.front() = 1;
    g->spacing = coords[1] - coords[0];
    g->weights = std::move(weights);
    for (double w : g->weights) g->total_measure += w;
    return g;
}

void normalize_p(ScalarField& f, double p) {
    const double norm = lp_norm(f, p);
    for (double& v : f.values) v /= norm;
}

void check_p(double p) {
    if (!(p > 1.0 && p <= 10.0)) throw std::invalid_argument("p-Laplacian: p must lie in (1, 10]");
}

}  // namespace

PLapEigenPair sinp_eigenpair(double p, double length) {
    check_p(p);
    if (!(length > 0.0)) throw std::invalid_argument("sinp_eigenpair: length must be positive");
    const double q = p / (p - 1.0);
    const int half = plap_samples / 2;  // samples 0..half-1 lie left of the center
    const double delta = length / (plap_samples - 1);
    const int sub = 20;
    const double h = delta / sub;
    const bool from_zero = p >= 2.0;

    auto rhs_for = [p, q](double lambda) -> Rhs {
        return [=](double, const State& y) { return State{phi(q, y.w), -lambda * phi(p, y.u)}; };
    };
    // distance from the start of the shot to its terminal event
    auto event = [&](double lambda, int stride, Shot* keep) {
        const Rhs f = rhs_for(lambda);
        Shot s = from_zero ? shoot(f, 0.0, {0.0, 1.0}, h, 4.0 * length, false, stride)
                           : shoot(f, 0.0, {1.0, 0.0}, h, 4.0 * length, true, stride);
        const double e = s.event;
        if (keep) *keep = std::move(s);
        return e;
    };

    PLapEigenPair out;
    out.p = p;
    out.dimension = 1;
    out.extent = length;
    out.domain_volume = length;
    const double guess = (std::numbers::pi / length) * (std::numbers::pi / length);
    out.lambda = bisect_lambda([&](double lam) { return event(lam, 0, nullptr); }, 0.5 * length, guess);

    std::vector<double> u(plap_samples, 0.0);
    if (from_zero) {
        Shot s;
        event(out.lambda, sub, &s);
        if (static_cast<int>(s.samples.size()) < half) throw std::runtime_error("sinp_eigenpair: short profile");
        for (int i = 0; i < half; ++i) u[static_cast<std::size_t>(i)] = s.samples[static_cast<std::size_t>(i)];
    } else {
        // from the center, the sample points sit at (j + 1/2) delta
        const Rhs f = rhs_for(out.lambda);
        State y{1.0, 0.0};
        double x = 0.0;
        for (int j = 0; j < half; ++j) {
            const int steps = j == 0 ? sub / 2 : sub;
            for (int k = 0; k < steps; ++k) {
                y = rk4(f, x, y, h);
                x += h;
            }
            u[static_cast<std::size_t>(half - 1 - j)] = std::max(0.0, y.u);
        }
    }
    u.front() = 0.0;
    for (int i = 0; i < half; ++i) u[static_cast<std::size_t>(plap_samples - 1 - i)] = u[static_cast<std::size_t>(i)];

    std::vector<double> xs(plap_samples), ws(plap_samples, delta);
    for (int i = 0; i < plap_samples; ++i) xs[static_cast<std::size_t>(i)] = i * delta;
    ws.front() = ws.back() = 0.5 * delta;
    out.profile.grid = chain_grid(1, std::move(xs), std::move(ws));
    out.profile.values = std::move(u);
    normalize_p(out.profile, p);
    return out;
}

PLapEigenPair radial_plap_eigenpair(double p, double radius) {
    check_p(p);
    if (!(radius > 0.0)) throw std::invalid_argument("radial_plap_eigenpair: radius must be positive");
    const int n = 2;
    const double q = p / (p - 1.0);
    const double delta = radius / (plap_samples - 1);
    const int sub = 10;
    const double h = delta / sub;

    // V = r^{n-1} |u'|^{p-2} u'
    auto rhs_for = [=](double lambda) -> Rhs {
        return [=](double r, const State& y) {
            return State{phi(q, y.w / std::pow(r, n - 1)), -lambda * std::pow(r, n - 1) * phi(p, y.u)};
        };
    };
    // leading series terms at r0: W = -lambda r / n, u = 1 - (p-1)/p (lambda/n)^{1/(p-1)} r^{p/(p-1)}
    auto start = [=](double lambda, double r0) {
        const double u0 = 1.0 - (p - 1.0) / p * std::pow(lambda / n, 1.0 / (p - 1.0)) * std::pow(r0, q);
        const double v0 = -lambda / n * std::pow(r0, n);
        return State{u0, v0};
    };

    PLapEigenPair out;
    out.p = p;
    out.dimension = 2;
    out.extent = radius;
    out.domain_volume = std::numbers::pi * radius * radius;
    auto event = [&](double lambda) {
        return shoot(rhs_for(lambda), h, start(lambda, h), h, 4.0 * radius, true, 0).event;
    };
    const double guess = 5.783185962946784 / (radius * radius);
    out.lambda = bisect_lambda(event, radius, guess);

    std::vector<double> u(plap_samples, 0.0);
    u[0] = 1.0;
    {
        const Rhs f = rhs_for(out.lambda);
        State y = start(out.lambda, h);
        double r = h;
        for (int i = 1; i < plap_samples; ++i) {
            const int steps = i == 1 ? sub - 1 : sub;
            for (int k = 0; k < steps; ++k) {
                y = rk4(f, r, y, h);
                r += h;
            }
            u[static_cast<std::size_t>(i)] = std::max(0.0, y.u);
        }
    }
    u.back() = 0.0;

    std::vector<double> rs(plap_samples), ws(plap_samples);
    for (int i = 0; i < plap_samples; ++i) {
        const double r = i * delta;
        const double a = std::max(0.0, r - 0.5 * delta);
        const double b = std::min(radius, r + 0.5 * delta);
        rs[static_cast<std::size_t>(i)] = r;
        ws[static_cast<std::size_t>(i)] = std::numbers::pi * (b * b - a * a);
    }
    out.profile.grid = chain_grid(2, std::move(rs), std::move(ws));
    out.profile.values = std::move(u);
    normalize_p(out.profile, p);
    return out;
}

BoundCheckReport check_lindqvist(const PLapEigenPair& e, int n, double domain_volume) {
    if (n < 1) throw std::invalid_argument("check_lindqvist: n must be >= 1");
    if (!(domain_volume > 0.0)) throw std::invalid_argument("check_lindqvist: volume must be positive");
    const double lhs = lp_norm(e.profile, infinity);
    const double c = std::pow(4.0, n);
    const double rhs = c * std::pow(domain_volume, 1.0 - 1.0 / e.p) * std::pow(e.lambda, n / e.p) *
                       lp_norm(e.profile, e.p);
    return make_report("Thm1.14", e.lambda, lhs, rhs, c, Provenance::explicit_constant, 0.0, "n/p");
}

PLapCount count_bound_plap(const std::vector<double>& m_values, double a, double lambda, int n, double p,
                           double domain_volume) {
    if (!(a > 0.0)) throw std::invalid_argument("count_bound_plap: a must be positive");
    PLapCount out;
    for (double m : m_values) out.count += m >= a;
    out.bound = std::pow(4.0, n) * std::pow(domain_volume, 1.0 - 1.0 / p) / a * std::pow(lambda, n / p);
    return out;
}

}  // namespace nodallab
