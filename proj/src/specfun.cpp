#include "nodallab/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>

namespace nodallab {

namespace {

constexpr double kSeriesCrossover = 12.0;

// 2^{-nu} sum_k (-x^2/4)^k / (k! Gamma(k+nu+1)), i.e. x^{-nu} J_nu(x).
double scaled_series(double nu, double x) {
    const long double q = -0.25L * static_cast<long double>(x) * x;
    long double term = 1.0L / std::tgamma(static_cast<long double>(nu) + 1.0L);
    long double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<long double>(k) * (k + nu));
        sum += term;
        if (std::fabs(term) < 1e-21L * std::fabs(sum) && k > 2) break;
    }
    return static_cast<double>(sum * std::pow(2.0L, -static_cast<long double>(nu)));
}

// Miller backward recurrence for J_{nu+k}(x), normalized with
// (x/2)^nu = sum_k (nu+2k) Gamma(nu+k)/k! J_{nu+2k}(x).
double miller(double nu, double x) {
    const int top = static_cast<int>(std::ceil(nu + std::max(2.0 * x, x + 40.0))) + 20;
    double f_next = 0.0;
    double f = 1e-30;
    std::vector<double> values(static_cast<size_t>(top) + 1, 0.0);
    values[static_cast<size_t>(top)] = f;
    for (int k = top; k >= 1; --k) {
        const double mu = nu + k;
        const double f_prev = 2.0 * mu / x * f - f_next;
        f_next = f;
        f = f_prev;
        values[static_cast<size_t>(k - 1)] = f;
        if (std::fabs(f) > 1e250) {
            for (int j = k - 1; j <= top; ++j) values[static_cast<size_t>(j)] *= 1e-250;
            f *= 1e-250;
            f_next *= 1e-250;
        }
    }
    const double f_nu = values[0];
    // normalization sum; c_k = (nu+2k) Gamma(nu+k)/k!, c_0 = Gamma(nu+1)
    double g = std::tgamma(nu + 1.0);  // Gamma(nu+k)/k! at k = 1
    double sum = g * values[0];
    for (int k = 1; 2 * k <= top; ++k) {
        if (k > 1) g *= (nu + k - 1.0) / k;
        sum += (nu + 2.0 * k) * g * values[static_cast<size_t>(2 * k)];
    }
    return f_nu / sum * std::pow(0.5 * x, nu);
}

void check_argument(double x) {
    if (!std::isfinite(x) || x < 0.0)
        throw std::domain_error("bessel_j: argument must be finite and >= 0, got " +
                                std::to_string(x));
}

double find_zero_after(double nu, double start, double stop) {
    const BesselOrder order(nu);
    const double step = 0.05;
    double lo = start;
    double f_lo = bessel_j(order, lo);
    double hi = lo;
    double f_hi = f_lo;
    bool found = false;
    while (hi < stop) {
        hi = std::min(lo + step, stop);
        f_hi = bessel_j(order, hi);
        if (f_lo == 0.0) return lo;
        if ((f_lo < 0.0) != (f_hi < 0.0)) {
            found = true;
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    if (!found)
        throw std::runtime_error("bessel zero: no sign change in [" + std::to_string(start) + ", " +
                                 std::to_string(stop) + "] for nu = " + std::to_string(nu));
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = bessel_j(order, mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    double root = 0.5 * (lo + hi);
    for (int it = 0; it < 2; ++it) {
        const double j = bessel_j(order, root);
        const double dj = nu / root * j - bessel_j(BesselOrder(nu + 1.0), root);
        if (dj != 0.0) root -= j / dj;
    }
    return root;
}

}  // namespace

BesselOrder::BesselOrder(double nu) : nu_(nu) {
    if (!std::isfinite(nu) || nu < 0.0)
        throw std::domain_error("BesselOrder: nu must be finite and >= 0");
}

double bessel_j(BesselOrder order, double x) {
    check_argument(x);
    const double nu = order.value();
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    if (x <= kSeriesCrossover) return scaled_series(nu, x) * std::pow(x, nu);
    return miller(nu, x);
}

double bessel_j_scaled(BesselOrder order, double x) {
    check_argument(x);
    const double nu = order.value();
    if (x <= kSeriesCrossover) return scaled_series(nu, x);
    return miller(nu, x) * std::pow(x, -nu);
}

double bessel_first_zero(BesselOrder order) {
    const double nu = order.value();
    if (nu > 10.0) throw std::domain_error("bessel_first_zero: nu must be <= 10");
    return find_zero_after(nu, nu + 1.0, nu + 10.0);
}

double bessel_zero(BesselOrder order, int s) {
    if (s < 1) throw std::domain_error("bessel_zero: s must be >= 1");
    const double nu = order.value();
    double z = find_zero_after(nu, std::max(nu, 1e-3), nu + 10.0 + 2.0 * std::sqrt(nu + 1.0));
    for (int k = 2; k <= s; ++k) z = find_zero_after(nu, z + 0.5, z + 12.0);
    return z;
}

double unit_ball_volume(int n) {
    if (n < 1) throw std::domain_error("unit_ball_volume: n must be >= 1");
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

QuadratureRule gauss_legendre(int order, double a, double b) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(static_cast<size_t>(order));
    rule.weights.resize(static_cast<size_t>(order));
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    if (order == 1) {
        rule.nodes[0] = mid;
        rule.weights[0] = b - a;
        return rule;
    }
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<size_t>(i);
        const auto hi = static_cast<size_t>(order - 1 - i);
        rule.nodes[lo] = mid - half * x;
        rule.nodes[hi] = mid + half * x;
        rule.weights[lo] = half * w;
        rule.weights[hi] = half * w;
    }
    return rule;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol, Endpoint endpoint, int max_panels) {
    if (!(a < b)) throw std::invalid_argument("integrate: need a < b");
    if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be positive");

    if (endpoint == Endpoint::singular_left) {
        auto g = [&f, a](double t) { return t == 0.0 ? 0.0 : 2.0 * t * f(a + t * t); };
        return integrate(g, 0.0, std::sqrt(b - a), tol, Endpoint::regular, max_panels);
    }

    static const QuadratureRule unit = gauss_legendre(10, -1.0, 1.0);
    auto rule_on = [&f](double lo, double hi) {
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        double s = 0.0;
        for (size_t i = 0; i < unit.nodes.size(); ++i) s += unit.weights[i] * f(mid + half * unit.nodes[i]);
        return s * half;
    };

    struct Panel {
        double lo, hi, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    auto make_panel = [&](double lo, double hi) {
        const double mid = 0.5 * (lo + hi);
        const double coarse = rule_on(lo, hi);
        const double fine = rule_on(lo, mid) + rule_on(mid, hi);
        return Panel{lo, hi, fine, std::fabs(fine - coarse)};
    };

    std::priority_queue<Panel> queue;
    std::vector<Panel> done;
    constexpr int kInitial = 4;
    for (int i = 0; i < kInitial; ++i)
        queue.push(make_panel(a + (b - a) * i / kInitial, a + (b - a) * (i + 1) / kInitial));

    double total_error = 0.0;
    {
        auto copy = queue;
        while (!copy.empty()) {
            total_error += copy.top().error;
            copy.pop();
        }
    }
    int panels = kInitial;
    while (!queue.empty() && total_error > tol) {
        const Panel p = queue.top();
        queue.pop();
        const double mid = 0.5 * (p.lo + p.hi);
        if (mid <= p.lo || mid >= p.hi) {  // cannot split further
            done.push_back(p);
            total_error -= p.error;
            continue;
        }
        if (++panels > max_panels)
            throw std::runtime_error("integrate: no convergence within " + std::to_string(max_panels) +
                                     " panels");
        const Panel left = make_panel(p.lo, mid);
        const Panel right = make_panel(mid, p.hi);
        total_error += left.error + right.error - p.error;
        queue.push(left);
        queue.push(right);
    }

    QuadratureResult result;
    result.panels = panels;
    double err = 0.0;
    double value = 0.0;
    std::vector<Panel> all = std::move(done);
    while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.lo < y.lo; });
    for (const auto& p : all) {
        value += p.value;
        err += p.error;
    }
    result.value = value;
    result.error = err;
    return result;
}

}  // namespace nodallab
