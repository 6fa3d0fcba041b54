#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

/// Bisection root of std::cyl_bessel_j(nu, .) in [a, b].
inline double bessel_root(double nu, double a, double b) {
    double fa = std::cyl_bessel_j(nu, a);
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = std::cyl_bessel_j(nu, m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

/// First positive zero of J_nu by scanning with std::cyl_bessel_j.
inline double bessel_first_zero(double nu) {
    double x = 0.5, step = 0.01;
    while (std::cyl_bessel_j(nu, x) * std::cyl_bessel_j(nu, x + step) > 0) x += step;
    return bessel_root(nu, x, x + step);
}

/// Composite Simpson rule with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

/// Closed-form p-Laplacian eigenvalue on an interval of length L:
/// (pi_p / L)^p with pi_p = 2 pi (p-1)^{1/p} / (p sin(pi/p)).
inline double sinp_lambda(double p, double L) {
    const double pi_p = 2.0 * std::numbers::pi * std::pow(p - 1.0, 1.0 / p) / (p * std::sin(std::numbers::pi / p));
    return std::pow(pi_p / L, p);
}

/// Minimizes the discrete Rayleigh quotient sum |du|^p h^{1-p} / (h sum |u|^p)
/// over nodal values on (0, 1) by golden-section coordinate descent.
inline double descent_plap_lambda(double p, int n = 64) {
    const double h = 1.0 / (n + 1);
    std::vector<double> u(static_cast<std::size_t>(n) + 2, 0.0);
    for (int i = 1; i <= n; ++i) u[i] = std::sin(std::numbers::pi * i * h);
    auto num = [&] {
        double s = 0;
        for (int i = 0; i <= n; ++i) s += std::pow(std::abs(u[i + 1] - u[i]), p);
        return s / std::pow(h, p - 1);
    };
    auto den = [&] {
        double s = 0;
        for (int i = 1; i <= n; ++i) s += std::pow(std::abs(u[i]), p);
        return s * h;
    };
    double N = num(), D = den(), R = N / D, prev = 0;
    for (int sweep = 0; sweep < 200000; ++sweep) {
        for (int i = 1; i <= n; ++i) {
            double dn = 0, dd = 0;
            auto local = [&](double v) {
                dn = (std::pow(std::abs(v - u[i - 1]), p) + std::pow(std::abs(u[i + 1] - v), p) -
                      std::pow(std::abs(u[i] - u[i - 1]), p) - std::pow(std::abs(u[i + 1] - u[i]), p)) /
                     std::pow(h, p - 1);
                dd = (std::pow(std::abs(v), p) - std::pow(std::abs(u[i]), p)) * h;
                return (N + dn) / (D + dd);
            };
            double a = std::min(u[i - 1], u[i + 1]), b = std::max(u[i - 1], u[i + 1]);
            const double w = b - a;
            a = std::max(0.0, a - 0.5 * w - 1e-3);
            b = b + 0.5 * w + 1e-3;
            const double g = (std::sqrt(5.0) - 1) / 2;
            double x1 = b - g * (b - a), x2 = a + g * (b - a), f1 = local(x1), f2 = local(x2);
            for (int it = 0; it < 60; ++it) {
                if (f1 < f2) {
                    b = x2; x2 = x1; f2 = f1; x1 = b - g * (b - a); f1 = local(x1);
                } else {
                    a = x1; x1 = x2; f1 = f2; x2 = a + g * (b - a); f2 = local(x2);
                }
            }
            const double v = 0.5 * (a + b);
            if (local(v) < R) {
                N += dn;
                D += dd;
                u[i] = v;
                R = N / D;
            }
        }
        if (sweep % 50 == 0) {
            N = num();
            D = den();
            R = N / D;
            if (std::abs(prev - R) < 1e-10 * R) break;
            prev = R;
        }
    }
    return R;
}

/// Fraction of [0, pi]^3 where sin a sin b sin c >= t (0 < t < 1), by nested
/// Simpson quadrature of the innermost measure pi - 2 asin(t / (sin a sin b)).
inline double triple_sine_superlevel_fraction(double t, int n = 2000) {
    const double pi = std::numbers::pi;
    auto inner = [&](double a) {
        const double sa = std::sin(a);
        if (sa <= t) return 0.0;
        // sin b >= t / sin a on [b0, pi - b0]
        const double b0 = std::asin(t / sa);
        auto g = [&](double b) {
            const double s = t / (sa * std::sin(b));
            return s >= 1.0 ? 0.0 : pi - 2.0 * std::asin(s);
        };
        return simpson(g, b0, pi - b0, n);
    };
    const double a0 = std::asin(t);
    return simpson(inner, a0, pi - a0, n) / (pi * pi * pi);
}

}  // namespace oracle
