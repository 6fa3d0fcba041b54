#pragma once

#include <functional>
#include <vector>

namespace nodallab {

/// Order of a Bessel function of the first kind. Construction validates nu >= 0.
class BesselOrder {
public:
    explicit BesselOrder(double nu);
    double value() const { return nu_; }

private:
    double nu_;
};

/// J_nu(x) for x >= 0. Power series for x <= 12, normalized Miller backward
/// recurrence above.
double bessel_j(BesselOrder order, double x);

/// x^{-nu} J_nu(x), finite at x = 0 where it equals 1 / (2^nu Gamma(nu+1)).
double bessel_j_scaled(BesselOrder order, double x);

/// First positive zero j_nu, 0 <= nu <= 10.
double bessel_first_zero(BesselOrder order);

/// s-th positive zero of J_nu (s >= 1), found by scanning from j_nu.
double bessel_zero(BesselOrder order, int s);

/// Volume alpha_n of the n-dimensional unit ball.
double unit_ball_volume(int n);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;
};

/// Gauss-Legendre rule of the given order mapped to (a, b).
QuadratureRule gauss_legendre(int order, double a, double b);

enum class Endpoint {
    regular,
    singular_left,  ///< integrable singularity at a; substitutes r = a + t^2
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  ///< accumulated panel error estimate
    int panels = 0;
};

/// Adaptive Gauss-Legendre integration. Each panel compares a 10-point rule on
/// the panel with the sum over its two halves; panels are bisected until the
/// global estimate is below tol. Throws std::runtime_error past max_panels.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double tol, Endpoint endpoint = Endpoint::regular,
                           int max_panels = 20000);

}  // namespace nodallab
