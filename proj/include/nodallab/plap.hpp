#pragma once

#include <vector>

#include "nodallab/bounds.hpp"

namespace nodallab {

struct PLapEigenPair {
    double p = 2.0;
    double lambda = 0.0;     ///< lambda_{1,p}
    ScalarField profile;     ///< 1024 samples, ||u||_p = 1
    int dimension = 1;       ///< 1: interval, 2: radial disk
    double extent = 1.0;     ///< interval length or disk radius
    double domain_volume = 0.0;
};

inline constexpr int plap_samples = 1024;

/// First Dirichlet eigenpair of the 1-D p-Laplacian on (0, length) by shooting
/// with fixed-step RK4 in (u, |u'|^{p-2} u') and bisection in lambda. For p >= 2
/// the shot starts at the zero (u = 0, u' = 1) and ends where u' vanishes; for
/// p < 2 it starts at the maximum and ends at the zero, so the degenerate term
/// is always met at the end of the shot. 1 < p <= 10.
PLapEigenPair sinp_eigenpair(double p, double length);

/// First radial eigenpair of the p-Laplacian on the disk of the given radius:
/// shooting from u(0) = 1, u'(0) = 0 (series start) to the first zero.
PLapEigenPair radial_plap_eigenpair(double p, double radius);

/// ||u||_inf <= 4^n Vol^{1-1/p} lambda^{n/p} ||u||_p. The slack ratio is rhs / lhs.
BoundCheckReport check_lindqvist(const PLapEigenPair& e, int n, double domain_volume);

struct PLapCount {
    int count = 0;
    double bound = 0.0;
};

/// Number of m >= a against 4^n Vol^{1-1/p} a^{-1} lambda^{n/p}.
PLapCount count_bound_plap(const std::vector<double>& m_values, double a, double lambda, int n, double p,
                           double domain_volume);

}  // namespace nodallab
