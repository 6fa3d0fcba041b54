#pragma once

#include <vector>

#include "nodallab/spectra.hpp"

namespace nodallab {

struct NodalDomain {
    std::vector<int> points;  ///< ascending grid indices
    int sign = 1;
    double volume = 0.0;
    double max_abs = 0.0;  ///< m_A
    int argmax = -1;
    bool touches_boundary = false;
};

struct NodalDecomposition {
    std::vector<NodalDomain> domains;  ///< descending volume
    double zero_tolerance = 0.0;
    double zero_set_volume = 0.0;  ///< measure of {|u| <= zero_tolerance}
    double lambda = 0.0;
    int index = 0;
    ScalarField field;
};

/// Default zero tolerance relative to the sup norm.
inline constexpr double default_zero_tolerance = 1e-9;

/// Same-sign connected components of {|u| > zero_tolerance} under the grid
/// topology. A negative tolerance selects default_zero_tolerance * ||u||_inf.
NodalDecomposition decompose(const EigenPair& e, double zero_tolerance = -1.0);

struct SuperlevelStats {
    std::vector<double> deltas;
    std::vector<std::vector<double>> volumes;  ///< [domain][delta]
};

/// Measure of {x in A_i : |u| >= delta m_{A_i}} for every domain and delta.
SuperlevelStats superlevel_volumes(const NodalDecomposition& nd, const std::vector<double>& deltas);

/// sum_i m_{A_i}^p; p = infinity gives max_i m_{A_i}.
double extrema_power_sum(const NodalDecomposition& nd, double p);

/// Number of domains with m_{A_i} >= a lambda^{(n-1)/4}.
int count_high_extrema(const NodalDecomposition& nd, double a, int n);

int count_touching_boundary(const NodalDecomposition& nd);

struct FaberKrahnRow {
    double volume = 0.0;
    double bound = 0.0;  ///< j_{n/2-1}^n alpha_n lambda^{-n/2}
    bool pass = false;   ///< volume >= bound (1 - slack)
};

inline constexpr double grid_slack = 0.05;

/// Throws std::invalid_argument on non-Euclidean grids.
std::vector<FaberKrahnRow> faber_krahn_check(const NodalDecomposition& nd, int n, double slack = grid_slack);

/// Courant: the k-th eigenfunction has at most k nodal domains.
inline bool courant_holds(const NodalDecomposition& nd) {
    return static_cast<int>(nd.domains.size()) <= nd.index;
}

}  // namespace nodallab
