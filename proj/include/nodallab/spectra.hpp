#pragma once

#include <array>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "nodallab/domain.hpp"
#include "nodallab/eigensolver.hpp"

namespace nodallab {

struct EigenPair {
    double lambda = 0.0;
    ScalarField field;
    double norm_l2 = 0.0;  ///< discrete L2 norm of field
    int index = 0;         ///< 1-based position in the spectrum
    std::string label;
};

/// One closed-form eigenfunction of a model domain.
///   rectangle/box: q = (k, l, m) >= 1 (Dirichlet sines) or >= 0 (Neumann cosines)
///   torus: q = per-axis frequency; bit a of variant selects sin on axis a
///   disk: q = (m, s); variant 1 selects sin(m theta)
///   sphere: q = (l, m) with signed m; m < 0 selects sin(|m| phi)
struct Mode {
    double lambda = 0.0;
    std::array<int, 3> q{0, 0, 0};
    int variant = 0;

    std::string label(DomainKind kind) const;
};

/// Lowest `count` closed-form modes, ascending in lambda. Equal eigenvalues are
/// ordered by quantum numbers; on the sphere m runs 0, 1, -1, 2, -2, ...
std::vector<Mode> analytic_modes(const DomainSpec& d, int count);

/// Raw (unnormalized) samples of a mode on the domain grid.
std::vector<double> sample_mode(const DomainSpec& d, const Grid& grid, const Mode& mode);

/// Sampled and discretely normalized eigenpair.
EigenPair make_eigenpair(const DomainSpec& d, std::shared_ptr<const Grid> grid, const Mode& mode, int index);

std::vector<EigenPair> analytic_spectrum(const DomainSpec& d, int count);

/// 5-point Laplacian (7-point in 3-D) on a lattice grid, scaled by 1/h^2. Missing
/// neighbors use a reflected ghost sample: odd for Dirichlet, even for Neumann.
/// Periodic grids have no missing neighbors.
SparseMatrix lattice_laplacian(const Grid& grid, BoundaryCondition bc);

struct SolverInfo {
    bool dense = false;
    int restarts = 0;
    double max_residual = 0.0;
};

/// Largest matrix handled by the dense path.
inline constexpr int dense_limit = 1200;

/// Lowest eigenpairs of the finite-difference Laplacian on a masked grid.
std::vector<EigenPair> fd_spectrum(const DomainSpec& d, int count, SolverInfo* info = nullptr);

/// analytic_spectrum for model domains, fd_spectrum for masked grids.
std::vector<EigenPair> compute_spectrum(const DomainSpec& d, int count);

EigenPair normalize(EigenPair e);

inline constexpr double infinity = std::numeric_limits<double>::infinity();

double lp_norm(const ScalarField& f, double p);
double discrete_mean(const ScalarField& f);
double inner_product(const ScalarField& a, const ScalarField& b);

}  // namespace nodallab
