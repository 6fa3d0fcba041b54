#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace nodallab {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct LowestEigenpairs {
    Eigen::VectorXd values;   ///< ascending
    Eigen::MatrixXd vectors;  ///< unit Euclidean norm columns
    Eigen::VectorXd residuals;  ///< ||A v - lambda v||
    int restarts = 0;
};

/// Householder tridiagonalization + implicit QL on the full matrix.
LowestEigenpairs dense_lowest(const SparseMatrix& a, int count);

struct KrylovOptions {
    double shift = -1.0;      ///< sigma; A - sigma I must be positive definite
    int block_size = 6;
    int max_restarts = 200;
    double tolerance = 1e-9;  ///< absolute residual ||A v - lambda v||, floored at 64 eps ||A||
    unsigned seed = 12345;
};

/// Lowest eigenpairs of a symmetric sparse matrix by block Krylov-Schur
/// iteration on (A - sigma I)^{-1} with full reorthogonalization and thick
/// restarts. Converged pairs are Rayleigh-Ritz values of A on the final basis.
/// Throws std::runtime_error on non-convergence.
LowestEigenpairs krylov_lowest(const SparseMatrix& a, int count, const KrylovOptions& options = {});

}  // namespace nodallab
