#include "nodallab/eigensolver.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace nodallab {

LowestEigenpairs dense_lowest(const SparseMatrix& a, int count) {
    const Eigen::MatrixXd dense(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
    if (solver.info() != Eigen::Success) throw std::runtime_error("dense_lowest: eigensolver failed");
    LowestEigenpairs out;
    out.values = solver.eigenvalues().head(count);
    out.vectors = solver.eigenvectors().leftCols(count);
    out.residuals = (a * out.vectors - out.vectors * out.values.asDiagonal()).colwise().norm().transpose();
    return out;
}

namespace {

// Orthogonalize the columns of block against basis (two passes), then
// orthonormalize within the block. Columns that collapse are replaced by random
// directions.
void orthonormalize_block(const Eigen::MatrixXd& basis, Eigen::MatrixXd& block, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
        for (int attempt = 0; attempt < 4; ++attempt) {
            auto col = block.col(c);
            const double before = col.norm();
            for (int pass = 0; pass < 2; ++pass) {
                if (basis.cols() > 0) col -= basis * (basis.transpose() * col);
                if (c > 0) col -= block.leftCols(c) * (block.leftCols(c).transpose() * col);
            }
            const double after = col.norm();
            if (after > 1e-10 * std::max(before, 1e-300)) {
                col /= after;
                break;
            }
            for (Eigen::Index r = 0; r < col.size(); ++r) col(r) = gauss(rng);
        }
    }
}

}  // namespace

LowestEigenpairs krylov_lowest(const SparseMatrix& a, int count, const KrylovOptions& opt) {
    const Eigen::Index n = a.rows();
    if (count < 1 || count > n) throw std::invalid_argument("krylov_lowest: invalid count");
    const int b = std::max(1, opt.block_size);
    const Eigen::Index keep = std::min<Eigen::Index>(n, count + b);
    const Eigen::Index max_basis = std::min<Eigen::Index>(n, keep + std::max<Eigen::Index>(4 * b, count) + 20);

    SparseMatrix shifted = a;
    for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) -= opt.shift;
    Eigen::SimplicialLDLT<SparseMatrix> factor(shifted);
    if (factor.info() != Eigen::Success) throw std::runtime_error("krylov_lowest: factorization failed");

    // absolute residual target, floored at what the conditioning of A allows
    double norm_inf = 0.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        double col = 0.0;
        for (SparseMatrix::InnerIterator it(a, c); it; ++it) col += std::abs(it.value());
        norm_inf = std::max(norm_inf, col);
    }
    const double tolerance = std::max(opt.tolerance, 64.0 * 2.2e-16 * norm_inf);

    std::mt19937 rng(opt.seed);
    std::normal_distribution<double> gauss;

    Eigen::MatrixXd basis(n, 0);
    Eigen::MatrixXd images(n, 0);  // (A - sigma)^{-1} basis
    Eigen::MatrixXd next(n, b);
    for (Eigen::Index i = 0; i < next.size(); ++i) next.data()[i] = gauss(rng);
    orthonormalize_block(basis, next, rng);

    LowestEigenpairs out;
    for (int cycle = 0; cycle <= opt.max_restarts; ++cycle) {
        while (basis.cols() + next.cols() <= max_basis) {
            const Eigen::MatrixXd z = factor.solve(next);
            const Eigen::Index m = basis.cols();
            basis.conservativeResize(Eigen::NoChange, m + next.cols());
            basis.rightCols(next.cols()) = next;
            images.conservativeResize(Eigen::NoChange, m + next.cols());
            images.rightCols(next.cols()) = z;
            next = z;
            orthonormalize_block(basis, next, rng);
            if (basis.cols() + next.cols() > n) next.conservativeResize(Eigen::NoChange, n - basis.cols());
            if (next.cols() == 0) break;
        }

        // Rayleigh-Ritz for the inverse operator; largest Ritz values first.
        Eigen::MatrixXd h = basis.transpose() * images;
        h = 0.5 * (h + h.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(h);
        const Eigen::Index m = basis.cols();
        const Eigen::Index k = std::min(keep, m);
        const Eigen::MatrixXd s = ritz.eigenvectors().rightCols(k).rowwise().reverse();

        Eigen::MatrixXd kept_basis = basis * s;
        Eigen::MatrixXd kept_images = images * s;

        // Rayleigh-Ritz with A itself on the kept vectors for the residual test.
        const Eigen::MatrixXd a_kept = a * kept_basis;
        Eigen::MatrixXd ha = kept_basis.transpose() * a_kept;
        ha = 0.5 * (ha + ha.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz_a(ha);
        const Eigen::MatrixXd y = ritz_a.eigenvectors().leftCols(count);
        const Eigen::VectorXd values = ritz_a.eigenvalues().head(count);
        const Eigen::MatrixXd vectors = kept_basis * y;
        const Eigen::MatrixXd resid_mat = a_kept * y - vectors * values.asDiagonal();
        const Eigen::VectorXd residuals = resid_mat.colwise().norm().transpose();

        const bool converged = residuals.maxCoeff() <= tolerance;
        out.values = values;
        out.vectors = vectors;
        out.residuals = residuals;
        out.restarts = cycle;
        if (converged || m >= n) return out;

        basis = std::move(kept_basis);
        images = std::move(kept_images);
        // next already holds the orthonormal continuation block; it is orthogonal
        // to the old basis and hence to the truncated one.
        if (next.cols() == 0) {
            next.resize(n, b);
            for (Eigen::Index i = 0; i < next.size(); ++i) next.data()[i] = gauss(rng);
            orthonormalize_block(basis, next, rng);
        }
    }
    throw std::runtime_error("krylov_lowest: no convergence after " + std::to_string(opt.max_restarts) +
                             " restarts (worst residual " + std::to_string(out.residuals.maxCoeff()) + ")");
}

}  // namespace nodallab
