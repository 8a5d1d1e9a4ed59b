#pragma once

#include <vector>

#include "telefid/complex_matrix.hpp"

namespace telefid::linalg {

/// Full spectrum of a Hermitian matrix. Eigenvalues ascending; column i of
/// `eigenvectors` pairs with `eigenvalues[i]`. `residual` is the largest
/// max-norm of H*v - lambda*v over all pairs.
struct Spectrum {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
    double residual = 0.0;

    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
};

/// Cyclic Jacobi diagonalization of a complex Hermitian matrix. Deterministic
/// for identical input. Throws NotHermitianError if the asymmetry exceeds
/// 1e-10, NoConvergenceError if 100 sweeps do not reach the off-diagonal
/// threshold 1e-13 * ||H||_F.
Spectrum eig_hermitian(const ComplexMatrix& h);

struct EigenvalueGroup {
    double value;  // mean of the group
    int multiplicity;
};

/// Groups an ascending eigenvalue list into near-degenerate clusters; a gap
/// larger than `tol` (absolute) starts a new group.
std::vector<EigenvalueGroup> group_eigenvalues(const std::vector<double>& ascending,
                                               double tol = 1e-8);

}  // namespace telefid::linalg
