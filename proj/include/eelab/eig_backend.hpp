#pragma once

#include <Eigen/Dense>
#include <complex>

namespace eelab::backend {

/// Eigenvalues of a symmetric matrix, ascending.
Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a);

struct EigPairs {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // orthonormal columns, matching order
};

/// Full symmetric eigendecomposition.
EigPairs sym_eig(const Eigen::MatrixXd& a);

/// Eigenpairs with eigenvalue strictly below `limit` only. Cheaper than a
/// full decomposition when few states are occupied.
EigPairs sym_eig_below(const Eigen::MatrixXd& a, double limit);

/// Solve (a - shift I) x = rhs column-wise, dense pivoted factorization.
Eigen::MatrixXcd solve_shifted(const Eigen::MatrixXcd& a, std::complex<double> shift,
                               const Eigen::MatrixXcd& rhs);

/// True when the LAPACKE code paths are compiled in.
bool lapacke_enabled();

} // namespace eelab::backend
