#include "eelab/eig_backend.hpp"

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#if defined(EELAB_HAVE_LAPACKE)
#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

namespace eelab::backend {

bool lapacke_enabled() {
#if defined(EELAB_HAVE_LAPACKE)
    return true;
#else
    return false;
#endif
}

namespace {

void require_square(const Eigen::MatrixXd& a, const char* fn) {
    if (a.rows() != a.cols())
        throw std::invalid_argument(std::string(fn) + ": matrix must be square");
}

} // namespace

#if defined(EELAB_HAVE_LAPACKE)

Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a) {
    require_square(a, "sym_eigenvalues");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    if (n == 0) return {};
    Eigen::MatrixXd work = a;
    Eigen::VectorXd w(n);
    lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, w.data());
    if (info != 0)
        throw std::runtime_error("sym_eigenvalues: dsyevd failed, info=" + std::to_string(info));
    return w;
}

EigPairs sym_eig(const Eigen::MatrixXd& a) {
    require_square(a, "sym_eig");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    EigPairs out;
    out.vectors = a;
    out.values.resize(n);
    if (n == 0) return out;
    lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                     out.vectors.data(), n, out.values.data());
    if (info != 0)
        throw std::runtime_error("sym_eig: dsyevd failed, info=" + std::to_string(info));
    return out;
}

EigPairs sym_eig_below(const Eigen::MatrixXd& a, double limit) {
    require_square(a, "sym_eig_below");
    const lapack_int n = static_cast<lapack_int>(a.rows());
    EigPairs out;
    if (n == 0) {
        out.vectors.resize(0, 0);
        return out;
    }
    Eigen::MatrixXd work = a;
    Eigen::VectorXd w(n);
    Eigen::MatrixXd z(n, n);
    std::vector<lapack_int> isuppz(static_cast<std::size_t>(2 * n));
    lapack_int m = 0;
    // dsyevr with a half-open value range ]-inf, limit[
    lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'V', 'L', n, work.data(), n,
                                     -std::numeric_limits<double>::max(), limit,
                                     0, 0, 0.0, &m, w.data(), z.data(), n, isuppz.data());
    if (info != 0)
        throw std::runtime_error("sym_eig_below: dsyevr failed, info=" + std::to_string(info));
    out.values = w.head(m);
    out.vectors = z.leftCols(m);
    return out;
}

#else // Eigen fallback

Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a) {
    require_square(a, "sym_eigenvalues");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("sym_eigenvalues: eigensolver failed");
    return es.eigenvalues();
}

EigPairs sym_eig(const Eigen::MatrixXd& a) {
    require_square(a, "sym_eig");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("sym_eig: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

EigPairs sym_eig_below(const Eigen::MatrixXd& a, double limit) {
    EigPairs full = sym_eig(a);
    Eigen::Index m = 0;
    while (m < full.values.size() && full.values[m] < limit) ++m;
    return {full.values.head(m), full.vectors.leftCols(m)};
}

#endif

Eigen::MatrixXcd solve_shifted(const Eigen::MatrixXcd& a, std::complex<double> shift,
                               const Eigen::MatrixXcd& rhs) {
    if (a.rows() != a.cols() || a.rows() != rhs.rows())
        throw std::invalid_argument("solve_shifted: dimension mismatch");
    Eigen::MatrixXcd shifted = a;
    shifted.diagonal().array() -= shift;
#if defined(EELAB_HAVE_LAPACKE)
    const lapack_int n = static_cast<lapack_int>(a.rows());
    const lapack_int nrhs = static_cast<lapack_int>(rhs.cols());
    Eigen::MatrixXcd x = rhs;
    std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
    lapack_int info = LAPACKE_zgesv(LAPACK_COL_MAJOR, n, nrhs,
                                    shifted.data(), n, ipiv.data(), x.data(), n);
    if (info != 0)
        throw std::runtime_error("solve_shifted: zgesv failed, info=" + std::to_string(info));
    return x;
#else
    return shifted.partialPivLu().solve(rhs);
#endif
}

} // namespace eelab::backend
