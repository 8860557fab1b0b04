#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

namespace eelab {

/// Rectangle contour for the Riesz representation of A1 1_{<E}(K) A2:
/// corners at (left, -s), (E, -s), (E, s), (left, s), traversed counter
/// clockwise. The right vertical edge cuts straight through the spectrum;
/// its quadrature nodes come in conjugate pairs (eta, -eta) and never sit on
/// the real axis, which reproduces the principal-value cancellation of the
/// resolvent there.
struct ContourSpec {
    double left = 0.0;              // computed as -1 + min eigenvalue when NaN
    double half_height = 1.0;       // s > 0
    int nodes_per_edge = 16;        // Gauss order per panel
    double target_rel = 1e-10;      // adaptive refinement target
    long max_resolvent_solves = 100000;

    static ContourSpec defaults();
};

struct RieszResult {
    Eigen::MatrixXcd value;
    long resolvent_solves = 0;
    double refinement_delta = 0.0;  // last coarse-vs-fine Frobenius gap, relative
};

/// Contour-integral evaluation of A1 1_{<E}(K) A2 per the rectangle above.
/// K must be Hermitian and E must stay clear of its eigenvalues
/// (tolerance 1e-8 * ||K||).
RieszResult riesz_sandwich(const Eigen::MatrixXcd& k_op, const Eigen::MatrixXcd& a1,
                           const Eigen::MatrixXcd& a2, double fermi_energy,
                           ContourSpec contour = ContourSpec::defaults());

/// Real symmetric convenience overload; the assembled result is real up to
/// conjugate-pair roundoff.
RieszResult riesz_sandwich(const Eigen::MatrixXd& k_op, const Eigen::MatrixXd& a1,
                           const Eigen::MatrixXd& a2, double fermi_energy,
                           ContourSpec contour = ContourSpec::defaults());

/// Diagonal positive weight operator for the limiting-absorption bound.
struct WeightOperator {
    Eigen::VectorXd diagonal;

    void validate() const;
    Eigen::VectorXd inverse() const;
    /// <x>^{-1} = 1/sqrt(1 + |x|^2) site weights.
    static WeightOperator japanese_bracket(const Eigen::MatrixXd& coords);
};

/// Empirical limiting-absorption constant: sup over the eta grid of
/// || B (K - E - i eta)^{-1} Pi_c B || with Pi_c the spectral projection away
/// from E. On a finite matrix Pi_c is emulated by dropping eigenvalues within
/// `continuous_window` of E.
double lap_constant(const Eigen::MatrixXd& k_op, const WeightOperator& weights,
                    double fermi_energy, std::span<const double> eta_grid,
                    double continuous_window);

struct ConvergenceRow {
    int nodes_per_edge = 0;
    long resolvent_solves = 0;
    double rel_error = 0.0;
};

/// Fixed-node (non adaptive) contour error against the spectral-decomposition
/// reference, one row per requested Gauss order. Needs at least 3 entries.
std::vector<ConvergenceRow> convergence_study(const Eigen::MatrixXd& k_op,
                                              const Eigen::MatrixXd& a1,
                                              const Eigen::MatrixXd& a2, double fermi_energy,
                                              std::span<const int> node_counts,
                                              double half_height = 1.0);

} // namespace eelab
