#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "eelab/restricted_projection.hpp"

namespace eelab {

/// Bounded potential supported in [-R_V, R_V]^d, sampled on a uniform grid
/// per axis (d=1) or constant on its support (square well, any d).
struct PotentialSpec {
    double support_radius = 0.0;
    Eigen::VectorXd samples;  // values on a uniform grid over [-R_V, R_V]; size 1 = constant

    static PotentialSpec square_well(double radius, double amplitude);
    static PotentialSpec sampled(double radius, Eigen::VectorXd values);

    double sup_norm() const;
    /// Value at a point; zero outside the support (d=1 profile; for d=2 the
    /// profile is applied to the max-norm radius).
    double value_at(double x) const;
    double value_at(double x, double y) const;
};

/// Finite Dirichlet box [-W, W]^d with spacing a. Sites sit strictly inside,
/// N = round(2W/a) - 1 per axis, so the hard walls fall exactly on +-W.
struct LatticeBox {
    int dimension = 1;
    double half_width = 0.0;  // W
    double spacing = 0.0;     // a

    void validate(double fermi_energy) const;
    int sites_per_axis() const;
    int total_sites() const;
    Eigen::VectorXd axis_coords() const;
    /// Flattened site coordinates, total_sites() x dimension.
    Eigen::MatrixXd site_coords() const;
};

/// Finite-difference H = -Laplacian + V on the box: (2d+1)-point stencil
/// scaled by a^-2, Dirichlet walls, V sampled at the sites.
KernelOperator build_hamiltonian(const LatticeBox& box,
                                 const std::optional<PotentialSpec>& potential);

/// Closed-form Dirichlet eigenvalues (2/a^2)(1 - cos(k pi/(N+1))) for the
/// free 1d chain, ascending.
Eigen::VectorXd free_chain_eigenvalues(const LatticeBox& box);

struct ProjectionMatrix {
    Eigen::MatrixXd matrix;
    double fermi_energy = 0.0;
    LatticeBox box;
    int rank = 0;
};

/// Spectral Fermi projection P = sum_{lambda_k < E} v_k v_k^T. Rejects E
/// within 1e-8 of an eigenvalue of the finite matrix.
ProjectionMatrix fermi_projection(const KernelOperator& hamiltonian, const LatticeBox& box,
                                  double fermi_energy);

/// Same projection for V = 0 in d=1, assembled from the closed-form
/// eigenvectors sqrt(2/(N+1)) sin(j k pi/(N+1)) without a dense eigensolve.
ProjectionMatrix free_fermi_projection(const LatticeBox& box, double fermi_energy);

/// Site indices of the box lying inside Lambda_L, with a buffer check:
/// requires half_width >= 2 * L (the region must stay away from the walls).
std::vector<int> region_sites(const LatticeBox& box, const DomainSpec& region);

/// Eigenvalues of the principal submatrix P[region, region], clamped into [0,1].
SpectrumReport restricted_spectrum(const ProjectionMatrix& projection,
                                   const std::vector<int>& region, double tolerance = 1e-8);

/// Entanglement entropy of the restriction, binary-log convention.
double restricted_entropy(const ProjectionMatrix& projection, const std::vector<int>& region);

/// Hilbert-Schmidt norm of the off-region block rows(complement) x cols(region)
/// of (P0 - P). Both projections must share the box and Fermi energy.
double cross_term_hs(const ProjectionMatrix& p, const ProjectionMatrix& p0,
                     const std::vector<int>& region);

/// Schatten power sum sum_n a_n^{2s} of the off-region block of (P - P0),
/// s in ]1/2, 1[.
double schatten_difference(const ProjectionMatrix& p, const ProjectionMatrix& p0,
                           const std::vector<int>& region, double s);

/// Off-region block (P - P0)[complement, region]; shared by the two
/// operations above and by the verification suites.
Eigen::MatrixXd off_region_block(const Eigen::MatrixXd& m, const std::vector<int>& region);

} // namespace eelab
