#pragma once

#include <Eigen/Dense>
#include <string>

namespace eelab {

enum class BaseShape { Interval, Box, Disc };

/// Scaled spatial region Lambda_L = L * Lambda. The base shapes all contain
/// the origin as an interior point: the interval/box [-1,1]^d and the unit
/// disc. Interval is d=1, Disc is d=2, Box supports d in {1,2}.
struct DomainSpec {
    int dimension = 1;
    BaseShape shape = BaseShape::Interval;
    double scale = 1.0;  // L

    void validate() const;
    /// Surface measure |dLambda| of the unscaled base shape.
    double base_surface_measure() const;
    double base_volume() const;
    std::string shape_name() const;
};

BaseShape shape_from_name(const std::string& name);

/// Quadrature nodes and positive weights covering Lambda_L.
struct QuadratureGrid {
    Eigen::MatrixXd nodes;    // n x d
    Eigen::VectorXd weights;  // length n, sums to |Lambda_L|

    double measure() const { return weights.sum(); }
};

enum class Provenance { FreeContinuum, Lattice };

/// Dense symmetric discretization of a restricted operator.
struct KernelOperator {
    Eigen::MatrixXd matrix;
    QuadratureGrid grid;
    Provenance provenance = Provenance::FreeContinuum;
};

/// Nystrom matrix sqrt(w_i w_j) K(x_i, x_j; E) of the restricted free Fermi
/// projection on Lambda_L. `resolution` is in nodes per unit length and must
/// provide at least 4 nodes per Fermi wavelength 2 pi / sqrt(E).
KernelOperator assemble_free_restriction(const DomainSpec& domain, double fermi_energy,
                                         double resolution);

/// Eigenvalues of a restricted projection, validated into [0,1].
struct SpectrumReport {
    Eigen::VectorXd eigenvalues;  // nonincreasing, clamped into [0,1]
    int clipped_count = 0;
    double max_excursion = 0.0;
};

/// Full symmetric eigendecomposition with containment check: eigenvalues
/// outside [-tolerance, 1+tolerance] signal a bad discretization and throw;
/// values inside are clamped to [0,1].
SpectrumReport spectrum01(const Eigen::MatrixXd& sym, double tolerance = 1e-6);
SpectrumReport spectrum01(const KernelOperator& op, double tolerance = 1e-6);

/// Entanglement entropy sum_n h(lambda_n) with the binary-log entropy h.
double entanglement_entropy(const SpectrumReport& spectrum);

/// Same sum with the natural-log entropy; equals ln(2) times the binary sum.
double entanglement_entropy_nat(const SpectrumReport& spectrum);

/// sum_n g(lambda_n) = squared Hilbert-Schmidt norm of the off-region block.
double purity_defect(const SpectrumReport& spectrum);

} // namespace eelab
