#include "eelab/restricted_projection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "eelab/detail/gauss.hpp"
#include "eelab/eig_backend.hpp"
#include "eelab/entropy_functions.hpp"
#include "eelab/free_kernel.hpp"

namespace eelab {

namespace {

constexpr double pi = std::numbers::pi;

// Composite 16-point Gauss panels over [a,b] with >= `resolution` nodes per
// unit length.
void composite_gauss(double a, double b, double resolution,
                     std::vector<double>& nodes, std::vector<double>& weights) {
    static const detail::GaussRule rule = detail::gauss_legendre(16);
    const int q = static_cast<int>(rule.nodes.size());
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) * resolution / q)));
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (int i = 0; i < q; ++i) {
            nodes.push_back(lo + 0.5 * h * (rule.nodes[i] + 1.0));
            weights.push_back(0.5 * h * rule.weights[i]);
        }
    }
}

} // namespace

void DomainSpec::validate() const {
    if (!(scale > 0.0))
        throw std::invalid_argument("DomainSpec: scale must be positive");
    switch (shape) {
        case BaseShape::Interval:
            if (dimension != 1)
                throw std::invalid_argument("DomainSpec: interval requires dimension 1");
            break;
        case BaseShape::Box:
            if (dimension < 1 || dimension > 2)
                throw std::invalid_argument("DomainSpec: box supports dimensions 1 and 2");
            break;
        case BaseShape::Disc:
            if (dimension != 2)
                throw std::invalid_argument("DomainSpec: disc requires dimension 2");
            break;
    }
}

double DomainSpec::base_surface_measure() const {
    switch (shape) {
        case BaseShape::Interval: return 2.0;
        case BaseShape::Box: return 2.0 * dimension * std::pow(2.0, dimension - 1);
        case BaseShape::Disc: return 2.0 * pi;
    }
    throw std::invalid_argument("DomainSpec: unsupported shape");
}

double DomainSpec::base_volume() const {
    switch (shape) {
        case BaseShape::Interval: return 2.0;
        case BaseShape::Box: return std::pow(2.0, dimension);
        case BaseShape::Disc: return pi;
    }
    throw std::invalid_argument("DomainSpec: unsupported shape");
}

std::string DomainSpec::shape_name() const {
    switch (shape) {
        case BaseShape::Interval: return "interval";
        case BaseShape::Box: return "box";
        case BaseShape::Disc: return "disc";
    }
    return "?";
}

BaseShape shape_from_name(const std::string& name) {
    if (name == "interval") return BaseShape::Interval;
    if (name == "box") return BaseShape::Box;
    if (name == "disc") return BaseShape::Disc;
    throw std::invalid_argument("unknown shape '" + name + "' (interval|box|disc)");
}

KernelOperator assemble_free_restriction(const DomainSpec& domain, double fermi_energy,
                                         double resolution) {
    domain.validate();
    EnergyParams params(fermi_energy);
    const double wavelength = 2.0 * pi / std::sqrt(fermi_energy);
    if (resolution * wavelength < 4.0)
        throw std::invalid_argument(
            "assemble_free_restriction: resolution below 4 nodes per Fermi wavelength");

    const double L = domain.scale;
    QuadratureGrid grid;
    if (domain.shape == BaseShape::Interval ||
        (domain.shape == BaseShape::Box && domain.dimension == 1)) {
        std::vector<double> x, w;
        composite_gauss(-L, L, resolution, x, w);
        grid.nodes.resize(static_cast<Eigen::Index>(x.size()), 1);
        grid.weights.resize(static_cast<Eigen::Index>(x.size()));
        for (std::size_t i = 0; i < x.size(); ++i) {
            grid.nodes(static_cast<Eigen::Index>(i), 0) = x[i];
            grid.weights[static_cast<Eigen::Index>(i)] = w[i];
        }
    } else if (domain.shape == BaseShape::Box) {
        std::vector<double> x, w;
        composite_gauss(-L, L, resolution, x, w);
        const std::size_t n1 = x.size();
        grid.nodes.resize(static_cast<Eigen::Index>(n1 * n1), 2);
        grid.weights.resize(static_cast<Eigen::Index>(n1 * n1));
        Eigen::Index idx = 0;
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t j = 0; j < n1; ++j, ++idx) {
                grid.nodes(idx, 0) = x[i];
                grid.nodes(idx, 1) = x[j];
                grid.weights[idx] = w[i] * w[j];
            }
        }
    } else {
        // polar rule on the disc: Gauss in radius (weight r dr), uniform in angle
        std::vector<double> r, wr;
        composite_gauss(0.0, L, resolution, r, wr);
        const int n_ang = std::max(8, static_cast<int>(std::ceil(2.0 * pi * L * resolution)));
        const double w_ang = 2.0 * pi / n_ang;
        const std::size_t n = r.size() * static_cast<std::size_t>(n_ang);
        grid.nodes.resize(static_cast<Eigen::Index>(n), 2);
        grid.weights.resize(static_cast<Eigen::Index>(n));
        Eigen::Index idx = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            for (int a = 0; a < n_ang; ++a, ++idx) {
                const double th = w_ang * (a + 0.5);
                grid.nodes(idx, 0) = r[i] * std::cos(th);
                grid.nodes(idx, 1) = r[i] * std::sin(th);
                grid.weights[idx] = wr[i] * r[i] * w_ang;
            }
        }
    }

    const Eigen::Index n = grid.nodes.rows();
    KernelOperator op;
    op.grid = grid;
    op.provenance = Provenance::FreeContinuum;
    op.matrix.resize(n, n);
    const int d = domain.dimension;
    Eigen::VectorXd sqw = grid.weights.array().sqrt();
    for (Eigen::Index i = 0; i < n; ++i) {
        op.matrix(i, i) = grid.weights[i] * fermi_kernel_free_radial(0.0, fermi_energy, d);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double r = (grid.nodes.row(i) - grid.nodes.row(j)).norm();
            const double v = sqw[i] * sqw[j] * fermi_kernel_free_radial(r, fermi_energy, d);
            op.matrix(i, j) = v;
            op.matrix(j, i) = v;
        }
    }
    return op;
}

SpectrumReport spectrum01(const Eigen::MatrixXd& sym, double tolerance) {
    if (sym.rows() != sym.cols())
        throw std::invalid_argument("spectrum01: matrix must be square");
    const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
    if ((sym - sym.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("spectrum01: matrix is not symmetric");
    Eigen::VectorXd ev = backend::sym_eigenvalues(sym);
    SpectrumReport report;
    report.eigenvalues.resize(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double v = ev[ev.size() - 1 - i];  // nonincreasing order
        const double excursion = std::max(-v, v - 1.0);
        if (excursion > tolerance)
            throw std::runtime_error(
                "spectrum01: eigenvalue " + std::to_string(v) +
                " outside [0,1] beyond tolerance; discretization too coarse");
        report.max_excursion = std::max(report.max_excursion, std::max(0.0, excursion));
        if (v < 0.0 || v > 1.0) ++report.clipped_count;
        report.eigenvalues[i] = std::clamp(v, 0.0, 1.0);
    }
    return report;
}

SpectrumReport spectrum01(const KernelOperator& op, double tolerance) {
    return spectrum01(op.matrix, tolerance);
}

double entanglement_entropy(const SpectrumReport& spectrum) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i)
        s += binary_entropy(spectrum.eigenvalues[i]);
    return s;
}

double entanglement_entropy_nat(const SpectrumReport& spectrum) {
    return entanglement_entropy(spectrum) * std::numbers::ln2;
}

double purity_defect(const SpectrumReport& spectrum) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i)
        s += linear_entropy(spectrum.eigenvalues[i]);
    return s;
}

} // namespace eelab
