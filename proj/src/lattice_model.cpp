#include "eelab/lattice_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "eelab/eig_backend.hpp"
#include "eelab/schatten.hpp"

namespace eelab {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double kTieGuard = 1e-8;
}

PotentialSpec PotentialSpec::square_well(double radius, double amplitude) {
    if (!(radius > 0.0))
        throw std::invalid_argument("PotentialSpec: support radius must be positive");
    PotentialSpec v;
    v.support_radius = radius;
    v.samples = Eigen::VectorXd::Constant(1, amplitude);
    return v;
}

PotentialSpec PotentialSpec::sampled(double radius, Eigen::VectorXd values) {
    if (!(radius > 0.0))
        throw std::invalid_argument("PotentialSpec: support radius must be positive");
    if (values.size() == 0)
        throw std::invalid_argument("PotentialSpec: need at least one sample");
    if (!values.allFinite())
        throw std::invalid_argument("PotentialSpec: samples must be finite");
    PotentialSpec v;
    v.support_radius = radius;
    v.samples = std::move(values);
    return v;
}

double PotentialSpec::sup_norm() const {
    return samples.size() ? samples.cwiseAbs().maxCoeff() : 0.0;
}

double PotentialSpec::value_at(double x) const {
    if (std::abs(x) > support_radius) return 0.0;
    if (samples.size() == 1) return samples[0];
    // nearest-sample lookup on the uniform grid over [-R, R]
    const double t = (x + support_radius) / (2.0 * support_radius) *
                     static_cast<double>(samples.size() - 1);
    const Eigen::Index i = static_cast<Eigen::Index>(std::lround(t));
    return samples[std::clamp<Eigen::Index>(i, 0, samples.size() - 1)];
}

double PotentialSpec::value_at(double x, double y) const {
    const double m = std::max(std::abs(x), std::abs(y));
    if (m > support_radius) return 0.0;
    return value_at(m);
}

void LatticeBox::validate(double fermi_energy) const {
    if (dimension < 1 || dimension > 2)
        throw std::invalid_argument("LatticeBox: dimension must be 1 or 2");
    if (!(half_width > 0.0) || !(spacing > 0.0))
        throw std::invalid_argument("LatticeBox: half_width and spacing must be positive");
    if (sites_per_axis() < 2)
        throw std::invalid_argument("LatticeBox: fewer than two sites per axis");
    if (fermi_energy > 0.0 && spacing * std::sqrt(fermi_energy) > 0.25 + 1e-12)
        throw std::invalid_argument(
            "LatticeBox: spacing too coarse, need a*sqrt(E) <= 1/4 for the "
            "lattice dispersion to track k^2");
}

int LatticeBox::sites_per_axis() const {
    return static_cast<int>(std::lround(2.0 * half_width / spacing)) - 1;
}

int LatticeBox::total_sites() const {
    int n = sites_per_axis();
    return dimension == 1 ? n : n * n;
}

Eigen::VectorXd LatticeBox::axis_coords() const {
    const int n = sites_per_axis();
    Eigen::VectorXd x(n);
    for (int j = 0; j < n; ++j) x[j] = -half_width + (j + 1) * spacing;
    return x;
}

Eigen::MatrixXd LatticeBox::site_coords() const {
    const Eigen::VectorXd x = axis_coords();
    const int n = sites_per_axis();
    if (dimension == 1) return x;
    Eigen::MatrixXd coords(n * n, 2);
    Eigen::Index idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j, ++idx) {
            coords(idx, 0) = x[i];
            coords(idx, 1) = x[j];
        }
    return coords;
}

KernelOperator build_hamiltonian(const LatticeBox& box,
                                 const std::optional<PotentialSpec>& potential) {
    box.validate(0.0);
    if (potential && potential->support_radius > box.half_width)
        throw std::invalid_argument("build_hamiltonian: potential support exceeds the box");
    const int n = box.sites_per_axis();
    const double inv_a2 = 1.0 / (box.spacing * box.spacing);
    const Eigen::VectorXd x = box.axis_coords();

    KernelOperator op;
    op.provenance = Provenance::Lattice;
    if (box.dimension == 1) {
        op.matrix = Eigen::MatrixXd::Zero(n, n);
        for (int j = 0; j < n; ++j) {
            op.matrix(j, j) = 2.0 * inv_a2 + (potential ? potential->value_at(x[j]) : 0.0);
            if (j + 1 < n) {
                op.matrix(j, j + 1) = -inv_a2;
                op.matrix(j + 1, j) = -inv_a2;
            }
        }
        op.grid.nodes = x;
    } else {
        const int total = n * n;
        op.matrix = Eigen::MatrixXd::Zero(total, total);
        auto site = [n](int i, int j) { return i * n + j; };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int s = site(i, j);
                op.matrix(s, s) = 4.0 * inv_a2 +
                                  (potential ? potential->value_at(x[i], x[j]) : 0.0);
                if (i + 1 < n) {
                    op.matrix(s, site(i + 1, j)) = -inv_a2;
                    op.matrix(site(i + 1, j), s) = -inv_a2;
                }
                if (j + 1 < n) {
                    op.matrix(s, site(i, j + 1)) = -inv_a2;
                    op.matrix(site(i, j + 1), s) = -inv_a2;
                }
            }
        op.grid.nodes = box.site_coords();
    }
    op.grid.weights = Eigen::VectorXd::Constant(op.matrix.rows(),
                                                std::pow(box.spacing, box.dimension));
    return op;
}

Eigen::VectorXd free_chain_eigenvalues(const LatticeBox& box) {
    if (box.dimension != 1)
        throw std::invalid_argument("free_chain_eigenvalues: d=1 only");
    const int n = box.sites_per_axis();
    Eigen::VectorXd ev(n);
    const double c = 2.0 / (box.spacing * box.spacing);
    for (int k = 1; k <= n; ++k)
        ev[k - 1] = c * (1.0 - std::cos(pi * k / (n + 1.0)));
    return ev;
}

namespace {

void check_tie(const Eigen::VectorXd& spectrum_sample, double fermi_energy) {
    for (Eigen::Index i = 0; i < spectrum_sample.size(); ++i)
        if (std::abs(spectrum_sample[i] - fermi_energy) < kTieGuard)
            throw std::runtime_error(
                "fermi_projection: Fermi energy collides with an eigenvalue "
                "(within 1e-8); shift E or the box");
}

} // namespace

ProjectionMatrix fermi_projection(const KernelOperator& hamiltonian, const LatticeBox& box,
                                  double fermi_energy) {
    if (hamiltonian.provenance != Provenance::Lattice)
        throw std::invalid_argument("fermi_projection: expected a lattice Hamiltonian");
    if (hamiltonian.matrix.rows() != box.total_sites())
        throw std::invalid_argument("fermi_projection: box does not match the matrix");
    // tie guard needs the nearby spectrum; sym_eig_below returns only states
    // under E, so look slightly above as well
    auto pairs = backend::sym_eig_below(hamiltonian.matrix, fermi_energy + 2.0 * kTieGuard);
    check_tie(pairs.values, fermi_energy);
    Eigen::Index occ = 0;
    while (occ < pairs.values.size() && pairs.values[occ] < fermi_energy) ++occ;
    ProjectionMatrix p;
    p.fermi_energy = fermi_energy;
    p.box = box;
    p.rank = static_cast<int>(occ);
    const auto v = pairs.vectors.leftCols(occ);
    p.matrix.noalias() = v * v.transpose();
    return p;
}

ProjectionMatrix free_fermi_projection(const LatticeBox& box, double fermi_energy) {
    if (box.dimension != 1)
        throw std::invalid_argument("free_fermi_projection: d=1 only");
    const int n = box.sites_per_axis();
    const Eigen::VectorXd ev = free_chain_eigenvalues(box);
    check_tie(ev, fermi_energy);
    int occ = 0;
    while (occ < n && ev[occ] < fermi_energy) ++occ;
    Eigen::MatrixXd u(n, occ);
    const double norm = std::sqrt(2.0 / (n + 1.0));
    for (int k = 1; k <= occ; ++k)
        for (int j = 1; j <= n; ++j)
            u(j - 1, k - 1) = norm * std::sin(pi * j * k / (n + 1.0));
    ProjectionMatrix p;
    p.fermi_energy = fermi_energy;
    p.box = box;
    p.rank = occ;
    p.matrix.noalias() = u * u.transpose();
    return p;
}

std::vector<int> region_sites(const LatticeBox& box, const DomainSpec& region) {
    region.validate();
    if (region.dimension != box.dimension)
        throw std::invalid_argument("region_sites: dimension mismatch");
    if (box.half_width < 2.0 * region.scale - 1e-12)
        throw std::invalid_argument(
            "region_sites: box too small, need half_width >= 2 * L of buffer");
    const Eigen::MatrixXd coords = box.site_coords();
    const double L = region.scale;
    std::vector<int> sites;
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
        bool inside = false;
        if (box.dimension == 1) {
            inside = std::abs(coords(i, 0)) <= L;
        } else if (region.shape == BaseShape::Disc) {
            inside = coords.row(i).norm() <= L;
        } else {
            inside = std::abs(coords(i, 0)) <= L && std::abs(coords(i, 1)) <= L;
        }
        if (inside) sites.push_back(static_cast<int>(i));
    }
    return sites;
}

SpectrumReport restricted_spectrum(const ProjectionMatrix& projection,
                                   const std::vector<int>& region, double tolerance) {
    Eigen::MatrixXd sub(region.size(), region.size());
    for (std::size_t i = 0; i < region.size(); ++i)
        for (std::size_t j = 0; j < region.size(); ++j)
            sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                projection.matrix(region[i], region[j]);
    return spectrum01(sub, tolerance);
}

double restricted_entropy(const ProjectionMatrix& projection, const std::vector<int>& region) {
    if (region.empty()) return 0.0;
    return entanglement_entropy(restricted_spectrum(projection, region));
}

Eigen::MatrixXd off_region_block(const Eigen::MatrixXd& m, const std::vector<int>& region) {
    std::vector<char> in_region(m.rows(), 0);
    for (int s : region) {
        if (s < 0 || s >= m.rows())
            throw std::invalid_argument("off_region_block: site index out of range");
        in_region[static_cast<std::size_t>(s)] = 1;
    }
    std::vector<int> complement;
    complement.reserve(m.rows() - region.size());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        if (!in_region[static_cast<std::size_t>(i)]) complement.push_back(static_cast<int>(i));
    Eigen::MatrixXd block(complement.size(), region.size());
    for (std::size_t i = 0; i < complement.size(); ++i)
        for (std::size_t j = 0; j < region.size(); ++j)
            block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                m(complement[i], region[j]);
    return block;
}

namespace {

void check_same_box(const ProjectionMatrix& p, const ProjectionMatrix& p0, const char* fn) {
    if (p.matrix.rows() != p0.matrix.rows() ||
        p.box.dimension != p0.box.dimension ||
        std::abs(p.box.half_width - p0.box.half_width) > 1e-12 ||
        std::abs(p.box.spacing - p0.box.spacing) > 1e-12)
        throw std::invalid_argument(std::string(fn) + ": projections live on different grids");
    if (std::abs(p.fermi_energy - p0.fermi_energy) > 1e-12)
        throw std::invalid_argument(std::string(fn) + ": Fermi energies differ");
}

} // namespace

double cross_term_hs(const ProjectionMatrix& p, const ProjectionMatrix& p0,
                     const std::vector<int>& region) {
    check_same_box(p, p0, "cross_term_hs");
    if (region.empty()) return 0.0;
    const Eigen::MatrixXd block = off_region_block(p0.matrix - p.matrix, region);
    return block.norm();
}

double schatten_difference(const ProjectionMatrix& p, const ProjectionMatrix& p0,
                           const std::vector<int>& region, double s) {
    if (!(s > 0.5 && s < 1.0))
        throw std::domain_error("schatten_difference: s must lie in ]1/2,1[");
    check_same_box(p, p0, "schatten_difference");
    if (region.empty()) return 0.0;
    const Eigen::MatrixXd block = off_region_block(p.matrix - p0.matrix, region);
    // singular values through the Gram matrix; the blocks here are large and
    // the spectrum is all that is needed
    Eigen::MatrixXd gram;
    if (block.rows() >= block.cols())
        gram.noalias() = block.transpose() * block;
    else
        gram.noalias() = block * block.transpose();
    const Eigen::VectorXd ev = backend::sym_eigenvalues(gram);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev[i] > 0.0) acc += std::pow(ev[i], s);
    return acc;
}

} // namespace eelab
