#include "eelab/riesz_projector.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "eelab/detail/gauss.hpp"
#include "eelab/eig_backend.hpp"

namespace eelab {

namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

/// One quadrature context per riesz_sandwich call.
struct ContourWork {
    const Eigen::MatrixXcd& k_op;
    const Eigen::MatrixXcd& a1;
    const Eigen::MatrixXcd& a2;
    detail::GaussRule rule;
    long solves = 0;
    long max_solves = 0;
    double accepted_mismatch = 0.0;  // accumulated accepted panel gaps (Frobenius)

    Eigen::MatrixXcd resolvent_sandwich(cplx z) {
        ++solves;
        return a1 * backend::solve_shifted(k_op, z, a2);
    }
};

// Paired integrands; each evaluation costs two resolvent solves.
enum class EdgeKind { RightVertical, LeftVertical, Horizontal };

Eigen::MatrixXcd edge_integrand(ContourWork& work, EdgeKind kind, double anchor, double t) {
    const cplx i(0.0, 1.0);
    switch (kind) {
        case EdgeKind::RightVertical:
            // int_0^s i [R(E+i eta) + R(E-i eta)] d eta
            return i * (work.resolvent_sandwich(cplx(anchor, t)) +
                        work.resolvent_sandwich(cplx(anchor, -t)));
        case EdgeKind::LeftVertical:
            // reversed orientation on the left edge
            return -i * (work.resolvent_sandwich(cplx(anchor, t)) +
                         work.resolvent_sandwich(cplx(anchor, -t)));
        case EdgeKind::Horizontal:
            // bottom (left->E, y=-s) plus top (E->left, y=+s)
            return work.resolvent_sandwich(cplx(t, -anchor)) -
                   work.resolvent_sandwich(cplx(t, anchor));
    }
    return {};
}

Eigen::MatrixXcd panel_value(ContourWork& work, EdgeKind kind, double anchor, double a,
                             double b) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(work.a1.rows(), work.a2.cols());
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t q = 0; q < work.rule.nodes.size(); ++q)
        acc += work.rule.weights[q] *
               edge_integrand(work, kind, anchor, mid + half * work.rule.nodes[q]);
    return half * acc;
}

void adaptive_panel(ContourWork& work, EdgeKind kind, double anchor, double a, double b,
                    const Eigen::MatrixXcd& whole, double tol, int depth,
                    Eigen::MatrixXcd& out) {
    const double mid = 0.5 * (a + b);
    const Eigen::MatrixXcd left = panel_value(work, kind, anchor, a, mid);
    const Eigen::MatrixXcd right = panel_value(work, kind, anchor, mid, b);
    const double mismatch = (left + right - whole).norm();
    const bool budget_left =
        work.solves + 4 * static_cast<long>(work.rule.nodes.size()) <= work.max_solves;
    if (mismatch <= tol || depth >= 28 || !budget_left) {
        out += left + right;
        work.accepted_mismatch += mismatch;
        return;
    }
    adaptive_panel(work, kind, anchor, a, mid, left, 0.5 * tol, depth + 1, out);
    adaptive_panel(work, kind, anchor, mid, b, right, 0.5 * tol, depth + 1, out);
}

void integrate_edge(ContourWork& work, EdgeKind kind, double anchor, double a, double b,
                    std::span<const double> seed_breaks, double tol, Eigen::MatrixXcd& out) {
    double lo = a;
    for (double brk : seed_breaks) {
        adaptive_panel(work, kind, anchor, lo, brk, panel_value(work, kind, anchor, lo, brk),
                       tol, 0, out);
        lo = brk;
    }
    adaptive_panel(work, kind, anchor, lo, b, panel_value(work, kind, anchor, lo, b), tol, 0,
                   out);
}

void require_hermitian(const Eigen::MatrixXcd& k_op) {
    if (k_op.rows() != k_op.cols())
        throw std::invalid_argument("riesz_sandwich: K must be square");
    const double scale = std::max(1.0, k_op.cwiseAbs().maxCoeff());
    if ((k_op - k_op.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("riesz_sandwich: K must be Hermitian");
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& k_op) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(k_op, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("riesz_sandwich: eigenvalue bound computation failed");
    return es.eigenvalues();
}

} // namespace

ContourSpec ContourSpec::defaults() {
    ContourSpec spec;
    spec.left = std::numeric_limits<double>::quiet_NaN();
    return spec;
}

RieszResult riesz_sandwich(const Eigen::MatrixXcd& k_op, const Eigen::MatrixXcd& a1,
                           const Eigen::MatrixXcd& a2, double fermi_energy,
                           ContourSpec contour) {
    require_hermitian(k_op);
    if (a1.cols() != k_op.rows() || a2.rows() != k_op.rows())
        throw std::invalid_argument("riesz_sandwich: A1/A2 shapes do not match K");
    if (!(contour.half_height > 0.0))
        throw std::invalid_argument("riesz_sandwich: contour half height must be positive");
    if (contour.nodes_per_edge < 2)
        throw std::invalid_argument("riesz_sandwich: need at least 2 nodes per edge");

    const Eigen::VectorXd spectrum = hermitian_eigenvalues(k_op);
    const double norm_k = std::max(std::abs(spectrum[0]), std::abs(spectrum[spectrum.size() - 1]));
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < spectrum.size(); ++i)
        gap = std::min(gap, std::abs(spectrum[i] - fermi_energy));
    if (gap < 1e-8 * std::max(1.0, norm_k))
        throw std::invalid_argument(
            "riesz_sandwich: Fermi energy coincides with an eigenvalue of K");

    double left = contour.left;
    if (std::isnan(left)) left = -1.0 + spectrum[0];
    if (!(left < fermi_energy))
        throw std::invalid_argument("riesz_sandwich: left contour edge must lie below E");

    ContourWork work{k_op, a1, a2, detail::gauss_legendre(contour.nodes_per_edge), 0,
                     contour.max_resolvent_solves, 0.0};

    // scale of the target, for the relative refinement tolerance
    const double ref_scale =
        std::max(1e-300, a1.norm() * a2.norm() / std::sqrt(static_cast<double>(k_op.rows())));
    const double tol = contour.target_rel * ref_scale;

    const double s = contour.half_height;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(a1.rows(), a2.cols());

    // right edge: seed panels graded toward the real axis where the resolvent
    // varies on the scale of the spectral gap
    std::vector<double> breaks;
    for (double b = s / 256.0; b < s * 0.999; b *= 2.0) breaks.push_back(b);
    integrate_edge(work, EdgeKind::RightVertical, fermi_energy, 0.0, s, breaks, tol, acc);

    // left edge sits one unit below the spectrum, no grading needed
    integrate_edge(work, EdgeKind::LeftVertical, left, 0.0, s, {}, tol, acc);

    // horizontal edges, seeded at panel length ~ 2s (the distance scale)
    std::vector<double> hbreaks;
    const double len = fermi_energy - left;
    const int hseed = std::max(1, static_cast<int>(std::ceil(len / (2.0 * s))));
    for (int p = 1; p < hseed; ++p) hbreaks.push_back(left + len * p / hseed);
    integrate_edge(work, EdgeKind::Horizontal, s, left, fermi_energy, hbreaks, tol, acc);

    RieszResult result;
    result.value = acc * cplx(0.0, 1.0) / (2.0 * pi);  // -(1/(2 pi i)) = i/(2 pi)
    result.resolvent_solves = work.solves;
    result.refinement_delta = work.accepted_mismatch / std::max(1e-300, result.value.norm());
    return result;
}

RieszResult riesz_sandwich(const Eigen::MatrixXd& k_op, const Eigen::MatrixXd& a1,
                           const Eigen::MatrixXd& a2, double fermi_energy,
                           ContourSpec contour) {
    const Eigen::MatrixXcd kc = k_op.cast<cplx>();
    const Eigen::MatrixXcd a1c = a1.cast<cplx>();
    const Eigen::MatrixXcd a2c = a2.cast<cplx>();
    return riesz_sandwich(kc, a1c, a2c, fermi_energy, contour);
}

void WeightOperator::validate() const {
    if (diagonal.size() == 0)
        throw std::invalid_argument("WeightOperator: empty diagonal");
    for (Eigen::Index i = 0; i < diagonal.size(); ++i)
        if (!(diagonal[i] > 0.0) || !std::isfinite(diagonal[i]))
            throw std::invalid_argument("WeightOperator: weights must be positive and finite");
}

Eigen::VectorXd WeightOperator::inverse() const {
    validate();
    return diagonal.cwiseInverse();
}

WeightOperator WeightOperator::japanese_bracket(const Eigen::MatrixXd& coords) {
    WeightOperator w;
    w.diagonal.resize(coords.rows());
    for (Eigen::Index i = 0; i < coords.rows(); ++i)
        w.diagonal[i] = 1.0 / std::sqrt(1.0 + coords.row(i).squaredNorm());
    return w;
}

double lap_constant(const Eigen::MatrixXd& k_op, const WeightOperator& weights,
                    double fermi_energy, std::span<const double> eta_grid,
                    double continuous_window) {
    weights.validate();
    if (weights.diagonal.size() != k_op.rows())
        throw std::invalid_argument("lap_constant: weight size does not match K");
    auto eig = backend::sym_eig(k_op);
    // spectral projection excluding eigenvalues near E stands in for the
    // continuous-subspace projection on a finite matrix
    Eigen::MatrixXd pi_c = Eigen::MatrixXd::Zero(k_op.rows(), k_op.cols());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (std::abs(eig.values[i] - fermi_energy) > continuous_window)
            pi_c.noalias() += eig.vectors.col(i) * eig.vectors.col(i).transpose();
    const Eigen::MatrixXcd right = (pi_c * weights.diagonal.asDiagonal()).cast<cplx>();

    double sup = 0.0;
    for (double eta : eta_grid) {
        if (eta == 0.0)
            throw std::invalid_argument("lap_constant: eta grid must avoid zero");
        const Eigen::MatrixXcd solved =
            backend::solve_shifted(k_op.cast<cplx>(), cplx(fermi_energy, eta), right);
        const Eigen::MatrixXcd weighted = weights.diagonal.asDiagonal() * solved;
        if (weighted.rows() >= 32) {
            Eigen::BDCSVD<Eigen::MatrixXcd> svd(weighted);
            sup = std::max(sup, svd.singularValues()[0]);
        } else {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(weighted);
            sup = std::max(sup, svd.singularValues()[0]);
        }
    }
    return sup;
}

std::vector<ConvergenceRow> convergence_study(const Eigen::MatrixXd& k_op,
                                              const Eigen::MatrixXd& a1,
                                              const Eigen::MatrixXd& a2, double fermi_energy,
                                              std::span<const int> node_counts,
                                              double half_height) {
    if (node_counts.size() < 3)
        throw std::invalid_argument("convergence_study: need at least 3 node counts");

    // spectral-decomposition reference
    auto eig = backend::sym_eig(k_op);
    Eigen::MatrixXd reference = Eigen::MatrixXd::Zero(a1.rows(), a2.cols());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
        if (eig.values[i] < fermi_energy)
            reference.noalias() +=
                (a1 * eig.vectors.col(i)) * (eig.vectors.col(i).transpose() * a2);
    const double ref_norm = std::max(1e-300, reference.norm());

    std::vector<ConvergenceRow> rows;
    for (int q : node_counts) {
        ContourSpec spec = ContourSpec::defaults();
        spec.half_height = half_height;
        spec.nodes_per_edge = q;
        // fixed quadrature: no refinement passes
        spec.target_rel = std::numeric_limits<double>::infinity();
        auto res = riesz_sandwich(k_op, a1, a2, fermi_energy, spec);
        ConvergenceRow row;
        row.nodes_per_edge = q;
        row.resolvent_solves = res.resolvent_solves;
        row.rel_error = (res.value.real() - reference).norm() / ref_norm;
        rows.push_back(row);
    }
    return rows;
}

} // namespace eelab
