#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eelab/entropy_functions.hpp"
#include "eelab/free_kernel.hpp"
#include "eelab/lattice_model.hpp"
#include "eelab/restricted_projection.hpp"
#include "eelab/riesz_projector.hpp"
#include "eelab/scaling_fit.hpp"
#include "eelab/schatten.hpp"

namespace py = pybind11;
using namespace eelab;

namespace {

py::dict report_dict(const InequalityReport& r) {
    py::dict d;
    d["samples"] = r.samples;
    d["max_violation"] = r.max_violation;
    d["worst_input"] = r.worst_input;
    d["pass"] = r.passed();
    return d;
}

py::dict fit_dict(const FitResult& f) {
    py::dict d;
    d["sigma_hat"] = f.sigma_hat;
    d["area_coeff"] = f.area_coeff;
    d["offset"] = f.offset;
    d["residual_rms"] = f.residual_rms;
    d["method"] = f.method == FitMethod::JointRegression ? "joint-regression"
                                                         : "dyadic-difference";
    d["pair_estimates"] = f.pair_estimates;
    return d;
}

DomainSpec make_domain(int dimension, const std::string& shape, double scale) {
    DomainSpec d{dimension, shape_from_name(shape), scale};
    d.validate();
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "entanglement entropy laboratory for quasi-free Fermi gases";

    // scalar entropy functions and inequality scans
    m.def("binary_entropy", py::vectorize(&binary_entropy), py::arg("x"));
    m.def("linear_entropy", py::vectorize(&linear_entropy), py::arg("x"));
    m.def("quadratic_log_entropy", py::vectorize(&quadratic_log_entropy), py::arg("x"));
    m.def(
        "check_sandwich",
        [](const std::vector<double>& grid) { return report_dict(check_sandwich(grid)); },
        py::arg("grid"));
    m.def(
        "check_power_bounds",
        [](const std::vector<double>& grid, double s) {
            return report_dict(check_power_bounds(grid, s));
        },
        py::arg("grid"), py::arg("s"));
    m.def(
        "check_log_sum_bound",
        [](const std::vector<double>& grid) {
            return report_dict(check_log_sum_bound(grid));
        },
        py::arg("grid"));

    // free kernel and Green's function
    m.def("fermi_kernel_free", &fermi_kernel_free_radial, py::arg("r"), py::arg("fermi_energy"),
          py::arg("dim"));
    m.def("green_free", &green_free_radial, py::arg("r"), py::arg("z"), py::arg("dim"));
    m.def("hankel1_0", &hankel1_0, py::arg("w"));
    m.def("sqrt_upper", &sqrt_upper, py::arg("z"));
    m.def("im_sqrt_closed_form", &im_sqrt_closed_form, py::arg("fermi_energy"), py::arg("eta"));
    m.def(
        "verify_green_decay",
        [](std::complex<double> z, int dim, const std::vector<double>& separations) {
            const DecayFitReport r = verify_green_decay(z, dim, separations);
            py::dict d;
            d["fitted_rate"] = r.fitted_rate;
            d["predicted_rate"] = r.predicted_rate;
            d["relative_rate_error"] = r.relative_rate_error;
            d["r_min"] = r.r_min;
            d["r_max"] = r.r_max;
            return d;
        },
        py::arg("z"), py::arg("dim"), py::arg("separations"));

    // continuum restriction
    m.def(
        "free_restriction_spectrum",
        [](int dimension, const std::string& shape, double scale, double fermi_energy,
           double resolution) {
            const DomainSpec domain = make_domain(dimension, shape, scale);
            const KernelOperator op =
                assemble_free_restriction(domain, fermi_energy, resolution);
            const SpectrumReport spec = spectrum01(op);
            py::dict d;
            d["eigenvalues"] = spec.eigenvalues;
            d["n_nodes"] = op.matrix.rows();
            d["clipped_count"] = spec.clipped_count;
            d["max_excursion"] = spec.max_excursion;
            d["S_log2"] = entanglement_entropy(spec);
            d["S_nat"] = entanglement_entropy_nat(spec);
            d["purity_defect"] = purity_defect(spec);
            return d;
        },
        py::arg("dimension"), py::arg("shape"), py::arg("scale"), py::arg("fermi_energy"),
        py::arg("resolution") = 4.0);
    m.def(
        "assemble_free_restriction",
        [](int dimension, const std::string& shape, double scale, double fermi_energy,
           double resolution) {
            const DomainSpec domain = make_domain(dimension, shape, scale);
            return assemble_free_restriction(domain, fermi_energy, resolution).matrix;
        },
        py::arg("dimension"), py::arg("shape"), py::arg("scale"), py::arg("fermi_energy"),
        py::arg("resolution") = 4.0);

    // lattice model
    m.def(
        "lattice_entropy_point",
        [](double scale, double fermi_energy, double spacing, double buffer_ratio,
           double well_radius, double well_amplitude) {
            LatticeBox box{1, buffer_ratio * scale, spacing};
            box.validate(fermi_energy);
            DomainSpec domain{1, BaseShape::Interval, scale};
            const std::vector<int> region = region_sites(box, domain);
            ProjectionMatrix p0 = free_fermi_projection(box, fermi_energy);
            ProjectionMatrix p = p0;
            if (well_amplitude != 0.0) {
                const PotentialSpec v = PotentialSpec::square_well(well_radius, well_amplitude);
                p = fermi_projection(build_hamiltonian(box, v), box, fermi_energy);
            }
            const SpectrumReport spec = restricted_spectrum(p, region);
            py::dict d;
            d["S_log2"] = entanglement_entropy(spec);
            d["S_nat"] = entanglement_entropy_nat(spec);
            d["purity_defect"] = purity_defect(spec);
            d["cross_term_hs"] = cross_term_hs(p, p0, region);
            d["n_sites"] = box.total_sites();
            d["occupied"] = p.rank;
            return d;
        },
        py::arg("scale"), py::arg("fermi_energy"), py::arg("spacing") = 0.25,
        py::arg("buffer_ratio") = 2.0, py::arg("well_radius") = 2.0,
        py::arg("well_amplitude") = 0.0);

    // riesz projector
    m.def(
        "riesz_sandwich",
        [](const Eigen::MatrixXcd& k, const Eigen::MatrixXcd& a1, const Eigen::MatrixXcd& a2,
           double fermi_energy, double half_height, int nodes_per_edge, double target_rel,
           long max_solves) {
            ContourSpec spec = ContourSpec::defaults();
            spec.half_height = half_height;
            spec.nodes_per_edge = nodes_per_edge;
            spec.target_rel = target_rel;
            spec.max_resolvent_solves = max_solves;
            const RieszResult res = riesz_sandwich(k, a1, a2, fermi_energy, spec);
            py::dict d;
            d["value"] = res.value;
            d["resolvent_solves"] = res.resolvent_solves;
            d["refinement_delta"] = res.refinement_delta;
            return d;
        },
        py::arg("k"), py::arg("a1"), py::arg("a2"), py::arg("fermi_energy"),
        py::arg("half_height") = 1.0, py::arg("nodes_per_edge") = 16,
        py::arg("target_rel") = 1e-10, py::arg("max_solves") = 100000);

    // schatten toolbox
    m.def("singular_values", &singular_values, py::arg("a"));
    m.def("schatten_norm", &schatten_norm, py::arg("a"), py::arg("p"));
    m.def("schatten_power_sum", &schatten_power_sum, py::arg("a"), py::arg("p"));
    m.def(
        "check_interpolation",
        [](const Eigen::MatrixXd& a, double s) { return report_dict(check_interpolation(a, s)); },
        py::arg("a"), py::arg("s"));
    m.def(
        "check_log_triangle",
        [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
            return report_dict(check_log_triangle(a, b));
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "check_singular_additivity",
        [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
            return report_dict(check_singular_additivity_all(a, b));
        },
        py::arg("a"), py::arg("b"));

    // scaling fits
    m.def(
        "sigma0",
        [](int dimension, const std::string& shape, double fermi_energy) {
            return sigma0(make_domain(dimension, shape, 1.0), fermi_energy);
        },
        py::arg("dimension"), py::arg("shape"), py::arg("fermi_energy"));
    m.def("sigma_bounds", &sigma_bounds, py::arg("sigma0_value"));
    m.def(
        "fit_enhanced",
        [](int dimension, const std::vector<double>& scales,
           const std::vector<double>& entropies) {
            return fit_dict(fit_enhanced(ScalingSeries{dimension, scales, entropies}));
        },
        py::arg("dimension"), py::arg("scales"), py::arg("entropies"));
    m.def(
        "dyadic_sigma",
        [](int dimension, const std::vector<double>& scales,
           const std::vector<double>& entropies) {
            return fit_dict(dyadic_sigma(ScalingSeries{dimension, scales, entropies}));
        },
        py::arg("dimension"), py::arg("scales"), py::arg("entropies"));
    m.def(
        "bound_verdict",
        [](double sigma_hat, double sigma_l, double sigma_u) {
            FitResult fit;
            fit.sigma_hat = sigma_hat;
            const BoundVerdict v = bound_verdict(fit, sigma_l, sigma_u);
            py::dict d;
            d["pass"] = v.pass;
            d["lower_margin"] = v.lower_margin;
            d["upper_margin"] = v.upper_margin;
            return d;
        },
        py::arg("sigma_hat"), py::arg("sigma_l"), py::arg("sigma_u"));
}
