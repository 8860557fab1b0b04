#include "eelab/scaling_fit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eelab {

namespace {
constexpr double pi = std::numbers::pi;
}

void ScalingSeries::validate(bool for_fit) const {
    if (scales.size() != entropies.size())
        throw std::invalid_argument("ScalingSeries: scales/entropies size mismatch");
    if (for_fit && scales.size() < 4)
        throw std::invalid_argument("ScalingSeries: need at least 4 entries to fit");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0))
            throw std::invalid_argument("ScalingSeries: scales must be positive");
        if (i > 0 && !(scales[i] > scales[i - 1]))
            throw std::invalid_argument("ScalingSeries: scales must be strictly increasing");
    }
    if (dimension < 1)
        throw std::invalid_argument("ScalingSeries: dimension must be >= 1");
}

double sigma0(const DomainSpec& shape, double fermi_energy) {
    shape.validate();
    if (!(fermi_energy > 0.0))
        throw std::domain_error("sigma0: Fermi energy must be positive");
    const int d = shape.dimension;
    const double surface = shape.base_surface_measure();
    return std::pow(fermi_energy, 0.5 * (d - 1)) * surface /
           (3.0 * std::pow(2.0, d) * std::pow(pi, 0.5 * (d - 1)) * std::tgamma(0.5 * (d + 1)));
}

std::pair<double, double> sigma_bounds(double sigma0_value) {
    if (!(sigma0_value > 0.0))
        throw std::domain_error("sigma_bounds: sigma0 must be positive");
    return {3.0 * sigma0_value / (2.0 * pi * pi), 2508.0 * sigma0_value};
}

FitResult fit_enhanced(const ScalingSeries& series) {
    series.validate(true);
    const int d = series.dimension;
    const Eigen::Index n = static_cast<Eigen::Index>(series.scales.size());
    const int cols = d == 1 ? 2 : 3;
    Eigen::MatrixXd basis(n, cols);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double L = series.scales[static_cast<std::size_t>(i)];
        const double area = std::pow(L, d - 1);
        basis(i, 0) = area * std::log(L);
        basis(i, 1) = area;
        if (cols == 3) basis(i, 2) = 1.0;
        rhs[i] = series.entropies[static_cast<std::size_t>(i)];
    }
    Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(rhs);
    FitResult fit;
    fit.method = FitMethod::JointRegression;
    fit.sigma_hat = coef[0];
    fit.area_coeff = coef[1];
    fit.offset = cols == 3 ? coef[2] : 0.0;
    const double mean = rhs.mean();
    const double rms = std::sqrt((rhs - basis * coef).squaredNorm() / static_cast<double>(n));
    fit.residual_rms = mean != 0.0 ? rms / std::abs(mean) : rms;
    return fit;
}

FitResult dyadic_sigma(const ScalingSeries& series) {
    series.validate(false);
    const int d = series.dimension;
    FitResult fit;
    fit.method = FitMethod::DyadicDifference;
    for (std::size_t i = 0; i < series.scales.size(); ++i) {
        const double L = series.scales[i];
        for (std::size_t j = i + 1; j < series.scales.size(); ++j) {
            if (std::abs(series.scales[j] - 2.0 * L) > 1e-9 * L) continue;
            const double basis_hi = std::pow(2.0 * L, d - 1) * std::log(2.0 * L);
            const double basis_lo = std::pow(L, d - 1) * std::log(L);
            fit.pair_estimates.push_back((series.entropies[j] - series.entropies[i]) /
                                         (basis_hi - basis_lo));
        }
    }
    if (fit.pair_estimates.empty())
        throw std::invalid_argument("dyadic_sigma: series contains no dyadic pairs (L, 2L)");
    fit.sigma_hat = fit.pair_estimates.back();
    if (fit.pair_estimates.size() >= 2) {
        const double prev = fit.pair_estimates[fit.pair_estimates.size() - 2];
        fit.residual_rms = std::abs(fit.sigma_hat - prev) /
                           std::max(1e-300, std::abs(fit.sigma_hat));
    }
    return fit;
}

BoundVerdict bound_verdict(const FitResult& fit, double sigma_l, double sigma_u) {
    BoundVerdict verdict;
    verdict.sigma_hat = fit.sigma_hat;
    verdict.sigma_l = sigma_l;
    verdict.sigma_u = sigma_u;
    verdict.lower_margin = fit.sigma_hat - sigma_l;
    verdict.upper_margin = sigma_u - fit.sigma_hat;
    verdict.pass = verdict.lower_margin >= 0.0 && verdict.upper_margin >= 0.0;
    return verdict;
}

std::string base_name(EntropyBase base) {
    return base == EntropyBase::Log2 ? "log2" : "nat";
}

BaseSelection select_entropy_base(const ScalingSeries& series_log2, double sigma0_value,
                                  double rel_tolerance) {
    if (!(sigma0_value > 0.0))
        throw std::domain_error("select_entropy_base: sigma0 must be positive");
    ScalingSeries nat = series_log2;
    for (double& s : nat.entropies) s *= std::numbers::ln2;

    BaseSelection sel;
    sel.sigma_hat_log2 = fit_enhanced(series_log2).sigma_hat;
    sel.sigma_hat_nat = fit_enhanced(nat).sigma_hat;
    sel.rel_err_log2 = std::abs(sel.sigma_hat_log2 - sigma0_value) / sigma0_value;
    sel.rel_err_nat = std::abs(sel.sigma_hat_nat - sigma0_value) / sigma0_value;
    sel.selected = sel.rel_err_nat <= sel.rel_err_log2 ? EntropyBase::Nat : EntropyBase::Log2;
    sel.within_tolerance = std::min(sel.rel_err_nat, sel.rel_err_log2) <= rel_tolerance;
    return sel;
}

TrendStat trend_vs_log(const std::vector<double>& scales, const std::vector<double>& values) {
    if (scales.size() != values.size() || scales.size() < 3)
        throw std::invalid_argument("trend_vs_log: need >= 3 matching samples");
    const double n = static_cast<double>(scales.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const double x = std::log(scales[i]);
        sx += x;
        sy += values[i];
        sxx += x * x;
        sxy += x * values[i];
    }
    TrendStat stat;
    const double denom = n * sxx - sx * sx;
    stat.slope = (n * sxy - sx * sy) / denom;
    stat.intercept = (sy - stat.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const double fit = stat.intercept + stat.slope * std::log(scales[i]);
        ss += (values[i] - fit) * (values[i] - fit);
    }
    if (scales.size() > 2)
        stat.slope_stderr = std::sqrt(ss / (n - 2.0) / (sxx - sx * sx / n));
    return stat;
}

} // namespace eelab
