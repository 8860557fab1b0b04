#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eelab/restricted_projection.hpp"

namespace eelab {

/// Entropy samples S(L) over strictly increasing scales, for one dimension.
struct ScalingSeries {
    int dimension = 1;
    std::vector<double> scales;     // L values
    std::vector<double> entropies;  // S values

    void validate(bool for_fit = true) const;
};

enum class FitMethod { JointRegression, DyadicDifference };

struct FitResult {
    double sigma_hat = 0.0;      // coefficient of L^{d-1} ln L
    double area_coeff = 0.0;     // coefficient of L^{d-1} (absorbs the constant in d=1)
    double offset = 0.0;         // constant term (d >= 2 only)
    double residual_rms = 0.0;   // relative to the mean entropy
    FitMethod method = FitMethod::JointRegression;
    std::vector<double> pair_estimates;  // per dyadic pair, increasing L
};

/// Widom coefficient E^{(d-1)/2} |dLambda| / (3 2^d pi^{(d-1)/2} Gamma((d+1)/2)).
double sigma0(const DomainSpec& shape, double fermi_energy);

/// Lower/upper stability constants (3 sigma0 / (2 pi^2), 2508 sigma0).
std::pair<double, double> sigma_bounds(double sigma0_value);

/// Least squares of S against {L^{d-1} ln L, L^{d-1}, 1}; the last two basis
/// members coincide for d=1 and the duplicate is dropped.
FitResult fit_enhanced(const ScalingSeries& series);

/// Constant-free estimator from dyadic pairs (L, 2L):
/// (S(2L) - S(L)) / ((2L)^{d-1} ln(2L) - L^{d-1} ln L); sigma_hat is the
/// largest-L pair estimate.
FitResult dyadic_sigma(const ScalingSeries& series);

struct BoundVerdict {
    bool pass = false;
    double sigma_hat = 0.0;
    double sigma_l = 0.0;
    double sigma_u = 0.0;
    double lower_margin = 0.0;  // sigma_hat - sigma_l
    double upper_margin = 0.0;  // sigma_u - sigma_hat
};

/// Finite-L surrogate for the liminf/limsup sandwich: PASS iff
/// sigma_l <= sigma_hat <= sigma_u.
BoundVerdict bound_verdict(const FitResult& fit, double sigma_l, double sigma_u);

enum class EntropyBase { Log2, Nat };

std::string base_name(EntropyBase base);

/// Outcome of the log-base resolution protocol: both conventions fitted
/// against the reference coefficient, the closer one selected.
struct BaseSelection {
    EntropyBase selected = EntropyBase::Nat;
    double sigma_hat_log2 = 0.0;
    double sigma_hat_nat = 0.0;
    double rel_err_log2 = 0.0;
    double rel_err_nat = 0.0;
    bool within_tolerance = false;
};

/// Run the protocol on a series measured in the binary-log convention.
BaseSelection select_entropy_base(const ScalingSeries& series_log2, double sigma0_value,
                                  double rel_tolerance);

/// Least-squares slope of y against ln L, with the standard error of the
/// slope; used for the bounded-trend checks.
struct TrendStat {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};
TrendStat trend_vs_log(const std::vector<double>& scales, const std::vector<double>& values);

} // namespace eelab
