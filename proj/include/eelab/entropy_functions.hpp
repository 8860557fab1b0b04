#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace eelab {

/// Outcome of a pointwise inequality scan. `max_violation` is the smallest
/// signed slack seen over the scan; a negative value beyond the tolerance
/// means the inequality failed at `worst_input`.
struct InequalityReport {
    std::size_t samples = 0;
    double max_violation = std::numeric_limits<double>::infinity();
    std::vector<double> worst_input;

    bool passed(double tolerance = 1e-12) const { return max_violation >= -tolerance; }
    void record(double slack, std::initializer_list<double> input);
};

/// Binary entropy -x log2 x - (1-x) log2(1-x) on [0,1], with 0 log2 0 = 0.
double binary_entropy(double x);

/// x (1-x) on [0,1]; the impurity of an occupation number.
double linear_entropy(double x);

/// -x^2 log2(x^2) on [0,1], zero for x > 1; defined for x >= 0.
/// Monotone increasing on [0, e^{-1/2}].
double quadratic_log_entropy(double x);

/// Scan the two-sided bound -g log2 g <= h <= -3 g log2 g over a grid in [0,1].
InequalityReport check_sandwich(std::span<const double> grid);

/// Scan -x log2 x <= x^s/(1-s) and g <= h <= (6/(1-s)) g^s for s in ]0,1[.
InequalityReport check_power_bounds(std::span<const double> grid, double s);

/// Scan f(x+y) <= 2 f(x) + 2 f(y) over all grid pairs with x + y < 1,
/// f = quadratic_log_entropy.
InequalityReport check_log_sum_bound(std::span<const double> grid);

/// n equally spaced points covering [lo, hi] inclusive.
std::vector<double> uniform_grid(std::size_t n, double lo = 0.0, double hi = 1.0);

} // namespace eelab
