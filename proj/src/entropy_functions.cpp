#include "eelab/entropy_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eelab {

void InequalityReport::record(double slack, std::initializer_list<double> input) {
    ++samples;
    if (slack < max_violation) {
        max_violation = slack;
        worst_input.assign(input);
    }
}

namespace {

void require_unit(double x, const char* fn) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error(std::string(fn) + ": argument outside [0,1]");
}

// x log2 x with the 0 log2 0 = 0 convention
double xlog2x(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

} // namespace

double binary_entropy(double x) {
    require_unit(x, "binary_entropy");
    return -xlog2x(x) - xlog2x(1.0 - x);
}

double linear_entropy(double x) {
    require_unit(x, "linear_entropy");
    return x * (1.0 - x);
}

double quadratic_log_entropy(double x) {
    if (!(x >= 0.0))
        throw std::domain_error("quadratic_log_entropy: argument must be nonnegative");
    if (x == 0.0 || x >= 1.0)
        return 0.0;
    return -x * x * std::log2(x * x);
}

InequalityReport check_sandwich(std::span<const double> grid) {
    InequalityReport report;
    for (double x : grid) {
        const double h = binary_entropy(x);
        const double g = linear_entropy(x);
        const double glg = -xlog2x(g);          // -g log2 g, 0 at the endpoints
        report.record(h - glg, {x});
        report.record(3.0 * glg - h, {x});
    }
    return report;
}

InequalityReport check_power_bounds(std::span<const double> grid, double s) {
    if (!(s > 0.0 && s < 1.0))
        throw std::domain_error("check_power_bounds: exponent s must lie in ]0,1[");
    InequalityReport report;
    for (double x : grid) {
        const double h = binary_entropy(x);
        const double g = linear_entropy(x);
        report.record(std::pow(x, s) / (1.0 - s) + xlog2x(x), {x});
        report.record(h - g, {x});
        report.record(6.0 / (1.0 - s) * std::pow(g, s) - h, {x});
    }
    return report;
}

InequalityReport check_log_sum_bound(std::span<const double> grid) {
    InequalityReport report;
    for (double x : grid) {
        if (x < 0.0) continue;
        for (double y : grid) {
            if (y < 0.0 || x + y >= 1.0) continue;
            const double slack = 2.0 * quadratic_log_entropy(x) +
                                 2.0 * quadratic_log_entropy(y) -
                                 quadratic_log_entropy(x + y);
            report.record(slack, {x, y});
        }
    }
    return report;
}

std::vector<double> uniform_grid(std::size_t n, double lo, double hi) {
    if (n < 2)
        throw std::invalid_argument("uniform_grid: need at least two points");
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    grid.back() = hi;
    return grid;
}

} // namespace eelab
