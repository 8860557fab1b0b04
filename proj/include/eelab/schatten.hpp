#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <utility>

#include "eelab/entropy_functions.hpp"

namespace eelab {

/// Singular values of a (rectangular) matrix, nonincreasing.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);

/// Schatten norm (sum_n a_n^p)^(1/p) for p > 0 (a quasi-norm for p < 1).
double schatten_norm(const Eigen::MatrixXd& a, double p);

/// Raw power sum sum_n a_n^p of the singular values.
double schatten_power_sum(const Eigen::MatrixXd& a, double p);

/// Power sum evaluated on an already computed singular spectrum.
double power_sum(const Eigen::VectorXd& sorted_singular_values, double p);

/// tr f(|A|) with f = quadratic_log_entropy. Singular values below
/// 1e-14 * a_1 count as zero.
double trace_quadratic_log_entropy(const Eigen::MatrixXd& a);

/// Weyl-type additivity a_{n+m-1}(A) <= a_n(B) + a_m(A-B) over index pairs.
/// Indices are 1-based; values beyond the matrix rank count as zero.
InequalityReport check_singular_additivity(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                           std::span<const std::pair<int, int>> pairs);

/// Same check over every pair (n,m) with n,m <= min(rows, cols).
InequalityReport check_singular_additivity_all(const Eigen::MatrixXd& a,
                                               const Eigen::MatrixXd& b);

/// ||A||_{2s}^{2s} <= ||A||_1^{2(1-s)} ||A||_2^{2(2s-1)} for s in ]1/2,1[.
InequalityReport check_interpolation(const Eigen::MatrixXd& a, double s);

/// tr f(|A|) <= 4 tr f(|B|) + 4 tr f(|A-B|), valid when both operator norms
/// are at most e^{-1/2}/3. Violating the norm bound is an error, not a slack.
InequalityReport check_log_triangle(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Largest admissible operator norm for check_log_triangle.
double log_triangle_norm_cap();

// Randomized corpora with i.i.d. uniform [-1,1] entries, deterministic per
// (seed, sample index). Matrices are rescaled where a precondition demands.
InequalityReport run_singular_additivity_corpus(int samples, int size, std::uint64_t seed);
InequalityReport run_interpolation_corpus(int samples, int size, std::span<const double> s_grid,
                                          std::uint64_t seed);
InequalityReport run_log_triangle_corpus(int samples, int size, std::uint64_t seed);

/// Uniform [-1,1] test matrix for corpus sample `index`.
Eigen::MatrixXd random_uniform_matrix(int rows, int cols, std::uint64_t seed,
                                      std::uint64_t index);

} // namespace eelab
