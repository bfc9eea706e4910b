// SPDX-License-Identifier: Apache-2.0
#ifndef BITSCALE_NUMERICS_HPP
#define BITSCALE_NUMERICS_HPP

#include <span>
#include <vector>

#include "bitscale/matrix.hpp"

namespace bitscale {

/// Lower-triangular L with L*L^T = a.
/// Throws NotPositiveDefinite when a pivot is <= 0; callers that can tolerate
/// a degenerate matrix must damp it themselves before retrying.
Matrix cholesky(const Matrix &a);

/// Solve L*y = b for lower-triangular L.
std::vector<double> solve_lower(const Matrix &l, std::span<const double> b);
/// Solve U*x = y for upper-triangular U.
std::vector<double> solve_upper(const Matrix &u, std::span<const double> y);

/// Inverse of a symmetric positive-definite matrix via its Cholesky factor.
Matrix spd_inverse(const Matrix &a);

/// Round to nearest, ties to even. The one rounding used everywhere.
double round_half_even(double v);

/// Average-rank ranks (ties share the mean of their positions).
std::vector<double> average_ranks(std::span<const double> x);

/// Spearman rank correlation with average-rank tie handling.
/// Throws LengthMismatch (unequal or short inputs) and DegenerateInput
/// (either sequence constant).
double spearman_rho(std::span<const double> x, std::span<const double> y);

} // namespace bitscale

#endif
