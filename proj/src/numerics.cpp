// SPDX-License-Identifier: Apache-2.0
#include "bitscale/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bitscale/errors.hpp"

namespace bitscale {

Matrix cholesky(const Matrix &a) {
  const std::size_t n = a.rows();
  if (a.cols() != n)
    throw DegenerateInput("cholesky: matrix is not square");
  if (!a.is_symmetric())
    throw DegenerateInput("cholesky: matrix is not symmetric");
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = a(i, j);
      for (std::size_t k = 0; k < j; ++k)
        sum -= l(i, k) * l(j, k);
      if (i == j) {
        if (sum <= 0.0)
          throw NotPositiveDefinite("cholesky: pivot " + std::to_string(i) +
                                    " is not positive");
        l(i, i) = std::sqrt(sum);
      } else {
        l(i, j) = sum / l(j, j);
      }
    }
  }
  return l;
}

std::vector<double> solve_lower(const Matrix &l, std::span<const double> b) {
  const std::size_t n = l.rows();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t j = 0; j < i; ++j)
      s -= l(i, j) * y[j];
    y[i] = s / l(i, i);
  }
  return y;
}

std::vector<double> solve_upper(const Matrix &u, std::span<const double> y) {
  const std::size_t n = u.rows();
  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j)
      s -= u(ii, j) * x[j];
    x[ii] = s / u(ii, ii);
  }
  return x;
}

Matrix spd_inverse(const Matrix &a) {
  const std::size_t n = a.rows();
  Matrix l = cholesky(a);
  Matrix lt = l.transposed();
  Matrix inv(n, n);
  std::vector<double> e(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    e[c] = 1.0;
    std::vector<double> y = solve_lower(l, e);
    std::vector<double> x = solve_upper(lt, y);
    for (std::size_t r = 0; r < n; ++r)
      inv(r, c) = x[r];
    e[c] = 0.0;
  }
  // Symmetrize: the column solves agree only to rounding.
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) {
      double v = 0.5 * (inv(r, c) + inv(c, r));
      inv(r, c) = v;
      inv(c, r) = v;
    }
  return inv;
}

double round_half_even(double v) {
  // nearbyint honors the default FE_TONEAREST mode, which is ties-to-even.
  return std::nearbyint(v);
}

std::vector<double> average_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]])
      ++j;
    double r = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t k = i; k <= j; ++k)
      ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3)
    throw LengthMismatch("spearman_rho: need equal lengths >= 3");
  auto constant = [](std::span<const double> v) {
    for (double e : v)
      if (e != v[0])
        return false;
    return true;
  };
  if (constant(x) || constant(y))
    throw DegenerateInput("spearman_rho: constant input sequence");

  std::vector<double> rx = average_ranks(x);
  std::vector<double> ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = rx[i] - mx, dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

} // namespace bitscale
