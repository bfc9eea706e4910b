// SPDX-License-Identifier: Apache-2.0
#ifndef BITSCALE_QUANT_HPP
#define BITSCALE_QUANT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bitscale/matrix.hpp"

namespace bitscale::quant {

enum class Scheme { Integer, Float };
enum class Granularity { PerTensor, PerRow, Group };

/// Static description of a quantizer: bit budget, integer vs floating grid,
/// and how parameters are shared across a tensor.
struct QuantSpec {
  int bits = 8;
  Scheme scheme = Scheme::Integer;
  int e_bits = 0; // float scheme only; 1 + e_bits + m_bits == bits
  int m_bits = 0;
  Granularity granularity = Granularity::PerTensor;
  std::size_t group_size = 0; // Group granularity only; divides the column count

  static QuantSpec integer(int bits, Granularity g = Granularity::PerTensor,
                           std::size_t group_size = 0);
  static QuantSpec floating(int e_bits, int m_bits);

  std::int64_t qmax() const { return (std::int64_t{1} << bits) - 1; }
  void validate() const;
  /// Number of parameter groups for a rows x cols tensor, in row-major
  /// group order.
  std::size_t group_count(std::size_t rows, std::size_t cols) const;
  std::size_t group_index(std::size_t r, std::size_t c, std::size_t cols) const;
};

/// Affine quantizer parameters for one granularity group.
struct QuantParams {
  double scale = 1.0;
  std::int64_t zero_point = 0;
  double gamma = 1.0;
  double beta = 1.0;
};

/// Min/max calibration with learnable-clipping factors:
///   s = (gamma*max - beta*min) / (2^b - 1),  z = clip(round(-beta*min/s)).
/// A group whose scaled range collapses (gamma*max - beta*min <= 0) falls
/// back to s = 1, z = 0.
std::vector<QuantParams> calibrate_uniform(const Matrix &x, const QuantSpec &spec,
                                           double gamma = 1.0, double beta = 1.0);

std::int64_t quantize_value(double x, const QuantParams &p, int bits);
double dequantize_value(std::int64_t q, const QuantParams &p);
double fake_quant_value(double x, const QuantParams &p, int bits);

IntMatrix quantize(const Matrix &x, const std::vector<QuantParams> &params,
                   const QuantSpec &spec);
Matrix dequantize(const IntMatrix &q, const std::vector<QuantParams> &params,
                  const QuantSpec &spec);
Matrix fake_quant(const Matrix &x, const std::vector<QuantParams> &params,
                  const QuantSpec &spec);
/// Calibrate-and-fake-quant in one step (gamma = beta = 1).
Matrix fake_quant(const Matrix &x, const QuantSpec &spec);

/// Floating-point grid with e exponent bits and m mantissa bits, subnormals
/// included. All exponent codes encode finite values; the single all-ones
/// (top exponent, top mantissa) pattern is reserved, so e.g. the (4,3) grid
/// saturates at 448. Values round to the nearest grid point, ties to even
/// mantissa, and overflow saturates at the max normal.
double fp_max_normal(int e_bits, int m_bits);
double fp_quantize_value(double x, int e_bits, int m_bits);
Matrix fp_quantize(const Matrix &x, int e_bits, int m_bits, double scale);
/// Per-tensor scale mapping max|x| onto the max normal (1 for an all-zero x).
double fp_calibrate_scale(const Matrix &x, int e_bits, int m_bits);
/// All non-negative grid values in ascending order (test oracle helper).
std::vector<double> fp_grid(int e_bits, int m_bits);

/// Per-channel rescale/shift of Y = X*W + bias (X: n x C, W: C x M):
///   X~ = (X - delta) / s  per column,  W~ = s * W per row,
///   bias~ = bias + delta * W.
struct EquivTransform {
  std::vector<double> channel_scale; // s, all > 0
  std::vector<double> channel_shift; // delta
};

struct TransformedAffine {
  Matrix x;
  Matrix w;
  std::vector<double> bias;
};

TransformedAffine equivalent_transform(const Matrix &x, const Matrix &w,
                                       const std::vector<double> &bias,
                                       const EquivTransform &t);

/// JSON round-trip for experiment manifests: {bits, scheme, s, z, gamma, beta}.
std::string quant_params_to_json(const QuantParams &p, const QuantSpec &spec);

} // namespace bitscale::quant

#endif
