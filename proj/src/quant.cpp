// SPDX-License-Identifier: Apache-2.0
#include "bitscale/quant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bitscale/errors.hpp"
#include "bitscale/numerics.hpp"

namespace bitscale::quant {

QuantSpec QuantSpec::integer(int bits, Granularity g, std::size_t group_size) {
  QuantSpec s;
  s.bits = bits;
  s.scheme = Scheme::Integer;
  s.granularity = g;
  s.group_size = group_size;
  s.validate();
  return s;
}

QuantSpec QuantSpec::floating(int e_bits, int m_bits) {
  QuantSpec s;
  s.bits = 1 + e_bits + m_bits;
  s.scheme = Scheme::Float;
  s.e_bits = e_bits;
  s.m_bits = m_bits;
  s.validate();
  return s;
}

void QuantSpec::validate() const {
  if (bits < 2 || bits > 16)
    throw InvalidConfig("QuantSpec: bits must be in [2, 16]");
  if (scheme == Scheme::Float) {
    if (1 + e_bits + m_bits != bits)
      throw InvalidConfig("QuantSpec: float layout must satisfy 1+e+m == bits");
    if (e_bits < 2 || m_bits < 1)
      throw InvalidConfig("QuantSpec: float scheme needs e >= 2, m >= 1");
  }
  if (granularity == Granularity::Group && group_size == 0)
    throw InvalidConfig("QuantSpec: group granularity needs a group size");
}

std::size_t QuantSpec::group_count(std::size_t rows, std::size_t cols) const {
  switch (granularity) {
  case Granularity::PerTensor:
    return 1;
  case Granularity::PerRow:
    return rows;
  case Granularity::Group:
    if (cols % group_size != 0)
      throw InvalidConfig("QuantSpec: group size does not divide the column count");
    return rows * (cols / group_size);
  }
  return 1;
}

std::size_t QuantSpec::group_index(std::size_t r, std::size_t c, std::size_t cols) const {
  switch (granularity) {
  case Granularity::PerTensor:
    return 0;
  case Granularity::PerRow:
    return r;
  case Granularity::Group:
    return r * (cols / group_size) + c / group_size;
  }
  return 0;
}

std::vector<QuantParams> calibrate_uniform(const Matrix &x, const QuantSpec &spec,
                                           double gamma, double beta) {
  spec.validate();
  if (!x.is_finite())
    throw DegenerateInput("calibrate_uniform: non-finite input");
  if (!(gamma > 0.0 && gamma <= 1.0) || !(beta > 0.0 && beta <= 1.0))
    throw InvalidConfig("calibrate_uniform: gamma, beta must be in (0, 1]");

  const std::size_t n_groups = spec.group_count(x.rows(), x.cols());
  std::vector<double> lo(n_groups, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n_groups, -std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) {
      std::size_t g = spec.group_index(r, c, x.cols());
      lo[g] = std::min(lo[g], x(r, c));
      hi[g] = std::max(hi[g], x(r, c));
    }

  const double levels = static_cast<double>(spec.qmax());
  std::vector<QuantParams> out(n_groups);
  for (std::size_t g = 0; g < n_groups; ++g) {
    QuantParams p;
    p.gamma = gamma;
    p.beta = beta;
    const double range = gamma * hi[g] - beta * lo[g];
    if (range <= 0.0) {
      // Degenerate range: constant tensor or clip factors that cross over.
      p.scale = 1.0;
      p.zero_point = 0;
    } else {
      p.scale = range / levels;
      double z = round_half_even(-beta * lo[g] / p.scale);
      p.zero_point = static_cast<std::int64_t>(
          std::clamp(z, 0.0, static_cast<double>(spec.qmax())));
    }
    out[g] = p;
  }
  return out;
}

std::int64_t quantize_value(double x, const QuantParams &p, int bits) {
  const std::int64_t qmax = (std::int64_t{1} << bits) - 1;
  double q = round_half_even(x / p.scale) + static_cast<double>(p.zero_point);
  if (q < 0.0)
    return 0;
  if (q > static_cast<double>(qmax))
    return qmax;
  return static_cast<std::int64_t>(q);
}

double dequantize_value(std::int64_t q, const QuantParams &p) {
  return static_cast<double>(q - p.zero_point) * p.scale;
}

double fake_quant_value(double x, const QuantParams &p, int bits) {
  return dequantize_value(quantize_value(x, p, bits), p);
}

IntMatrix quantize(const Matrix &x, const std::vector<QuantParams> &params,
                   const QuantSpec &spec) {
  if (params.size() != spec.group_count(x.rows(), x.cols()))
    throw LengthMismatch("quantize: wrong number of parameter groups");
  IntMatrix q(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c)
      q(r, c) = quantize_value(x(r, c), params[spec.group_index(r, c, x.cols())],
                               spec.bits);
  return q;
}

Matrix dequantize(const IntMatrix &q, const std::vector<QuantParams> &params,
                  const QuantSpec &spec) {
  if (params.size() != spec.group_count(q.rows(), q.cols()))
    throw LengthMismatch("dequantize: wrong number of parameter groups");
  Matrix x(q.rows(), q.cols());
  for (std::size_t r = 0; r < q.rows(); ++r)
    for (std::size_t c = 0; c < q.cols(); ++c) {
      std::int64_t v = q(r, c);
      if (v < 0 || v > spec.qmax())
        throw IndexOutOfRange("dequantize: index outside [0, 2^b - 1]");
      x(r, c) = dequantize_value(v, params[spec.group_index(r, c, q.cols())]);
    }
  return x;
}

Matrix fake_quant(const Matrix &x, const std::vector<QuantParams> &params,
                  const QuantSpec &spec) {
  return dequantize(quantize(x, params, spec), params, spec);
}

Matrix fake_quant(const Matrix &x, const QuantSpec &spec) {
  return fake_quant(x, calibrate_uniform(x, spec), spec);
}

double fp_max_normal(int e_bits, int m_bits) {
  const int bias = (1 << (e_bits - 1)) - 1;
  const int e_top = (1 << e_bits) - 1;
  // Top mantissa pattern at the top exponent is the reserved (NaN) slot.
  const double frac = 1.0 + static_cast<double>((1 << m_bits) - 2) /
                                static_cast<double>(1 << m_bits);
  return std::ldexp(frac, e_top - bias);
}

double fp_quantize_value(double x, int e_bits, int m_bits) {
  if (e_bits < 2 || m_bits < 1)
    throw InvalidConfig("fp_quantize: need e >= 2, m >= 1");
  const double sign = x < 0.0 ? -1.0 : 1.0;
  double v = std::abs(x);
  const double max_normal = fp_max_normal(e_bits, m_bits);
  if (v >= max_normal)
    return sign * max_normal;

  const int bias = (1 << (e_bits - 1)) - 1;
  int exp;
  std::frexp(v, &exp); // v = f * 2^exp with f in [0.5, 1)
  int binade = exp - 1; // v in [2^binade, 2^(binade+1))
  const int min_normal_exp = 1 - bias;
  // Subnormals share the first normal binade's step.
  binade = std::max(binade, min_normal_exp);
  const double step = std::ldexp(1.0, binade - m_bits);
  double q = round_half_even(v / step) * step;
  if (q > max_normal)
    q = max_normal;
  return sign * q;
}

Matrix fp_quantize(const Matrix &x, int e_bits, int m_bits, double scale) {
  if (!(scale > 0.0))
    throw NonPositiveScale("fp_quantize: scale must be positive");
  Matrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i)
    out.data()[i] = fp_quantize_value(x.data()[i] / scale, e_bits, m_bits) * scale;
  return out;
}

double fp_calibrate_scale(const Matrix &x, int e_bits, int m_bits) {
  const double m = x.max_abs();
  if (m == 0.0)
    return 1.0;
  return m / fp_max_normal(e_bits, m_bits);
}

std::vector<double> fp_grid(int e_bits, int m_bits) {
  const int bias = (1 << (e_bits - 1)) - 1;
  const int e_top = (1 << e_bits) - 1;
  const int mant = 1 << m_bits;
  std::vector<double> grid;
  for (int f = 0; f < mant; ++f) // subnormals (exponent code 0), including 0
    grid.push_back(std::ldexp(static_cast<double>(f) / mant, 1 - bias));
  for (int e = 1; e <= e_top; ++e)
    for (int f = 0; f < mant; ++f) {
      if (e == e_top && f == mant - 1)
        continue; // reserved slot
      grid.push_back(std::ldexp(1.0 + static_cast<double>(f) / mant, e - bias));
    }
  return grid;
}

TransformedAffine equivalent_transform(const Matrix &x, const Matrix &w,
                                       const std::vector<double> &bias,
                                       const EquivTransform &t) {
  const std::size_t channels = x.cols();
  if (w.rows() != channels || t.channel_scale.size() != channels ||
      t.channel_shift.size() != channels || bias.size() != w.cols())
    throw LengthMismatch("equivalent_transform: shape mismatch");
  for (double s : t.channel_scale)
    if (!(s > 0.0))
      throw NonPositiveScale("equivalent_transform: channel scale must be positive");

  TransformedAffine out;
  out.x = Matrix(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < channels; ++c)
      out.x(r, c) = (x(r, c) - t.channel_shift[c]) / t.channel_scale[c];

  out.w = Matrix(w.rows(), w.cols());
  for (std::size_t r = 0; r < channels; ++r)
    for (std::size_t c = 0; c < w.cols(); ++c)
      out.w(r, c) = t.channel_scale[r] * w(r, c);

  out.bias = bias;
  for (std::size_t c = 0; c < w.cols(); ++c) {
    double acc = 0.0;
    for (std::size_t r = 0; r < channels; ++r)
      acc += t.channel_shift[r] * w(r, c);
    out.bias[c] += acc;
  }
  return out;
}

std::string quant_params_to_json(const QuantParams &p, const QuantSpec &spec) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"bits\":" << spec.bits << ",\"scheme\":\""
     << (spec.scheme == Scheme::Integer ? "integer" : "float") << "\",\"s\":"
     << p.scale << ",\"z\":" << p.zero_point << ",\"gamma\":" << p.gamma
     << ",\"beta\":" << p.beta << "}";
  return os.str();
}

} // namespace bitscale::quant
