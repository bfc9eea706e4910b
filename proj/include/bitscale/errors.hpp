// SPDX-License-Identifier: Apache-2.0
#ifndef BITSCALE_ERRORS_HPP
#define BITSCALE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bitscale {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

struct NotPositiveDefinite : Error {
  explicit NotPositiveDefinite(const std::string &msg) : Error(msg) {}
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string &msg) : Error(msg) {}
};

struct DegenerateInput : Error {
  explicit DegenerateInput(const std::string &msg) : Error(msg) {}
};

struct EmptyCalibration : Error {
  explicit EmptyCalibration(const std::string &msg) : Error(msg) {}
};

struct NonPositiveScale : Error {
  explicit NonPositiveScale(const std::string &msg) : Error(msg) {}
};

struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string &msg) : Error(msg) {}
};

struct DivergedTraining : Error {
  explicit DivergedTraining(const std::string &msg) : Error(msg) {}
};

struct ZeroSignal : Error {
  explicit ZeroSignal(const std::string &msg) : Error(msg) {}
};

struct InsufficientPoints : Error {
  explicit InsufficientPoints(const std::string &msg) : Error(msg) {}
};

struct NoValidFit : Error {
  explicit NoValidFit(const std::string &msg) : Error(msg) {}
};

struct EmptyInput : Error {
  explicit EmptyInput(const std::string &msg) : Error(msg) {}
};

struct InvalidConfig : Error {
  explicit InvalidConfig(const std::string &msg) : Error(msg) {}
};

} // namespace bitscale

#endif
