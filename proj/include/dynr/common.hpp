#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dynr {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr cplx kI{0.0, 1.0};

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid modular parameters or configuration values.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// A requested order exceeds what the evaluator was configured for.
class CapabilityError : public Error {
public:
  using Error::Error;
};

/// A theta factor vanishes (argument on or too close to the period lattice).
class SingularityError : public Error {
public:
  SingularityError(std::string factor, const std::string& what)
      : Error(what), factor_(std::move(factor)) {}
  const std::string& factor() const noexcept { return factor_; }

private:
  std::string factor_;
};

/// Operation undefined for the input (e.g. inverting a zero series).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Truncated series does not carry enough trusted coefficients.
class PrecisionError : public Error {
public:
  using Error::Error;
};

/// Linear system too ill-conditioned to be trusted.
class ConditioningError : public Error {
public:
  ConditioningError(double condition, const std::string& what)
      : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

private:
  double condition_;
};

/// Parses "a+bi", "a-bi", "bi", "a", "i", "-0.5i" and friends.
cplx parse_complex(std::string_view text);

/// Shortest round-trippable "a+bi" rendering.
std::string format_complex(cplx value);

/// Short human-readable form (%g).
std::string format_short(double value);

}  // namespace dynr
