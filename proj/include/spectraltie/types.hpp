#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace spectraltie {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// A complex number stored as mantissa * exp(log_scale). Used wherever Airy
// products would leave the double range (|exponents| in the hundreds).
struct ScaledComplex {
  Complex mantissa{0.0, 0.0};
  double log_scale = 0.0;

  ScaledComplex() = default;
  ScaledComplex(Complex m, double s = 0.0) : mantissa(m), log_scale(s) {}

  // exp(e) for complex e, without forming the (possibly overflowing) value.
  static ScaledComplex exp(Complex e) {
    return {std::polar(1.0, e.imag()), e.real()};
  }

  bool is_zero() const { return mantissa == Complex{}; }

  // log|z|; -inf for zero.
  double log_abs() const {
    if (is_zero()) return -INFINITY;
    return std::log(std::abs(mantissa)) + log_scale;
  }
  double arg() const { return std::arg(mantissa); }

  // Brings the mantissa back to unit-ish magnitude.
  ScaledComplex normalized() const {
    double a = std::abs(mantissa);
    if (a == 0.0 || !std::isfinite(a)) return *this;
    double l = std::log(a);
    return {mantissa / a, log_scale + l};
  }

  // Plain value; may overflow to inf or underflow to zero.
  Complex value() const { return mantissa * std::exp(log_scale); }

  // Value times exp(-s).
  Complex value_scaled_by(double s) const {
    if (is_zero()) return {};
    return mantissa * std::exp(log_scale - s);
  }

  friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
    return ScaledComplex{a.mantissa * b.mantissa, a.log_scale + b.log_scale}.normalized();
  }
  friend ScaledComplex operator*(const ScaledComplex& a, Complex b) {
    return ScaledComplex{a.mantissa * b, a.log_scale}.normalized();
  }
  friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
    return ScaledComplex{a.mantissa / b.mantissa, a.log_scale - b.log_scale}.normalized();
  }
  friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    double s = std::max(a.log_scale, b.log_scale);
    return ScaledComplex{a.value_scaled_by(s) + b.value_scaled_by(s), s}.normalized();
  }
  friend ScaledComplex operator-(const ScaledComplex& a) { return {-a.mantissa, a.log_scale}; }
  friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) { return a + (-b); }
};

// Ratio a/b as a plain complex number (finite as long as |a/b| is representable).
inline Complex ratio(const ScaledComplex& a, const ScaledComplex& b) {
  return (a.mantissa / b.mantissa) * std::exp(a.log_scale - b.log_scale);
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class RegionError : public Error {
 public:
  using Error::Error;
};

class PathError : public Error {
 public:
  using Error::Error;
};

// e^{-(2/3)xi^{3/2}} left the double range; the exponent travels with the error.
class ScaledOverflowError : public Error {
 public:
  ScaledOverflowError(const std::string& what, Complex exponent)
      : Error(what), exponent_(exponent) {}
  Complex exponent() const { return exponent_; }

 private:
  Complex exponent_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, Complex last_iterate)
      : Error(what), last_(last_iterate) {}
  Complex last_iterate() const { return last_; }

 private:
  Complex last_;
};

}  // namespace spectraltie
