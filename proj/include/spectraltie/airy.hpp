#pragma once

// Airy-Fock function v(xi) = Ai(xi) for complex argument.

#include <vector>

#include "spectraltie/types.hpp"

namespace spectraltie::airy {

// Which evaluation branch produced a value.
//   series      Maclaurin series (long double accumulation)
//   asymptotic  large-|xi| expansion in |arg xi| <= 2pi/3
//   connection  v(xi) = e^{-pi i/3} v(w xi) + e^{pi i/3} v(w^-1 xi), w = e^{2pi i/3}
//   taylor      ODE Taylor stepping inward from the asymptotic circle; covers the
//               annulus near the positive axis where the series cancels badly
enum class Regime { series, asymptotic, connection, taylor };

const char* to_string(Regime r);

struct AiryEval {
  Complex value;
  Complex derivative;
  Regime regime;
};

// v = value * exp(exponent), v' = derivative * exp(exponent).
struct ScaledAiryEval {
  Complex value;
  Complex derivative;
  Complex exponent;
  Regime regime;

  ScaledComplex scaled_value() const { return ScaledComplex::exp(exponent) * value; }
  ScaledComplex scaled_derivative() const { return ScaledComplex::exp(exponent) * derivative; }
};

// |xi| above which the series gives way to the asymptotic/connection branches.
inline constexpr double kCrossoverRadius = 7.0;

// v(xi) and v'(xi). Throws ScaledOverflowError when the result leaves the double
// range; use airy_v_scaled there.
AiryEval airy_v(Complex xi);

// Same value in (mantissa, exponent) form. Never overflows.
ScaledAiryEval airy_v_scaled(Complex xi);

// Evaluation through one named branch regardless of |xi|. For overlap tests.
ScaledAiryEval airy_v_forced(Complex xi, Regime regime);

// First n positive zeros x_k of v(-x), increasing.
std::vector<double> airy_real_zeros(int n);

// Leading-order asymptotic value e^{-(2/3)xi^{3/2}} / (2 sqrt(pi) xi^{1/4}).
ScaledComplex airy_leading(Complex xi);

// |arg xi| <= pi - kappa ln|xi| / |xi|^{3/2}. Requires |xi| > 1 and kappa >= 3/4.
bool in_extended_domain(Complex xi, double kappa = 0.75);

}  // namespace spectraltie::airy
