#include "spectraltie/scalar_maps.hpp"

#include <cmath>
#include <string>

#include "spectraltie/airy.hpp"

namespace spectraltie {

namespace {

const Complex kRot = std::polar(1.0, -kPi / 6);  // e^{-i pi/6}
const Complex kEm4 = std::polar(1.0, -kPi / 4);  // e^{-i pi/4}

void check_lambda(Complex lambda) {
  if (!is_finite(lambda)) throw DomainError("f: non-finite lambda");
  if (lambda.imag() > 0.0) throw DomainError("f: lambda in the upper half-plane");
  if (lambda.imag() == 0.0 && std::abs(lambda.real()) < 1.0)
    throw DomainError("f: lambda on the real interval (-1, 1), branch ambiguous");
}

// z^{3/2} and z^{1/2}, principal branch. Arguments here have Im >= 0, so the
// cut on the negative axis is never crossed from the lower half-plane.
Complex pow32(Complex z) { return z * std::sqrt(z); }

// Lower-half-plane limit for arguments that come from -lambda.
Complex shifted(double a, Complex lambda) { return {a - lambda.real(), -lambda.imag()}; }

}  // namespace

ProblemParams ProblemParams::make(double epsilon, double alpha, double reynolds, double theta) {
  if (!(epsilon > 0.0) || !(alpha > 0.0) || !(reynolds > 0.0))
    throw DomainError("params: epsilon, alpha and reynolds must be positive");
  if (std::abs(epsilon * alpha * reynolds - 1.0) > 1e-12)
    throw DomainError("params: epsilon * alpha * reynolds != 1");
  if (!(theta > kThetaMin)) throw DomainError("params: theta must exceed (1/3)(3/4)^{3/4}");
  ProblemParams p;
  p.epsilon = epsilon;
  p.alpha = alpha;
  p.reynolds = reynolds;
  p.theta = theta;
  p.sigma = std::cbrt(epsilon);
  for (int j = 0; j < 3; ++j) p.omega[j] = std::polar(1.0, 2 * kPi * j / 3 + kPi / 6);
  return p;
}

ProblemParams ProblemParams::from_epsilon(double epsilon, double alpha, double theta) {
  if (!(epsilon > 0.0) || !(alpha > 0.0)) throw DomainError("params: epsilon and alpha must be positive");
  return make(epsilon, alpha, 1.0 / (epsilon * alpha), theta);
}

ProblemParams ProblemParams::from_reynolds(double reynolds, double alpha, double theta) {
  if (!(reynolds > 0.0) || !(alpha > 0.0)) throw DomainError("params: reynolds and alpha must be positive");
  return make(1.0 / (alpha * reynolds), alpha, reynolds, theta);
}

double node_offset(double epsilon, double theta) { return std::sqrt(epsilon) * theta * std::log(1.0 / epsilon); }

Complex d_epsilon(const ProblemParams& p) {
  return Complex(0.0, -(1.0 / std::sqrt(3.0) + node_offset(p.epsilon, p.theta)));
}

Complex segment_point(double t, double gamma) { return -1.0 + kRot * Complex(t, gamma); }

std::pair<double, double> segment_coords(Complex lambda) {
  const Complex w = (lambda + 1.0) * std::conj(kRot);
  return {w.real(), w.imag()};
}

RegionSpec make_region(RegionKind kind, const ProblemParams& p) {
  RegionSpec r;
  r.kind = kind;
  r.epsilon = p.epsilon;
  r.theta = p.theta;
  if (kind == RegionKind::D_eps) {
    r.d1 = r.d2 = d_epsilon(p);
  } else if (kind == RegionKind::Omega1 || kind == RegionKind::Omega2) {
    r.d1 = segment_point(std::pow(p.epsilon, 0.25), 0.0);
    r.d2 = segment_point(kSegmentLength - 2.0 * node_offset(p.epsilon, p.theta), 0.0);
  }
  return r;
}

Membership region_contains(const RegionSpec& region, Complex lambda) {
  switch (region.kind) {
    case RegionKind::D_eps: {
      const double x = lambda.real();
      if (std::abs(x) > 1.0) return Membership::outside;
      return lambda.imag() <= region.d1.imag() * (1.0 + std::abs(x)) ? Membership::inside : Membership::outside;
    }
    case RegionKind::ExtendedAiry:
      if (std::abs(lambda) <= 1.0) return Membership::outside;
      return airy::in_extended_domain(lambda, region.kappa) ? Membership::inside : Membership::outside;
    case RegionKind::Omega1:
    case RegionKind::Omega2: {
      if (lambda.real() < -1.0 || lambda.real() > 0.0 || lambda.imag() > 0.0) return Membership::outside;
      if (std::abs(lambda + 1.0) < std::abs(region.d1 + 1.0)) return Membership::outside;
      const Complex d2 = region.d2;
      const double line = d2.imag() * (1.0 - lambda.real()) / (1.0 - d2.real());
      if (lambda.imag() < line) return Membership::outside;
      return segment_coords(lambda).second >= 0.0 ? Membership::omega1 : Membership::omega2;
    }
  }
  return Membership::outside;
}

bool in_region(const RegionSpec& region, Complex lambda) {
  const Membership m = region_contains(region, lambda);
  switch (region.kind) {
    case RegionKind::Omega1: return m == Membership::omega1;
    case RegionKind::Omega2: return m == Membership::omega2;
    default: return m == Membership::inside;
  }
}

Complex f_map(Complex lambda) {
  check_lambda(lambda);
  return (2.0 / 3.0) * kEm4 * (pow32(shifted(1.0, lambda)) - pow32(shifted(-1.0, lambda)));
}

Complex f_deriv(Complex lambda) {
  check_lambda(lambda);
  return kEm4 * (std::sqrt(shifted(-1.0, lambda)) - std::sqrt(shifted(1.0, lambda)));
}

double phi_envelope(double t) {
  if (t < 0.0 || t > kSegmentLength + 1e-12) throw DomainError("phi: t outside [0, 2/sqrt(3)]");
  const Complex z = 2.0 * std::polar(1.0, kPi / 6) - t;
  return (4.0 / 3.0) * pow32(z).real();
}

CurveConstants curve_constants(Complex lambda, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("curve_constants: alpha must be positive");
  const Complex s = std::sinh(alpha * (1.0 - lambda));
  return {2.0 * std::sqrt(kPi) * std::abs(s) / std::sinh(2.0 * alpha), std::arg(s) / (2.0 * kPi)};
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::outside: return "outside";
    case Membership::inside: return "inside";
    case Membership::omega1: return "omega1";
    case Membership::omega2: return "omega2";
  }
  return "?";
}

}  // namespace spectraltie
