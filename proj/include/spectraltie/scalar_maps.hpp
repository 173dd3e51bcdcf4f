#pragma once

#include <array>
#include <utility>

#include "spectraltie/types.hpp"

namespace spectraltie {

// Lower bound on the node-cutoff exponent theta.
inline const double kThetaMin = std::pow(0.75, 0.75) / 3.0;
// Branch point of the tie and length of each segment [-1, node].
inline const Complex kNode{0.0, -1.0 / std::sqrt(3.0)};
inline const double kSegmentLength = 2.0 / std::sqrt(3.0);

struct ProblemParams {
  double epsilon = 0;
  double alpha = 1;
  double reynolds = 0;
  double theta = 0.3;
  double sigma = 0;
  std::array<Complex, 3> omega{};

  static ProblemParams from_epsilon(double epsilon, double alpha = 1.0, double theta = 0.3);
  static ProblemParams from_reynolds(double reynolds, double alpha = 1.0, double theta = 0.3);
  // All three physical parameters; throws unless epsilon*alpha*reynolds = 1.
  static ProblemParams make(double epsilon, double alpha, double reynolds, double theta);
};

enum class RegionKind { D_eps, Omega1, Omega2, ExtendedAiry };
enum class Membership { outside, inside, omega1, omega2 };

struct RegionSpec {
  RegionKind kind = RegionKind::D_eps;
  double epsilon = 0;
  double theta = 0.3;
  Complex d1;  // Omega: inner cutoff near -1
  Complex d2;  // Omega: cutoff near the node
  double kappa = 0.75;  // ExtendedAiry only
};

RegionSpec make_region(RegionKind kind, const ProblemParams& p);

// (t, gamma) frame: t runs along [-1, node] from -1, gamma along the normal
// e^{i pi/3}; gamma > 0 faces the imaginary axis.
Complex segment_point(double t, double gamma);
std::pair<double, double> segment_coords(Complex lambda);

Complex f_map(Complex lambda);
Complex f_deriv(Complex lambda);
Complex d_epsilon(const ProblemParams& p);
// Node offset eps^{1/2} ln eps^{-theta}.
double node_offset(double epsilon, double theta);

// D_eps / ExtendedAiry give inside|outside; Omega kinds classify the side.
Membership region_contains(const RegionSpec& region, Complex lambda);
bool in_region(const RegionSpec& region, Complex lambda);

double phi_envelope(double t);

struct CurveConstants {
  double c;
  double k0;
};
CurveConstants curve_constants(Complex lambda, double alpha);

const char* to_string(Membership m);

}  // namespace spectraltie
