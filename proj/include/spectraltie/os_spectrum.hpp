#pragma once

// Orr-Sommerfeld problem with the linear profile in the nonlocal form
// -i eps w'' = (x - lambda) w, int sh[alpha(1-t)] w = int ch[alpha(1-t)] w = 0.

#include <string>
#include <vector>

#include "spectraltie/rootfind.hpp"
#include "spectraltie/scalar_maps.hpp"
#include "spectraltie/spectrum_types.hpp"

namespace spectraltie {

// lambda = i eps (alpha^2 - lambda_tilde) and back.
Complex lambda_from_tilde(Complex lambda_tilde, const ProblemParams& p);
Complex tilde_from_lambda(Complex lambda, const ProblemParams& p);

// xi_j^+- = omega_j sigma^{-1} (+-1 - lambda); sign is +1 or -1.
Complex xi_endpoint(int j, int sign, Complex lambda, const ProblemParams& p);

enum class IntegrandKind { sh, ch };

struct AiryIntegralSpec {
  int j = 0;
  Complex endpoint_from;  // xi_j^0
  Complex endpoint_to;    // xi_j^+ or xi_j^-
  IntegrandKind kind = IntegrandKind::sh;
  Complex lambda;
  ProblemParams params;
};

// Half-width of the excluded sector about the negative real xi-axis.
inline constexpr double kExcludedSector = 0.1;

// Vertices of the integration path: the straight segment, or two segments
// through the origin when the straight one enters the excluded sector.
// Throws PathError when neither route is admissible.
std::vector<Complex> integration_path(Complex from, Complex to);

// int_{from}^{to} g_j(sigma z) v(z) dz with g_j(z) = sh or ch of
// alpha(1 - lambda - omega_j^{-1} z), by adaptive composite Gauss-Legendre
// quadrature. Absolute tolerance 1e-12 times the largest integrand modulus
// on the path.
ScaledComplex os_integral(const AiryIntegralSpec& spec);

// int_{from}^{to} v(z) dz by the same quadrature (g = 1).
ScaledComplex airy_integral(Complex from, Complex to);

struct IntegralPair {
  ScaledComplex sh;
  ScaledComplex ch;
};
// Both kinds from one pass over the path (shared Airy evaluations).
IntegralPair os_integral_pair(int j, Complex from, Complex to, Complex lambda, const ProblemParams& p);

// Route along which |v| never exceeds its endpoint values or O(1): each end
// descends to the positive real axis along an arc (|arg| <= 2 pi/3) or to the
// origin radially, and the two feet are joined along the real axis.
std::vector<Complex> descent_path(Complex from, Complex to);
IntegralPair os_integral_descent(int j, Complex from, Complex to, Complex lambda, const ProblemParams& p);

// Base points xi_j^0 for lambda near the ray: on arg = 2 pi (j+1)/3 with
// modulus min|xi_j^+-|/2 for j = 0, 1 and 2 max|xi_j^+-| for j = 2.
Complex ray_base_point(int j, Complex lambda, const ProblemParams& p);

enum class DetBranch { omega, ray };

struct DetChoice {
  int j1 = 0;
  int j2 = 1;
  DetBranch branch = DetBranch::omega;
};

// Column pair and base-point convention for lambda: (0, l) with xi^0 = 0 in
// Omega^l (mirrored to (1, l') for Re lambda > 0), (0, 2) with the ray base
// points in D_eps. Throws RegionError elsewhere.
DetChoice os_det_choice(Complex lambda, const ProblemParams& p);

// The 2x2 characteristic determinant for an explicit column pair and base points.
DetValue os_det_pair(Complex lambda, const ProblemParams& p, int j1, int j2, const Complex base[3]);

// Region-selected determinant.
DetValue os_det(Complex lambda, const ProblemParams& p);

// The determinant for the pair (0, 1), defined on the whole plane. Each column
// is integrated from xi^- to xi^+ along the descent path. Pairs differ only by constant
// factors: D(0,2) = -D(0,1), D(1,2) = D(0,1).
DetValue os_det_canonical(Complex lambda, const ProblemParams& p);
DetFn os_det_fn(const ProblemParams& p);

// Curve window [eps^{1/4}, 2/sqrt3 - 2 eps^{1/2} ln eps^{-theta}].
std::pair<double, double> curve_window(const ProblemParams& p);

// +- (eps^{1/2}/t^{1/2}) ln(c t^{3/4}/eps^{1/4}), c taken at lambda(t, 0).
double curve_gamma(double t, Side side, const ProblemParams& p);

// (1/4) eps^{1/2} t^{-1/2} ln(eps^{-1} t^3).
double coarse_gamma(double t, const ProblemParams& p);

// Paired plus/minus samples for each t of the grid inside the window; points
// outside are skipped and reported in notes when given.
std::vector<CurveSample> os_curves(const ProblemParams& p, const std::vector<double>& t_grid,
                                   std::vector<std::string>* notes = nullptr);

struct SegmentFixedPoint {
  double t = 0;
  double gamma = 0;
  double k0 = 0;  // at the last iterate lambda(t, gamma(t))
  int iterations = 0;
  bool converged = false;
};
// Fixed-point iteration on k0 from k0 = 0, at most 10 steps, |dt| <= 1e-10.
// Throws DomainError when the right-hand side is not positive.
SegmentFixedPoint os_segment_fixed_point(const ProblemParams& p, int k, Side side);

// t^{3/2}/eps^{1/2} = 3 pi (k - 1/8 -+ k0(lambda)), upper sign on the plus
// side, k0 at the fixed point lambda(t, gamma(t)). Left segment; each value
// carries its curve sample. Indices whose t leaves the window are reported
// as errors.
EigenList os_segment_eigenvalues(const ProblemParams& p, int k_min, int k_max);

// Ray predictions: the model rho_k, tagged as OS asymptotics.
EigenList os_ray_eigenvalues(const ProblemParams& p, int k_min, int k_max);

// Per-curve count: half of the model segment count.
double os_counting(Complex lambda, const ProblemParams& p);

struct OsRootOptions {
  SearchRectangle window{{-1.05, -3.0}, {1.05, 0.0}, 2, 2};
  double tol = 1e-12;
};

// Exact-determinant roots in the window: Newton from the curve, ray and
// discretization seeds plus a grid scan around the node, then winding-number
// completion.
std::vector<Eigenvalue> os_exact_roots(const ProblemParams& p, const std::vector<Complex>& extra_seeds,
                                       const OsRootOptions& opt = {});

}  // namespace spectraltie
