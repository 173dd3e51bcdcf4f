#include "spectraltie/model_spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "spectraltie/airy.hpp"

namespace spectraltie {

const char* to_string(Method m) {
  switch (m) {
    case Method::exact_det: return "exact_det";
    case Method::asymptotic: return "asymptotic";
    case Method::oracle: return "oracle";
  }
  return "?";
}

const char* to_string(Side s) { return s == Side::plus ? "plus" : "minus"; }

namespace {

const Complex kWbar = std::polar(1.0, -2 * kPi / 3);

ScaledComplex v_scaled(Complex xi) { return airy::airy_v_scaled(xi).scaled_value(); }

double ray_level(double rho) { return f_map(Complex(0, -rho)).real(); }
double ray_slope(double rho) { return (-kI * f_deriv(Complex(0, -rho))).real(); }

DetValue model_det_direct(Complex lambda, const ProblemParams& p) {
  const Complex s = std::polar(1.0 / p.sigma, kPi / 6);
  const Complex xi1 = s * (-1.0 - lambda), xi2 = s * (1.0 - lambda);
  const ScaledComplex t1 = v_scaled(xi1) * v_scaled(kWbar * xi2);
  const ScaledComplex t2 = v_scaled(kWbar * xi1) * v_scaled(xi2);
  return {t1 - t2, std::max(t1.log_abs(), t2.log_abs())};
}

}  // namespace

// Left of the imaginary axis the first term carries v near its real zeros and
// loses relative accuracy; there the exact identity D(lambda) = w conj(D(-conj
// lambda)), w = e^{2 pi i/3}, moves the evaluation to the mirror point.
DetValue model_det(Complex lambda, const ProblemParams& p) {
  if (lambda.real() >= 0.0) return model_det_direct(lambda, p);
  DetValue m = model_det_direct(-std::conj(lambda), p);
  m.value = ScaledComplex(std::conj(m.value.mantissa), m.value.log_scale) * std::conj(kWbar);
  return m;
}

DetFn model_det_fn(const ProblemParams& p) {
  return [p](Complex z) { return model_det(z, p); };
}

int ray_k_min(const ProblemParams& p) {
  return int(std::ceil(f_map(kNode).real() / (kPi * std::sqrt(p.epsilon)) - 1e-12));
}

int ray_k_min_in_D(const ProblemParams& p) {
  return int(std::ceil(f_map(d_epsilon(p)).real() / (kPi * std::sqrt(p.epsilon)) - 1e-12));
}

EigenList ray_eigenvalues(const ProblemParams& p, int k_min, int k_max) {
  EigenList out;
  const double lo0 = 1.0 / std::sqrt(3.0);
  const double base = ray_level(lo0);
  for (int k = k_min; k <= k_max; ++k) {
    const double target = kPi * k * std::sqrt(p.epsilon);
    if (target < base) {
      out.errors.push_back({k, "k below admissibility: pi k sqrt(eps) < f(-i/sqrt3)"});
      continue;
    }
    double lo = lo0, hi = std::max(1.0, 0.5 * target * target);
    while (ray_level(hi) < target) hi *= 2;
    while (hi - lo > 1e-14 * hi) {
      const double mid = 0.5 * (lo + hi);
      (ray_level(mid) < target ? lo : hi) = mid;
    }
    double rho = 0.5 * (lo + hi);
    for (int i = 0; i < 2; ++i) rho -= (ray_level(rho) - target) / ray_slope(rho);
    out.values.push_back({Complex(0, -rho), k, Method::asymptotic, 0.0, std::nullopt});
  }
  return out;
}

double segment_window_end(const ProblemParams& p) {
  return kSegmentLength - node_offset(p.epsilon, p.theta);
}

std::vector<Eigenvalue> segment_eigenvalues(const ProblemParams& p) {
  const double end = segment_window_end(p);
  if (end <= 0) return {};
  const double xmax = end / p.sigma;
  const int n = int(std::ceil((2.0 / 3.0) * std::pow(xmax, 1.5) / kPi)) + 2;
  const auto zeros = airy::airy_real_zeros(n);
  std::vector<Eigenvalue> left, right;
  for (int k = 0; k < n; ++k) {
    const double t = p.sigma * zeros[k];
    if (t >= end) break;
    const Complex lam = segment_point(t, 0.0);
    left.push_back({lam, k + 1, Method::asymptotic, 0.0, std::nullopt});
    right.push_back({-std::conj(lam), k + 1, Method::asymptotic, 0.0, std::nullopt});
  }
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

double counting_segment(Complex lambda, const ProblemParams& p) {
  auto on_left = [](Complex z) {
    const auto [t, g] = segment_coords(z);
    return std::abs(g) <= 1e-9 && t >= -1e-9 && t <= kSegmentLength + 1e-9;
  };
  double r;
  if (on_left(lambda))
    r = std::abs(-1.0 - lambda);
  else if (on_left(-std::conj(lambda)))
    r = std::abs(1.0 - lambda);
  else
    throw DomainError("counting_segment: lambda not on a segment of the tie");
  return (1.0 / (std::sqrt(p.epsilon) * kPi)) * (2.0 / 3.0) * std::pow(r, 1.5);
}

double counting_ray(Complex lambda, const ProblemParams& p) {
  if (std::abs(lambda.real()) > 1e-9 || -lambda.imag() < 1.0 / std::sqrt(3.0) - 1e-9)
    throw DomainError("counting_ray: lambda not on the ray below the node");
  return f_map(Complex(0, lambda.imag())).real() / (std::sqrt(p.epsilon) * kPi);
}

double counting_node(double delta, const ProblemParams& p) {
  if (!(delta > 0.0) || delta >= kSegmentLength) throw DomainError("counting_node: need 0 < delta < 2/sqrt3");
  const double ray = f_map(kNode - Complex(0, delta)).real();
  const double seg = (4.0 / 3.0) * std::pow(kSegmentLength - delta, 1.5);
  const double whole = (4.0 / 3.0) * std::pow(kSegmentLength, 1.5);
  // f(node) equals the two full segment terms; subtract it explicitly so the
  // small difference keeps its digits.
  return ((ray - whole) + (whole - seg)) / (std::sqrt(p.epsilon) * kPi);
}

double counting_node_shrinking(const ProblemParams& p) {
  return kNodeConstant * p.theta * std::log(1.0 / p.epsilon);
}

Eigenvalue refine_root(Complex seed, const DetFn& det, double tol, double trust_radius) {
  const auto r = newton_complex(det, seed, tol, 60, trust_radius);
  return {r.root, -1, Method::exact_det, r.residual, std::nullopt};
}

std::vector<Eigenvalue> model_exact_roots(const ProblemParams& p, const ModelRootOptions& opt) {
  const DetFn det = model_det_fn(p);
  std::vector<Complex> seeds;
  const double depth = -opt.window.lower_left.imag();
  const int k0 = ray_k_min(p);
  const int k1 = int(std::ceil(ray_level(depth + 0.5) / (kPi * std::sqrt(p.epsilon))));
  for (const auto& e : ray_eigenvalues(p, k0, k1).values) seeds.push_back(e.value);
  for (const auto& e : segment_eigenvalues(p)) seeds.push_back(e.value);
  for (Complex s : grid_scan_minima(det, opt.window)) seeds.push_back(s);

  LocateOptions lo;
  lo.tol = opt.tol;
  lo.trust_radius = 0.1;
  lo.merge_distance = 1e-8;
  lo.keep_inside = opt.window;
  auto roots = locate_roots(det, seeds, lo);
  roots = complete_roots(det, opt.window, std::move(roots), lo);
  std::vector<Eigenvalue> out;
  for (const auto& r : roots)
    out.push_back({r.root, -1, Method::exact_det, r.residual, std::nullopt});
  return out;
}

}  // namespace spectraltie
