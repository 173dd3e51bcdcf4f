#include "spectraltie/os_spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "spectraltie/airy.hpp"
#include "spectraltie/model_spectrum.hpp"


namespace spectraltie {

namespace {

// Gauss-Kronrod 7/15 on [-1, 1]: nodes x[0..7] (x[7] = 0), odd ones shared
// with the Gauss rule.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

// Integrand g(sigma z) v(z) for both kinds, scaled by exp(-ref).
struct Integrand {
  Complex shift;   // alpha (1 - lambda)
  Complex slope;   // alpha omega_j^{-1} sigma
  bool want_sh = true, want_ch = true;

  // Returns log-modulus of v(z) and fills g-weighted values in units of e^{ref}.
  double eval(Complex z, double ref, Complex& sh, Complex& ch) const {
    const auto a = airy::airy_v_scaled(z);
    const Complex arg = shift - slope * z;
    const double lv = a.exponent.real() + std::log(std::abs(a.value) + 1e-300);
    const Complex v = a.value * std::polar(std::exp(a.exponent.real() - ref), a.exponent.imag());
    if (want_sh) sh = std::sinh(arg) * v;
    if (want_ch) ch = std::cosh(arg) * v;
    return lv + std::max(0.0, std::abs(arg.real()));
  }
};

struct Accum {
  Complex sh, ch;
};

constexpr double kQuadTol = 1e-12;
constexpr double kNegligibleLog = 45;
constexpr double kNoiseFloor = 1e-13;
constexpr int kMaxDepth = 14;

// Sum of panel contributions on the common scale e^{ref}.
class LegIntegrator {
 public:
  LegIntegrator(const Integrand& f, double ref) : f_(f), ref_(ref) {}

  // Kronrod value and |Kronrod - Gauss| over both kinds.
  Accum rule(Complex a, Complex b, double& err) const {
    const Complex mid = 0.5 * (a + b), half = 0.5 * (b - a);
    Accum k{}, g{};
    for (int i = 0; i < 15; ++i) {
      const int m = i < 8 ? i : 14 - i;
      const double x = i < 8 ? -kXgk[m] : kXgk[m];
      Complex sh, ch;
      f_.eval(mid + half * x, ref_, sh, ch);
      k.sh += kWgk[m] * sh;
      k.ch += kWgk[m] * ch;
      if (m % 2 == 1) {
        g.sh += kWg[m / 2] * sh;
        g.ch += kWg[m / 2] * ch;
      } else if (m == 7) {
        g.sh += kWg[3] * sh;
        g.ch += kWg[3] * ch;
      }
    }
    err = std::abs(half) * std::max(std::abs(k.sh - g.sh), std::abs(k.ch - g.ch));
    return {k.sh * half, k.ch * half};
  }

  // Adaptive bisection until the Gauss-Kronrod difference meets the tolerance.
  Accum adaptive(Complex a, Complex b, double tol_per_length, int depth) const {
    double err = 0;
    const Accum r = rule(a, b, err);
    if (err <= tol_per_length * std::abs(b - a) || depth >= kMaxDepth) return r;
    const Complex m = 0.5 * (a + b);
    const Accum l = adaptive(a, m, tol_per_length, depth + 1), q = adaptive(m, b, tol_per_length, depth + 1);
    return {l.sh + q.sh, l.ch + q.ch};
  }

 private:
  const Integrand& f_;
  double ref_;
};

// Panel breakpoints so that |d log v/dz| * length <= 1.5 on each panel.
std::vector<Complex> panels(Complex a, Complex b) {
  std::vector<Complex> pts{a};
  const double len = std::abs(b - a);
  if (len == 0) return pts;
  double s = 0;
  while (s < 1) {
    const Complex z = a + s * (b - a);
    const double rate = std::sqrt(std::max(1.0, std::abs(z))) + 1.0;
    double ds = 1.5 / (rate * len);
    // Look ahead so that the rate at the panel end is respected too.
    const Complex z2 = a + std::min(1.0, s + ds) * (b - a);
    ds = std::min(ds, 1.5 / ((std::sqrt(std::max(1.0, std::abs(z2))) + 1.0) * len));
    s = std::min(1.0, s + ds);
    pts.push_back(a + s * (b - a));
  }
  return pts;
}

bool in_sector(Complex z) { return z != Complex(0) && std::abs(std::arg(z)) > kPi - kExcludedSector; }

// Does the open segment (a, b) enter the sector |arg z| > pi - delta?
bool segment_enters_sector(Complex a, Complex b) {
  if (in_sector(a) || in_sector(b)) return true;
  if (std::abs(std::arg(b / a)) >= kPi - 1e-15 && a != Complex(0)) return true;  // through the origin
  // Crossing a boundary ray r e^{+-i(pi - delta)}, or passing through the origin.
  for (double sgn : {1.0, -1.0}) {
    const Complex d = std::polar(1.0, sgn * (kPi - kExcludedSector));
    const Complex e = b - a;
    const double den = e.real() * d.imag() - e.imag() * d.real();
    if (den == 0) continue;
    // a + s e = r d
    const double s = (d.real() * a.imag() - d.imag() * a.real()) / den;
    const double r = (e.real() * a.imag() - e.imag() * a.real()) / den;
    if (s > 0 && s < 1 && r > 0) return true;
  }
  return false;
}

IntegralPair integrate_path(const std::vector<Complex>& path, const Integrand& f) {
  std::vector<std::pair<Complex, Complex>> pieces;
  double total_len = 0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const auto pts = panels(path[k], path[k + 1]);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) pieces.emplace_back(pts[i], pts[i + 1]);
    total_len += std::abs(path[k + 1] - path[k]);
  }
  if (pieces.empty()) return {};
  // Reference scale from the panel endpoints. Within a panel log|f| varies by
  // at most ~1.5, so panels far below the reference are negligible.
  std::vector<double> lg(pieces.size() + 1);
  Complex sh, ch;
  lg[0] = f.eval(pieces.front().first, 0.0, sh, ch);
  for (std::size_t i = 0; i < pieces.size(); ++i) lg[i + 1] = f.eval(pieces[i].second, 0.0, sh, ch);
  const double ref = *std::max_element(lg.begin(), lg.end());
  const LegIntegrator leg(f, ref);
  Accum total{};
  // Per unit length, in units of e^{ref}; floored at the Airy rounding level
  // so that long paths do not bisect on noise.
  const double tol = std::max(kQuadTol / std::max(total_len, 1e-300), kNoiseFloor);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (std::max(lg[i], lg[i + 1]) < ref - kNegligibleLog) continue;
    const Accum s = leg.adaptive(pieces[i].first, pieces[i].second, tol, 0);
    total.sh += s.sh;
    total.ch += s.ch;
  }
  return {ScaledComplex(total.sh, ref).normalized(), ScaledComplex(total.ch, ref).normalized()};
}

Integrand make_integrand(int j, Complex lambda, const ProblemParams& p) {
  if (j < 0 || j > 2) throw DomainError("os_integral: j must be 0, 1 or 2");
  Integrand f;
  f.shift = p.alpha * (1.0 - lambda);
  f.slope = p.alpha * p.sigma / p.omega[j];
  return f;
}

}  // namespace

Complex xi_endpoint(int j, int sign, Complex lambda, const ProblemParams& p) {
  if (j < 0 || j > 2 || (sign != 1 && sign != -1)) throw DomainError("xi_endpoint: bad index");
  return p.omega[j] / p.sigma * (double(sign) - lambda);
}

std::vector<Complex> integration_path(Complex from, Complex to) {
  if (!is_finite(from) || !is_finite(to)) throw PathError("integration path: non-finite endpoint");
  if (from == to || !segment_enters_sector(from, to)) return {from, to};
  if (from == Complex(0) || to == Complex(0)) return {from, to};
  // A radial leg meets the sector only when its outer endpoint lies in it;
  // such endpoints (lambda on the left segment) are accepted as they are.
  return {from, Complex(0), to};
}

namespace {

// Vertices from z down to the positive real axis (or the origin) along which
// |v| does not increase: arcs toward arg 0 for |arg z| <= 2 pi/3, the radial
// leg otherwise.
std::vector<Complex> descent(Complex z) {
  std::vector<Complex> pts{z};
  const double r = std::abs(z), phi = std::arg(z);
  if (r == 0) return pts;
  if (std::abs(phi) > 2 * kPi / 3) {
    pts.push_back(0);
    return pts;
  }
  const int steps = int(std::ceil(std::abs(phi) / 0.2));
  for (int k = 1; k <= steps; ++k) pts.push_back(std::polar(r, phi * (1 - double(k) / steps)));
  return pts;
}

}  // namespace

std::vector<Complex> descent_path(Complex from, Complex to) {
  if (!is_finite(from) || !is_finite(to)) throw PathError("integration path: non-finite endpoint");
  auto a = descent(from), b = descent(to);
  std::vector<Complex> path = a;
  for (auto it = b.rbegin(); it != b.rend(); ++it)
    if (*it != path.back()) path.push_back(*it);
  return path;
}

IntegralPair os_integral_pair(int j, Complex from, Complex to, Complex lambda, const ProblemParams& p) {
  const Integrand f = make_integrand(j, lambda, p);
  return integrate_path(integration_path(from, to), f);
}

IntegralPair os_integral_descent(int j, Complex from, Complex to, Complex lambda, const ProblemParams& p) {
  const Integrand f = make_integrand(j, lambda, p);
  return integrate_path(descent_path(from, to), f);
}

ScaledComplex os_integral(const AiryIntegralSpec& s) {
  Integrand f = make_integrand(s.j, s.lambda, s.params);
  f.want_sh = s.kind == IntegrandKind::sh;
  f.want_ch = !f.want_sh;
  const auto r = integrate_path(integration_path(s.endpoint_from, s.endpoint_to), f);
  return f.want_sh ? r.sh : r.ch;
}

ScaledComplex airy_integral(Complex from, Complex to) {
  Integrand f;  // g = ch(0) = 1
  f.want_sh = false;
  return integrate_path(integration_path(from, to), f).ch;
}

Complex ray_base_point(int j, Complex lambda, const ProblemParams& p) {
  const double a = std::abs(xi_endpoint(j, 1, lambda, p)), b = std::abs(xi_endpoint(j, -1, lambda, p));
  const double r = j == 2 ? 2 * std::max(a, b) : 0.5 * std::min(a, b);
  return std::polar(r, 2 * kPi * (j + 1) / 3);
}

DetChoice os_det_choice(Complex lambda, const ProblemParams& p) {
  const bool right = lambda.real() > 0;
  const Complex mirror = right ? -std::conj(lambda) : lambda;
  const Membership m = region_contains(make_region(RegionKind::Omega1, p), mirror);
  if (m == Membership::omega1 || m == Membership::omega2) {
    const int l = m == Membership::omega1 ? 1 : 2;
    if (!right) return {0, l, DetBranch::omega};
    // lambda -> -conj(lambda) exchanges the columns 0 and 1.
    return {1, l == 1 ? 0 : 2, DetBranch::omega};
  }
  if (in_region(make_region(RegionKind::D_eps, p), lambda)) return {0, 2, DetBranch::ray};
  throw RegionError("os_det: lambda lies outside Omega and D_eps");
}

DetValue os_det_pair(Complex lambda, const ProblemParams& p, int j1, int j2, const Complex base[3]) {
  IntegralPair col[2];
  const int js[2] = {j1, j2};
  for (int c = 0; c < 2; ++c) {
    const int j = js[c];
    const Complex from = base[j];
    const auto plus = os_integral_pair(j, from, xi_endpoint(j, 1, lambda, p), lambda, p);
    const auto minus = os_integral_pair(j, from, xi_endpoint(j, -1, lambda, p), lambda, p);
    col[c] = {plus.sh - minus.sh, plus.ch - minus.ch};
  }
  const ScaledComplex a = col[0].sh * col[1].ch, b = col[1].sh * col[0].ch;
  return {a - b, std::max(a.log_abs(), b.log_abs())};
}

DetValue os_det(Complex lambda, const ProblemParams& p) {
  const DetChoice c = os_det_choice(lambda, p);
  Complex base[3] = {0, 0, 0};
  if (c.branch == DetBranch::ray)
    for (int j = 0; j < 3; ++j) base[j] = ray_base_point(j, lambda, p);
  return os_det_pair(lambda, p, c.j1, c.j2, base);
}

DetValue os_det_canonical(Complex lambda, const ProblemParams& p) {
  IntegralPair col[3];
  for (int j = 0; j < 3; ++j)
    col[j] = os_integral_descent(j, xi_endpoint(j, -1, lambda, p), xi_endpoint(j, 1, lambda, p), lambda, p);
  // D(0,2) = -D(0,1), D(1,2) = D(0,1): take the pair with the least cancellation.
  static constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  static constexpr double sign[3] = {1, -1, 1};
  DetValue best{{}, INFINITY};
  for (int k = 0; k < 3; ++k) {
    const auto& c0 = col[pairs[k][0]];
    const auto& c1 = col[pairs[k][1]];
    const ScaledComplex a = c0.sh * c1.ch, b = c1.sh * c0.ch;
    const double ref = std::max(a.log_abs(), b.log_abs());
    if (ref < best.log_ref) best = {(a - b) * Complex(sign[k]), ref};
  }
  return best;
}

DetFn os_det_fn(const ProblemParams& p) {
  return [p](Complex z) { return os_det_canonical(z, p); };
}


std::pair<double, double> curve_window(const ProblemParams& p) {
  return {std::pow(p.epsilon, 0.25), kSegmentLength - 2 * node_offset(p.epsilon, p.theta)};
}

double curve_gamma(double t, Side side, const ProblemParams& p) {
  if (!(t > 0)) throw DomainError("curve_gamma: t must be positive");
  const double c = curve_constants(segment_point(t, 0), p.alpha).c;
  const double g = std::sqrt(p.epsilon / t) * std::log(c * std::pow(t, 0.75) / std::pow(p.epsilon, 0.25));
  return side == Side::plus ? g : -g;
}

double coarse_gamma(double t, const ProblemParams& p) {
  if (!(t > 0)) throw DomainError("coarse_gamma: t must be positive");
  return 0.25 * std::sqrt(p.epsilon / t) * std::log(t * t * t / p.epsilon);
}

std::vector<CurveSample> os_curves(const ProblemParams& p, const std::vector<double>& t_grid,
                                   std::vector<std::string>* notes) {
  const auto [lo, hi] = curve_window(p);
  std::vector<CurveSample> out;
  for (double t : t_grid) {
    if (!(t >= lo && t <= hi)) {
      if (notes) notes->push_back("t = " + std::to_string(t) + " outside the curve window, skipped");
      continue;
    }
    for (Side s : {Side::plus, Side::minus}) {
      const double g = curve_gamma(t, s, p);
      out.push_back({t, g, segment_point(t, g), s});
    }
  }
  return out;
}

SegmentFixedPoint os_segment_fixed_point(const ProblemParams& p, int k, Side side) {
  const double sgn = side == Side::plus ? -1.0 : 1.0;
  SegmentFixedPoint fp;
  double t = 0;
  for (fp.iterations = 1; fp.iterations <= 10; ++fp.iterations) {
    const double rhs = 3 * kPi * std::sqrt(p.epsilon) * (k - 0.125 + sgn * fp.k0);
    if (!(rhs > 0)) throw DomainError("segment index k = " + std::to_string(k) + " gives t <= 0");
    const double t_new = std::pow(rhs, 2.0 / 3.0);
    const bool done = std::abs(t_new - t) <= 1e-10;
    t = t_new;
    fp.t = t;
    fp.gamma = curve_gamma(t, side, p);
    if (done) {
      fp.converged = true;
      return fp;
    }
    fp.k0 = curve_constants(segment_point(t, fp.gamma), p.alpha).k0;
  }
  fp.iterations = 10;
  return fp;
}

EigenList os_segment_eigenvalues(const ProblemParams& p, int k_min, int k_max) {
  const auto [lo, hi] = curve_window(p);
  EigenList out;
  for (Side side : {Side::plus, Side::minus}) {
    for (int k = k_min; k <= k_max; ++k) {
      try {
        const auto fp = os_segment_fixed_point(p, k, side);
        if (!fp.converged) {
          out.errors.push_back({k, std::string("fixed point not converged on the ") + to_string(side) + " side"});
          continue;
        }
        if (fp.t < lo || fp.t > hi) {
          out.errors.push_back({k, std::string("t outside the curve window on the ") + to_string(side) + " side"});
          continue;
        }
        const CurveSample s{fp.t, fp.gamma, segment_point(fp.t, fp.gamma), side};
        out.values.push_back({s.lambda, k, Method::asymptotic, 0.0, s});
      } catch (const DomainError& e) {
        out.errors.push_back({k, e.what()});
      }
    }
  }
  return out;
}

EigenList os_ray_eigenvalues(const ProblemParams& p, int k_min, int k_max) {
  return ray_eigenvalues(p, k_min, k_max);
}

double os_counting(Complex lambda, const ProblemParams& p) { return 0.5 * counting_segment(lambda, p); }

std::vector<Eigenvalue> os_exact_roots(const ProblemParams& p, const std::vector<Complex>& extra_seeds,
                                       const OsRootOptions& opt) {
  const DetFn det = os_det_fn(p);
  std::vector<Complex> seeds = extra_seeds;
  const auto seg = os_segment_eigenvalues(p, 1, 200);
  for (const auto& e : seg.values) {
    seeds.push_back(e.value);
    seeds.push_back(-std::conj(e.value));
  }
  const double depth = -opt.window.lower_left.imag();
  const int k0 = ray_k_min(p);
  int k1 = k0;
  while (k1 < k0 + 100000 && counting_ray(Complex(0, -(depth + 0.1)), p) > k1) ++k1;
  for (const auto& e : os_ray_eigenvalues(p, k0, k1).values) seeds.push_back(e.value);
  // The predictions are void near the node; scan its neighbourhood at 0.02.
  const Complex lo_n(std::max(-0.35, opt.window.lower_left.real()), std::max(-0.95, opt.window.lower_left.imag()));
  const Complex hi_n(std::min(0.35, opt.window.upper_right.real()), std::min(-0.3, opt.window.upper_right.imag()));
  if (lo_n.real() < hi_n.real() && lo_n.imag() < hi_n.imag()) {
    const SearchRectangle node_box{lo_n, hi_n, int((hi_n.real() - lo_n.real()) / 0.02) + 2,
                                   int((hi_n.imag() - lo_n.imag()) / 0.02) + 2};
    for (Complex z : grid_scan_minima(det, node_box)) seeds.push_back(z);
  }

  LocateOptions lo;
  lo.tol = opt.tol;
  lo.trust_radius = 0.1;
  lo.merge_distance = 1e-8;
  lo.max_residual = 1e-3;
  lo.keep_inside = opt.window;
  auto roots = locate_roots(det, seeds, lo);
  // The root set is symmetric under lambda -> -conj(lambda); mirror what was found.
  std::vector<Complex> again;
  for (const auto& r : roots) {
    again.push_back(r.root);
    again.push_back(-std::conj(r.root));
  }
  roots = locate_roots(det, again, lo);
  roots = complete_roots(det, opt.window, std::move(roots), lo);
  std::vector<Eigenvalue> out;
  for (const auto& r : roots) out.push_back({r.root, -1, Method::exact_det, r.residual, std::nullopt});
  return out;
}

}  // namespace spectraltie
