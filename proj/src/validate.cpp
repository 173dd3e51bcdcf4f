#include "spectraltie/validate.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

#include "spectraltie/model_spectrum.hpp"
#include "spectraltie/os_spectrum.hpp"

namespace spectraltie {

MatchResult match_sets(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol) {
  if (!(tol >= 0)) throw DomainError("match_sets: tol must be >= 0");
  std::vector<std::tuple<double, int, int>> cand;
  for (int i = 0; i < int(a.size()); ++i)
    for (int j = 0; j < int(b.size()); ++j) {
      const double d = std::abs(a[i] - b[j]);
      if (d <= tol) cand.emplace_back(d, i, j);
    }
  std::sort(cand.begin(), cand.end());
  std::vector<bool> ua(a.size()), ub(b.size());
  MatchResult r;
  for (const auto& [d, i, j] : cand) {
    if (ua[i] || ub[j]) continue;
    ua[i] = ub[j] = true;
    r.pairs.emplace_back(i, j);
    r.max_distance = std::max(r.max_distance, d);
  }
  std::sort(r.pairs.begin(), r.pairs.end());
  for (int i = 0; i < int(a.size()); ++i)
    if (!ua[i]) r.unmatched_a.push_back(i);
  for (int j = 0; j < int(b.size()); ++j)
    if (!ub[j]) r.unmatched_b.push_back(j);
  return r;
}

double nearest_distance(const std::vector<Complex>& v, Complex z) {
  double best = INFINITY;
  for (Complex w : v) best = std::min(best, std::abs(w - z));
  return best;
}

const char* to_string(TieComponent c) {
  switch (c) {
    case TieComponent::left: return "left";
    case TieComponent::right: return "right";
    case TieComponent::ray: return "ray";
    case TieComponent::node: return "node";
    case TieComponent::off: return "off";
  }
  return "?";
}

TieComponent classify_tie(Complex z, const ProblemParams& p, double band, double cut) {
  const double delta = node_offset(p.epsilon, p.theta);
  if (std::abs(z - kNode) <= delta) return TieComponent::node;
  const Complex left = z.real() <= 0 ? z : -std::conj(z);
  const auto [t, g] = segment_coords(left);
  if (t > 0 && t <= cut && std::abs(g) <= band) return z.real() <= 0 ? TieComponent::left : TieComponent::right;
  if (std::abs(z.real()) <= band && z.imag() < kNode.imag()) return TieComponent::ray;
  return TieComponent::off;
}

namespace {

// Ray count between the bottom of the node disc and -i depth.
ComponentCount ray_count(const std::vector<Complex>& roots, const ProblemParams& p, double depth, double band,
                         double cut) {
  const double top = -kNode.imag() + node_offset(p.epsilon, p.theta);
  ComponentCount c{"ray", 0, 0};
  if (depth <= top) return c;
  c.predicted = counting_ray(Complex(0, -depth), p) - counting_ray(Complex(0, -top), p);
  for (Complex z : roots)
    c.actual += z.imag() >= -depth && classify_tie(z, p, band, cut) == TieComponent::ray;
  return c;
}

ComponentCount node_count(const std::vector<Complex>& roots, const ProblemParams& p) {
  ComponentCount c{"node", counting_node_shrinking(p), 0};
  for (Complex z : roots) c.actual += classify_tie(z, p, 0, 0) == TieComponent::node;
  return c;
}

}  // namespace

std::vector<ComponentCount> model_count_report(const std::vector<Complex>& roots, const ProblemParams& p,
                                               double depth) {
  const double cut = segment_window_end(p), band = 0.05;
  const double pred = counting_segment(segment_point(cut, 0), p);
  ComponentCount left{"left", pred, 0}, right{"right", pred, 0};
  for (Complex z : roots) {
    const auto c = classify_tie(z, p, band, cut);
    left.actual += c == TieComponent::left;
    right.actual += c == TieComponent::right;
  }
  return {left, right, ray_count(roots, p, depth, band, cut), node_count(roots, p)};
}

std::vector<ComponentCount> os_count_report(const std::vector<Complex>& roots, const ProblemParams& p, double depth) {
  const auto [lo, hi] = curve_window(p);
  // Strands sit at |gamma| ~ eps^{1/2} ln eps^{-1}; the band is twice the widest one.
  const double band = 2 * std::abs(curve_gamma(lo, Side::plus, p));
  const double pred = os_counting(segment_point(hi, 0), p);
  ComponentCount c[4] = {{"left+", pred, 0}, {"left-", pred, 0}, {"right+", pred, 0}, {"right-", pred, 0}};
  for (Complex z : roots) {
    const auto k = classify_tie(z, p, band, hi);
    if (k != TieComponent::left && k != TieComponent::right) continue;
    const double g = segment_coords(z.real() <= 0 ? z : -std::conj(z)).second;
    c[(k == TieComponent::right ? 2 : 0) + (g < 0 ? 1 : 0)].actual++;
  }
  return {c[0], c[1], c[2], c[3], ray_count(roots, p, depth, band, hi), node_count(roots, p)};
}

namespace {

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

}  // namespace

RegimeCheck check_model_ray(const ProblemParams& p, const std::vector<Complex>& det, int count) {
  RegimeCheck r{"model ray", true, 0, 0, {}};
  const int k0 = ray_k_min(p);
  for (const auto& e : ray_eigenvalues(p, k0 + 1, k0 + count).values) {
    r.worst = std::max(r.worst, nearest_distance(det, e.value));
    ++r.checked;
  }
  r.pass = r.checked == count && r.worst <= 5 * p.epsilon;
  r.detail = fmt("k0+1..k0+%g: worst distance %.3g (tolerance %.3g)", count, r.worst, 5 * p.epsilon);
  return r;
}

RegimeCheck check_model_segment(const ProblemParams& p, const std::vector<Complex>& det) {
  RegimeCheck r{"model segment", true, 0, 0, {}};
  const double end = segment_window_end(p);
  for (const auto& e : segment_eigenvalues(p)) {
    const double t = segment_coords(e.value.real() < 0 ? e.value : -std::conj(e.value)).first;
    if (t < 0.25 * end || t > 0.75 * end) continue;
    r.worst = std::max(r.worst, nearest_distance(det, e.value));
    ++r.checked;
  }
  r.pass = r.checked > 0 && r.worst <= 1e-6;
  r.detail = fmt("%g predictions on the middle half: worst distance %.3g (tolerance 1e-6)", r.checked, r.worst);
  return r;
}

RegimeCheck check_oracle(const std::vector<Complex>& oracle, const std::vector<Complex>& det, double tol,
                         Complex lower_left, Complex upper_right) {
  auto inside = [&](Complex z, double margin) {
    return z.real() >= lower_left.real() - margin && z.real() <= upper_right.real() + margin &&
           z.imag() >= lower_left.imag() - margin && z.imag() <= upper_right.imag() + margin;
  };
  auto near_edge = [&](Complex z) { return inside(z, tol) && !inside(z, -tol); };
  // Candidates slightly outside the window can pair with points just inside.
  std::vector<Complex> a, b;
  for (Complex z : oracle)
    if (inside(z, tol)) a.push_back(z);
  for (Complex z : det)
    if (inside(z, tol)) b.push_back(z);
  const auto m = match_sets(a, b, tol);
  int missing = 0;
  for (int i : m.unmatched_a) missing += !near_edge(a[i]) && inside(a[i], 0);
  for (int j : m.unmatched_b) missing += !near_edge(b[j]) && inside(b[j], 0);
  RegimeCheck r{"oracle", missing == 0, m.max_distance, int(m.pairs.size()), {}};
  r.detail = fmt("%g matched pairs, worst distance %.3g, %g unmatched", double(m.pairs.size()), m.max_distance,
                 missing) + fmt(" (tolerance %.3g)", tol);
  return r;
}

RegimeCheck check_os_splitting(const ProblemParams& p, const std::vector<Complex>& det, double band) {
  RegimeCheck r{"os splitting", true, 0, 0, {}};
  const auto [lo, hi] = curve_window(p);
  const double a = lo + 0.25 * (hi - lo), b = lo + 0.75 * (hi - lo);
  const double strip = 2 * std::abs(curve_gamma(lo, Side::plus, p));
  int plus = 0, minus = 0, bad_band = 0, too_close = 0;
  for (Complex z : det) {
    const Complex w = z.real() <= 0 ? z : -std::conj(z);
    const auto [t, g] = segment_coords(w);
    if (t < a || t > b || std::abs(g) > strip) continue;
    const double pred = std::abs(curve_gamma(t, Side::plus, p));
    const double q = std::abs(g) / pred;
    r.worst = std::max(r.worst, std::max(q, 1 / q));
    bad_band += q > band || q < 1 / band;
    too_close += std::abs(g) < 0.3 * pred;
    (g > 0 ? plus : minus)++;
    ++r.checked;
  }
  // Curve indices against the roots on the same side.
  const auto seg = os_segment_eigenvalues(p, 1, 1000);
  double worst_dt = 0;
  int unmatched = 0;
  for (const auto& e : seg.values) {
    const auto& c = *e.curve;
    double best = INFINITY;
    for (Complex z : det) {
      const Complex w = z.real() <= 0 ? z : -std::conj(z);
      const auto [t, g] = segment_coords(w);
      if (g * c.gamma > 0 && std::abs(g) <= strip) best = std::min(best, std::abs(t - c.t));
    }
    worst_dt = std::max(worst_dt, best);
    unmatched += !(best <= 3 * std::sqrt(p.epsilon));
  }
  r.pass = plus > 0 && minus > 0 && bad_band == 0 && too_close == 0 && unmatched == 0 && !seg.values.empty();
  r.detail = fmt("%g roots on the + side, %g on the - side", plus, minus) +
             fmt("; |gamma|/|gamma_pred| worst factor %.3g (band %.3g), %g too close", r.worst, band, too_close) +
             fmt("; curve indices: worst |dt| %.3g (tolerance %.3g), %g unmatched", worst_dt,
                 3 * std::sqrt(p.epsilon), unmatched);
  return r;
}

RegimeCheck check_os_ray(const ProblemParams& p, const std::vector<Complex>& det, int count) {
  RegimeCheck r{"os ray", true, 0, 0, {}};
  const int k0 = ray_k_min_in_D(p);
  const auto pred = os_ray_eigenvalues(p, k0, k0 + count - 1).values;
  std::vector<Complex> ray;
  const auto D = make_region(RegionKind::D_eps, p);
  const double bottom = pred.empty() ? 0 : pred.back().value.imag() - 5 * p.epsilon;
  for (Complex z : det)
    if (in_region(D, z) && z.imag() >= bottom) ray.push_back(z);
  std::vector<Complex> pv;
  for (const auto& e : pred) pv.push_back(e.value);
  const auto m = match_sets(pv, ray, 5 * p.epsilon);
  for (const auto& [i, j] : m.pairs) r.worst = std::max(r.worst, std::abs(pv[i] - ray[j]));
  r.checked = int(m.pairs.size());
  r.pass = int(pred.size()) == count && m.unmatched_a.empty() && m.unmatched_b.size() <= 2;
  r.detail = fmt("k = %g..%g: ", k0, k0 + count - 1) +
             fmt("%g matched, worst distance %.3g (tolerance %.3g)", r.checked, r.worst, 5 * p.epsilon) +
             fmt(", %g predictions unmatched, %g roots unmatched (at most 2)", double(m.unmatched_a.size()),
                 double(m.unmatched_b.size()));
  return r;
}

}  // namespace spectraltie
