#include "spectraltie/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spectraltie/parallel.hpp"

namespace spectraltie {

DetFn plain_det(std::function<Complex(Complex)> f) {
  return [f = std::move(f)](Complex z) { return DetValue{ScaledComplex(f(z)).normalized(), 0.0}; };
}

void SearchRectangle::validate() const {
  if (!(upper_right.real() > lower_left.real()) || !(upper_right.imag() > lower_left.imag()))
    throw DomainError("rectangle: corners not ordered");
  if (nx < 2 || ny < 2) throw DomainError("rectangle: nx and ny must be >= 2");
}

Complex SearchRectangle::node(int i, int j) const {
  return {lower_left.real() + width() * i / (nx - 1), lower_left.imag() + height() * j / (ny - 1)};
}

bool SearchRectangle::contains(Complex z) const {
  return z.real() >= lower_left.real() && z.real() <= upper_right.real() && z.imag() >= lower_left.imag() &&
         z.imag() <= upper_right.imag();
}

bool im_re_less(Complex a, Complex b) {
  if (a.imag() != b.imag()) return a.imag() < b.imag();
  return a.real() < b.real();
}

std::vector<Complex> grid_scan_minima(const DetFn& fn, const SearchRectangle& rect) {
  rect.validate();
  const int nx = rect.nx, ny = rect.ny;
  const auto rows = parallel_map(std::size_t(ny), [&](std::size_t j) {
    std::vector<double> row(nx);
    for (int i = 0; i < nx; ++i) {
      const double v = fn(rect.node(i, int(j))).normalized();
      row[i] = std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    }
    return row;
  });
  std::vector<double> all;
  all.reserve(std::size_t(nx) * ny);
  for (const auto& r : rows) all.insert(all.end(), r.begin(), r.end());
  auto mid = all.begin() + all.size() / 2;
  std::nth_element(all.begin(), mid, all.end());
  const double median = *mid;

  std::vector<Complex> seeds;
  for (int j = 1; j + 1 < ny; ++j)
    for (int i = 1; i + 1 < nx; ++i) {
      const double v = rows[j][i];
      if (!(v * 10.0 <= median)) continue;
      bool minimum = true;
      for (int dj = -1; dj <= 1 && minimum; ++dj)
        for (int di = -1; di <= 1; ++di)
          if ((di || dj) && !(v < rows[j + dj][i + di])) {
            minimum = false;
            break;
          }
      if (minimum) seeds.push_back(rect.node(i, j));
    }
  return seeds;
}

namespace {

struct BoundaryRoot {};

// A boundary sample: value and local phase rate |f'/f|.
struct Sample {
  Complex z;
  ScaledComplex f;
  double rate;
};

Sample sample(const DetFn& fn, Complex z) {
  const ScaledComplex f = fn(z).value;
  if (f.is_zero()) throw BoundaryRoot{};
  const ScaledComplex d = numeric_derivative(fn, z);
  return {z, f, std::abs(ratio(d, f))};
}

// Phase accrued from a to b. Bisects until the phase step is below pi/2 and
// the step length times the larger log-derivative is below pi/4; the second
// test is what rules out steps that wrap by whole turns.
double edge_phase(const DetFn& fn, const Sample& a, const Sample& b, double min_len) {
  const double d = std::arg(b.f.mantissa / a.f.mantissa);
  const double len = std::abs(b.z - a.z);
  if (std::abs(d) < kPi / 2 && len * std::max(a.rate, b.rate) < kPi / 4) return d;
  if (len < min_len) throw BoundaryRoot{};
  const Sample m = sample(fn, 0.5 * (a.z + b.z));
  return edge_phase(fn, a, m, min_len) + edge_phase(fn, m, b, min_len);
}

int winding(const DetFn& fn, const SearchRectangle& r, int samples) {
  const Complex c[4] = {r.lower_left, {r.upper_right.real(), r.lower_left.imag()}, r.upper_right,
                        {r.lower_left.real(), r.upper_right.imag()}};
  const double min_len = 1e-12 * (r.width() + r.height());
  // Sample all four edges up front so the evaluations can run in parallel.
  const int n = 4 * samples;
  auto point = [&](int k) {
    const int e = k / samples, s = k % samples;
    return c[e] + (c[(e + 1) % 4] - c[e]) * (double(s) / samples);
  };
  const auto vals = parallel_map(std::size_t(n), [&](std::size_t k) { return sample(fn, point(int(k))); });
  const auto phases = parallel_map(std::size_t(n), [&](std::size_t k) {
    return edge_phase(fn, vals[k], vals[(k + 1) % n], min_len);
  });
  double total = 0.0;
  for (double p : phases) total += p;
  return int(std::lround(total / (2 * kPi)));
}

}  // namespace

int argument_count(const DetFn& fn, const SearchRectangle& rect, int samples_per_edge) {
  rect.validate();
  if (samples_per_edge < 2) throw DomainError("argument_count: samples_per_edge must be >= 2");
  SearchRectangle r = rect;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    try {
      return winding(fn, r, samples_per_edge);
    } catch (const BoundaryRoot&) {
      const double pad = 1e-3 * (attempt + 1) * std::min(rect.width(), rect.height());
      r.lower_left = rect.lower_left - Complex(pad, 0.7 * pad);
      r.upper_right = rect.upper_right + Complex(0.6 * pad, pad);
    }
  }
  throw RootOnBoundaryError("argument_count: root on the rectangle boundary after 3 retries");
}

ScaledComplex numeric_derivative(const DetFn& fn, Complex z, DerivativeRule rule, double h) {
  if (h <= 0.0) h = 1e-6 * std::max(1.0, std::abs(z));
  const Complex dz = rule == DerivativeRule::central ? Complex(h, 0) : Complex(0, h);
  return (fn(z + dz).value - fn(z - dz).value) * (1.0 / (2.0 * dz));
}

NewtonResult newton_complex(const DetFn& fn, Complex seed, double tol, int max_iter, double trust_radius,
                            DerivativeRule rule) {
  if (!(tol > 0.0)) throw DomainError("newton: tol must be positive");
  Complex z = seed;
  for (int it = 1; it <= max_iter; ++it) {
    const DetValue f = fn(z);
    if (f.value.is_zero()) return {z, 0.0, it};
    const ScaledComplex d = numeric_derivative(fn, z, rule);
    if (d.is_zero()) throw ConvergenceError("newton: zero derivative", z);
    const Complex step = ratio(f.value, d);
    if (!is_finite(step)) throw ConvergenceError("newton: non-finite step", z);
    z -= step;
    if (std::abs(z - seed) > trust_radius) throw ConvergenceError("newton: left the trust region", z);
    const double floor = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z);
    if (std::abs(step) <= std::max(tol, floor)) return {z, fn(z).normalized(), it};
  }
  throw ConvergenceError("newton: no convergence within max_iter", z);
}

std::vector<NewtonResult> locate_roots(const DetFn& fn, const std::vector<Complex>& seeds, const LocateOptions& opt) {
  std::vector<Complex> uniq;
  for (Complex s : seeds) {
    bool dup = false;
    for (Complex u : uniq)
      if (std::abs(u - s) <= 10 * opt.tol) dup = true;
    if (!dup) uniq.push_back(s);
  }
  const auto refined = parallel_map(uniq.size(), [&](std::size_t i) -> std::optional<NewtonResult> {
    try {
      return newton_complex(fn, uniq[i], opt.tol, opt.max_iter, opt.trust_radius);
    } catch (const ConvergenceError&) {
      return std::nullopt;
    }
  });
  std::vector<NewtonResult> ok;
  for (const auto& r : refined) {
    if (!r || !(r->residual <= opt.max_residual)) continue;
    if (opt.keep_inside && !opt.keep_inside->contains(r->root)) continue;
    ok.push_back(*r);
  }
  std::stable_sort(ok.begin(), ok.end(), [](const auto& a, const auto& b) { return im_re_less(a.root, b.root); });
  std::vector<NewtonResult> out;
  for (const auto& r : ok) {
    bool dup = false;
    for (auto& o : out)
      if (std::abs(o.root - r.root) <= opt.merge_distance) {
        dup = true;
        if (r.residual < o.residual) o = r;
      }
    if (!dup) out.push_back(r);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return im_re_less(a.root, b.root); });
  return out;
}

namespace {

void merge_into(std::vector<NewtonResult>& out, const NewtonResult& r, double dist) {
  for (auto& o : out)
    if (std::abs(o.root - r.root) <= dist) {
      if (r.residual < o.residual) o = r;
      return;
    }
  out.push_back(r);
}

int count_inside(const std::vector<NewtonResult>& roots, const SearchRectangle& r) {
  int n = 0;
  for (const auto& x : roots) n += r.contains(x.root);
  return n;
}

void complete_box(const DetFn& fn, const SearchRectangle& r, std::vector<NewtonResult>& roots,
                  const LocateOptions& opt, double min_size, int spe, int depth) {
  const int want = argument_count(fn, r, spe);
  if (want <= count_inside(roots, r)) return;
  const Complex centre = 0.5 * (r.lower_left + r.upper_right);
  if (std::max(r.width(), r.height()) <= min_size || depth > 40) {
    // Seed from a few interior points; the box is small enough that Newton
    // lands on the missing root from at least one of them.
    for (Complex off : {Complex(0, 0), Complex(0.25, 0.25), Complex(-0.25, -0.25), Complex(0.25, -0.25),
                        Complex(-0.25, 0.25)}) {
      const Complex seed = centre + Complex(off.real() * r.width(), off.imag() * r.height());
      try {
        const auto res = newton_complex(fn, seed, opt.tol, opt.max_iter, 2 * std::abs(r.upper_right - r.lower_left));
        if (res.residual <= opt.max_residual && r.contains(res.root)) merge_into(roots, res, opt.merge_distance);
      } catch (const ConvergenceError&) {
      }
      if (count_inside(roots, r) >= want) return;
    }
    return;
  }
  const Complex m = centre + Complex(0.0123 * r.width(), 0.0171 * r.height());
  const SearchRectangle kids[4] = {
      {r.lower_left, m, 2, 2},
      {{m.real(), r.lower_left.imag()}, {r.upper_right.real(), m.imag()}, 2, 2},
      {{r.lower_left.real(), m.imag()}, {m.real(), r.upper_right.imag()}, 2, 2},
      {m, r.upper_right, 2, 2}};
  for (const auto& k : kids) complete_box(fn, k, roots, opt, min_size, spe, depth + 1);
}

}  // namespace

std::vector<NewtonResult> complete_roots(const DetFn& fn, const SearchRectangle& rect, std::vector<NewtonResult> known,
                                         const LocateOptions& opt, double min_size, int samples_per_edge) {
  rect.validate();
  complete_box(fn, rect, known, opt, min_size, samples_per_edge, 0);
  std::stable_sort(known.begin(), known.end(), [](const auto& a, const auto& b) { return im_re_less(a.root, b.root); });
  return known;
}

}  // namespace spectraltie
