#pragma once

// Test-only reference computations, independent of the library code paths.

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

struct QComplex {
  __float128 re = 0, im = 0;
};
inline QComplex operator+(QComplex a, QComplex b) { return {a.re + b.re, a.im + b.im}; }
inline QComplex operator-(QComplex a, QComplex b) { return {a.re - b.re, a.im - b.im}; }
inline QComplex operator*(QComplex a, QComplex b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline QComplex operator*(QComplex a, __float128 s) { return {a.re * s, a.im * s}; }
inline __float128 qabs(QComplex a) { return sqrtq(a.re * a.re + a.im * a.im); }

// Maclaurin series of Ai and Ai' summed in binary128. Accurate to well below
// 1e-15 relative for |xi| <= 10 in every direction.
inline std::pair<Complex, Complex> airy_series(Complex xi) {
  const __float128 c1 = strtoflt128("0.355028053887817239260063186004183558", nullptr);
  const __float128 c2 = strtoflt128("0.258819403792806798405183560189203964", nullptr);
  const QComplex z{xi.real(), xi.imag()};
  const QComplex z3 = z * z * z;
  QComplex f{1, 0}, g = z, fp{0, 0}, gp{1, 0};
  QComplex tf{1, 0}, tg = z, tfp{0, 0}, tgp{1, 0};
  for (int k = 1; k < 600; ++k) {
    const __float128 kk = k;
    tf = tf * z3 * (1 / ((3 * kk - 1) * (3 * kk)));
    tg = tg * z3 * (1 / ((3 * kk) * (3 * kk + 1)));
    tfp = (k == 1) ? z * z * (__float128)0.5 : tfp * z3 * (1 / ((kk - 1) * (3 * kk - 1) * 3));
    tgp = tgp * z3 * (1 / ((3 * kk - 2) * (3 * kk)));
    f = f + tf;
    g = g + tg;
    fp = fp + tfp;
    gp = gp + tgp;
    if (9 * kk * kk > qabs(z3) && qabs(tf) + qabs(tg) + qabs(tfp) + qabs(tgp) <
                                       (__float128)1e-36 * (qabs(f) + qabs(g) + qabs(fp) + qabs(gp))) break;
  }
  const QComplex v = f * c1 - g * c2;
  const QComplex vp = fp * c1 - gp * c2;
  return {Complex(double(v.re), double(v.im)), Complex(double(vp.re), double(vp.im))};
}

// Newton on the binary128 series for a real zero of Ai(-x).
inline double airy_zero(double guess) {
  double x = guess;
  for (int i = 0; i < 60; ++i) {
    auto [v, vp] = airy_series(Complex(-x, 0));
    const double step = v.real() / vp.real();
    x += step;
    if (std::abs(step) < 1e-15 * x) break;
  }
  return x;
}

// Composite Simpson on [a, b] for a complex-valued function of a real variable.
inline Complex simpson(const std::function<Complex(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  Complex s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// Deterministic uniform samples in an annulus.
inline std::vector<Complex> annulus_samples(int n, double rmin, double rmax, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ur(rmin, rmax), ua(-M_PI, M_PI);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(std::polar(ur(rng), ua(rng)));
  return out;
}

// Determinant by Gaussian elimination with partial pivoting in long double.
inline Complex determinant(std::vector<Complex> a, int n) {
  using L = std::complex<long double>;
  std::vector<L> m(a.begin(), a.end());
  L det = 1;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m[i * n + k]) > std::abs(m[p * n + k])) p = i;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(m[k * n + j], m[p * n + j]);
      det = -det;
    }
    det *= m[k * n + k];
    if (m[k * n + k] == L(0)) return 0;
    for (int i = k + 1; i < n; ++i) {
      const L t = m[i * n + k] / m[k * n + k];
      for (int j = k; j < n; ++j) m[i * n + j] -= t * m[k * n + j];
    }
  }
  return Complex(double(det.real()), double(det.imag()));
}

// Distance from lambda to the tie set of the model problem: the segments
// from -+1 to the node -i/sqrt3 and the ray below the node.
inline double tie_distance(Complex z) {
  const Complex node(0, -1 / std::sqrt(3.0));
  auto seg = [&](Complex a, Complex b) {
    const double t = std::clamp(std::real((z - a) * std::conj(b - a)) / std::norm(b - a), 0.0, 1.0);
    return std::abs(z - (a + t * (b - a)));
  };
  const double ray = z.imag() <= node.imag() ? std::abs(z.real()) : std::abs(z - node);
  return std::min({seg(-1.0, node), seg(1.0, node), ray});
}

}  // namespace oracle
