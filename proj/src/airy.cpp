#include "spectraltie/airy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace spectraltie::airy {

namespace {

using LComplex = std::complex<long double>;

constexpr long double kAi0 = 0.355028053887817239260063186004183558L;
constexpr long double kAip0 = 0.258819403792806798405183560189203964L;  // -Ai'(0)
constexpr double kTwoSqrtPi = 3.544907701811032054596334966682290366;

// Beyond this radius the optimally truncated expansion is accurate to ~1e-16.
constexpr double kTaylorStartRadius = 9.0;
constexpr double kTaylorInnerRadius = 5.0;
constexpr double kTaylorStep = 0.5;
constexpr double kMaxLogScale = 700.0;

const Complex kOmega = std::polar(1.0, 2.0 * kPi / 3.0);
const Complex kOmegaBar = std::conj(kOmega);
const Complex kEmPi3 = std::polar(1.0, -kPi / 3.0);
const Complex kEpPi3 = std::polar(1.0, kPi / 3.0);

ScaledAiryEval maclaurin(Complex xi) {
  const LComplex z(xi.real(), xi.imag());
  const LComplex z3 = z * z * z;
  LComplex f = 1.0L, g = z, fp = 0.0L, gp = 1.0L;
  LComplex tf = 1.0L, tg = z, tfp = 0.0L, tgp = 1.0L;
  const long double tiny = 1e-22L;
  for (int k = 1; k < 400; ++k) {
    const long double kk = k;
    tf *= z3 / ((3 * kk - 1) * (3 * kk));
    tg *= z3 / ((3 * kk) * (3 * kk + 1));
    tfp = (k == 1) ? z * z / 2.0L : tfp * z3 / ((kk - 1) * (3 * kk - 1) * 3);
    tgp *= z3 / ((3 * kk - 2) * (3 * kk));
    f += tf;
    g += tg;
    fp += tfp;
    gp += tgp;
    // Terms shrink monotonically once 9k^2 > |z|^3.
    if (9.0L * kk * kk > std::abs(z3) &&
        std::abs(tf) + std::abs(tg) <= tiny * (std::abs(f) + std::abs(g)) &&
        std::abs(tfp) + std::abs(tgp) <= tiny * (std::abs(fp) + std::abs(gp)))
      break;
  }
  const LComplex v = kAi0 * f - kAip0 * g;
  const LComplex vp = kAi0 * fp - kAip0 * gp;
  return {Complex(double(v.real()), double(v.imag())), Complex(double(vp.real()), double(vp.imag())),
          Complex{}, Regime::series};
}

// Optimally truncated large-argument expansion, valid for |arg xi| < pi and
// accurate for |arg xi| <= 2pi/3. The exponent -zeta is returned separately.
ScaledAiryEval asymptotic(Complex xi) {
  const Complex sq = std::sqrt(xi);
  const Complex zeta = (2.0 / 3.0) * xi * sq;
  const Complex q = std::sqrt(sq);  // xi^{1/4}
  const Complex inv = 1.0 / zeta;

  Complex su = 1.0, sv = 1.0;
  Complex pw = 1.0;
  double u = 1.0;
  double prev_u = INFINITY, prev_v = INFINITY;
  bool u_done = false, v_done = false;
  for (int k = 1; k < 80 && !(u_done && v_done); ++k) {
    u *= (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
    const double vk = -u * (6.0 * k + 1) / (6.0 * k - 1);
    pw *= -inv;
    const Complex tu = u * pw;
    const Complex tv = vk * pw;
    const double au = std::abs(tu), av = std::abs(tv);
    if (!u_done) {
      if (au >= prev_u) {
        u_done = true;
      } else {
        su += tu;
        prev_u = au;
        if (au < 1e-18 * std::abs(su)) u_done = true;
      }
    }
    if (!v_done) {
      if (av >= prev_v) {
        v_done = true;
      } else {
        sv += tv;
        prev_v = av;
        if (av < 1e-18 * std::abs(sv)) v_done = true;
      }
    }
  }
  return {su / (kTwoSqrtPi * q), -q * sv / kTwoSqrtPi, -zeta, Regime::asymptotic};
}

ScaledAiryEval combine(const ScaledAiryEval& a, Complex ca, Complex cda, const ScaledAiryEval& b,
                       Complex cb, Complex cdb, Regime regime) {
  const Complex e = a.exponent.real() >= b.exponent.real() ? a.exponent : b.exponent;
  const Complex fa = std::exp(a.exponent - e);
  const Complex fb = std::exp(b.exponent - e);
  return {ca * a.value * fa + cb * b.value * fb, cda * a.derivative * fa + cdb * b.derivative * fb, e,
          regime};
}

ScaledAiryEval connection(Complex xi) {
  const ScaledAiryEval p = asymptotic(kOmega * xi);
  const ScaledAiryEval m = asymptotic(kOmegaBar * xi);
  // d/dxi v(w xi) = w v'(w xi): e^{-pi i/3} w = e^{pi i/3}, e^{pi i/3} w^-1 = e^{-pi i/3}.
  return combine(p, kEmPi3, kEpPi3, m, kEpPi3, kEmPi3, Regime::connection);
}

// Marches the Airy ODE inward along the ray through xi, starting from the
// asymptotic value at radius kTaylorStartRadius. Inward is the growing
// direction for |arg xi| < pi/3, so the recursion is stable.
ScaledAiryEval taylor_march(Complex xi) {
  const double r = std::abs(xi);
  const Complex dir = xi / r;
  const Complex start = kTaylorStartRadius * dir;
  const ScaledAiryEval s = asymptotic(start);
  const Complex scale = std::exp(s.exponent);
  Complex w = s.value * scale, wp = s.derivative * scale;
  const int steps = std::max(1, int(std::ceil((kTaylorStartRadius - r) / kTaylorStep)));
  const Complex h = (xi - start) / double(steps);
  Complex a = start;
  for (int step = 0; step < steps; ++step) {
    // c_{k+2} = (a c_k + c_{k-1}) / ((k+2)(k+1))
    Complex cm1 = 0.0, c0 = w, c1 = wp;
    Complex hp = h;  // h^{k+1}
    Complex val = c0 + c1 * h, der = c1;
    for (int k = 0; k < 80; ++k) {
      const Complex c2 = (a * c0 + cm1) / double((k + 2) * (k + 1));
      const Complex dterm = double(k + 2) * c2 * hp;
      der += dterm;
      hp *= h;
      const Complex term = c2 * hp;
      val += term;
      cm1 = c0;
      c0 = c1;
      c1 = c2;
      if (k > 4 && std::abs(term) < 1e-19 * std::abs(val) && std::abs(dterm) < 1e-19 * std::abs(der)) break;
    }
    w = val;
    wp = der;
    a += h;
  }
  return {w, wp, Complex{}, Regime::taylor};
}

Regime choose_regime(Complex xi) {
  const double r = std::abs(xi);
  const double th = std::abs(std::arg(xi));
  if (r <= kCrossoverRadius) {
    if (r > kTaylorInnerRadius && th < kPi / 3.0) return Regime::taylor;
    return Regime::series;
  }
  return th <= 2.0 * kPi / 3.0 ? Regime::asymptotic : Regime::connection;
}

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::series: return "series";
    case Regime::asymptotic: return "asymptotic";
    case Regime::connection: return "connection";
    case Regime::taylor: return "taylor";
  }
  return "?";
}

ScaledAiryEval airy_v_forced(Complex xi, Regime regime) {
  if (!is_finite(xi)) throw DomainError("airy_v: non-finite argument");
  switch (regime) {
    case Regime::series: return maclaurin(xi);
    case Regime::asymptotic:
      if (xi == Complex{}) throw DomainError("airy_v: asymptotic branch at xi = 0");
      return asymptotic(xi);
    case Regime::connection:
      if (xi == Complex{}) throw DomainError("airy_v: connection branch at xi = 0");
      return connection(xi);
    case Regime::taylor:
      if (std::abs(xi) >= kTaylorStartRadius) return asymptotic(xi);
      if (xi == Complex{}) return maclaurin(xi);
      return taylor_march(xi);
  }
  throw DomainError("airy_v: unknown regime");
}

ScaledAiryEval airy_v_scaled(Complex xi) { return airy_v_forced(xi, choose_regime(xi)); }

AiryEval airy_v(Complex xi) {
  const ScaledAiryEval s = airy_v_scaled(xi);
  if (s.exponent == Complex{}) return {s.value, s.derivative, s.regime};
  const double mag = s.exponent.real() + std::log(std::max(std::abs(s.value), std::abs(s.derivative)));
  if (s.exponent.real() > kMaxLogScale || mag > kMaxLogScale)
    throw ScaledOverflowError("airy_v: value overflows; use airy_v_scaled", s.exponent);
  const Complex e = std::exp(s.exponent);
  return {s.value * e, s.derivative * e, s.regime};
}

ScaledComplex airy_leading(Complex xi) {
  const Complex sq = std::sqrt(xi);
  const Complex zeta = (2.0 / 3.0) * xi * sq;
  return ScaledComplex::exp(-zeta) * (1.0 / (kTwoSqrtPi * std::sqrt(sq)));
}

std::vector<double> airy_real_zeros(int n) {
  if (n < 1) throw DomainError("airy_real_zeros: n must be positive");
  std::vector<double> zeros;
  zeros.reserve(n);
  for (int k = 1; k <= n; ++k) {
    double x = std::pow(1.5 * kPi * (k - 0.25), 2.0 / 3.0);
    bool converged = false;
    AiryEval e = airy_v(Complex(-x, 0.0));
    for (int it = 0; it < 50; ++it) {
      const double val = e.value.real();
      const double der = e.derivative.real();
      if (std::abs(val) <= 1e-12 * std::abs(der) * x) {
        converged = true;
        break;
      }
      // F(x) = v(-x), F'(x) = -v'(-x)
      double step = val / der;
      double trial = x + step;
      AiryEval et = airy_v(Complex(-trial, 0.0));
      for (int halve = 0; halve < 30 && std::abs(et.value.real()) >= std::abs(val); ++halve) {
        step *= 0.5;
        trial = x + step;
        et = airy_v(Complex(-trial, 0.0));
      }
      x = trial;
      e = et;
    }
    if (!converged) throw ConvergenceError("airy_real_zeros: Newton failed for k = " + std::to_string(k), x);
    zeros.push_back(x);
  }
  return zeros;
}

bool in_extended_domain(Complex xi, double kappa) {
  const double r = std::abs(xi);
  if (!(r > 1.0)) throw DomainError("in_extended_domain: requires |xi| > 1");
  if (!(kappa >= 0.75)) throw DomainError("in_extended_domain: requires kappa >= 3/4");
  return std::abs(std::arg(xi)) <= kPi - kappa * std::log(r) / std::pow(r, 1.5);
}

}  // namespace spectraltie::airy
