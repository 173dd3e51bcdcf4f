#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spectraltie/scalar_maps.hpp"

using namespace spectraltie;

namespace {

// f by direct quadrature of e^{-i pi/4} sqrt(x - lambda) over [-1, 1].
Complex f_quadrature(Complex lambda) {
  const Complex e = std::polar(1.0, -kPi / 4);
  return oracle::simpson([&](double x) { return e * std::sqrt(Complex(x) - lambda); }, -1.0, 1.0, 4000);
}

std::vector<Complex> d_eps_samples(const ProblemParams& p, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  std::exponential_distribution<double> depth(0.3);
  const double top = d_epsilon(p).imag();
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) {
    const double x = ux(rng);
    out.emplace_back(x, top * (1.0 + std::abs(x)) - depth(rng));
  }
  return out;
}

}  // namespace

TEST_CASE("params") {
  const auto p = ProblemParams::from_reynolds(3000, 1.0);
  CHECK(p.epsilon == doctest::Approx(1.0 / 3000));
  CHECK(p.sigma == doctest::Approx(std::cbrt(1.0 / 3000)));
  CHECK(kThetaMin == doctest::Approx(0.26863).epsilon(1e-4));
  for (auto w : p.omega) CHECK(std::abs(std::abs(w) - 1.0) < 1e-15);
  CHECK(std::abs(p.omega[0] - std::polar(1.0, kPi / 6)) < 1e-15);
  CHECK_THROWS_AS(ProblemParams::make(1e-3, 1.0, 999.0, 0.3), DomainError);
  CHECK_THROWS_AS(ProblemParams::from_epsilon(1e-3, 1.0, 0.2), DomainError);
  CHECK_THROWS_AS(ProblemParams::from_epsilon(-1.0), DomainError);
}

TEST_CASE("f and f' at the node and far down the ray") {
  const Complex f0 = f_map(kNode);
  CHECK(f0.real() == doctest::Approx((4.0 / 3.0) * std::pow(2.0 / std::sqrt(3.0), 1.5)).epsilon(1e-14));
  CHECK(f0.real() == doctest::Approx(1.65442).epsilon(1e-5));
  CHECK(std::abs(f0.imag()) < 1e-15);
  const Complex fp = f_deriv(kNode);
  CHECK(std::abs(fp - Complex(0, std::sqrt(2.0 / std::sqrt(3.0)))) < 1e-14);
  CHECK(std::abs(f_map(Complex(0, -2)).imag()) < 1e-12);
  CHECK(std::abs(f_map(Complex(0, -100)) - 20.0) < 1e-3);
  CHECK(std::abs(f_deriv(Complex(0, -100)) - Complex(0, 0.1)) < 2e-4);
  const Complex lam(-0.3, -0.9);
  const double h = 1e-5;
  CHECK(std::abs(f_deriv(lam) - (f_map(lam + h) - f_map(lam - h)) / (2 * h)) <= 1e-6);
}

TEST_CASE("closed form agrees with the defining integral") {
  for (Complex lam : {Complex(0, -0.3), Complex(-0.7, -0.2), Complex(0.4, -1.5), Complex(-1, -3), kNode})
    CHECK(std::abs(f_map(lam) - f_quadrature(lam)) < 1e-9);
}

TEST_CASE("f branch errors") {
  CHECK_THROWS_AS(f_map(Complex(0.3, 0.0)), DomainError);
  CHECK_THROWS_AS(f_map(Complex(0.0, 0.5)), DomainError);
  CHECK_THROWS_AS(f_deriv(Complex(-0.9, 0.0)), DomainError);
  CHECK_NOTHROW(f_map(Complex(-1.0, 0.0)));
}

TEST_CASE("d_eps") {
  auto p = ProblemParams::from_epsilon(1e-4, 1.0, 0.3);
  CHECK(std::abs(d_epsilon(p) - Complex(0, -0.604981)) < 1e-6);
  CHECK(node_offset(1e-4, 0.3) == doctest::Approx(0.027631).epsilon(1e-5));
  p = ProblemParams::from_epsilon(1.0 / 3000, 1.0, 0.3);
  const double expect = 1.0 / std::sqrt(3.0) + std::sqrt(1.0 / 3000) * 0.3 * std::log(3000.0);
  CHECK(std::abs(d_epsilon(p) - Complex(0, -expect)) < 1e-15);
  CHECK(d_epsilon(p).imag() == doctest::Approx(-0.621202).epsilon(1e-6));
}

TEST_CASE("regions") {
  const auto p = ProblemParams::from_epsilon(1e-3);
  const auto D = make_region(RegionKind::D_eps, p);
  CHECK(in_region(D, Complex(0, -2)));
  CHECK_FALSE(in_region(D, kNode));
  CHECK_FALSE(in_region(D, Complex(-0.5, -0.3)));
  CHECK_FALSE(in_region(D, Complex(1.5, -3)));

  const auto O = make_region(RegionKind::Omega1, p);
  CHECK(std::abs(std::abs(kNode - O.d2) - 2 * node_offset(p.epsilon, p.theta)) < 1e-14);
  CHECK(std::abs(O.d1 + 1.0) == doctest::Approx(std::pow(1e-3, 0.25)));
  CHECK(region_contains(O, Complex(-0.5, 0.1)) == Membership::outside);
  const Complex mid = segment_point(kSegmentLength / 2, 0.0);
  const Complex normal = std::polar(1.0, kPi / 3);
  CHECK(region_contains(O, mid + 0.01 * normal) == Membership::omega1);
  CHECK(region_contains(O, mid - 0.01 * normal) == Membership::omega2);
  CHECK(in_region(O, mid + 0.01 * normal));
  CHECK_FALSE(in_region(make_region(RegionKind::Omega2, p), mid + 0.01 * normal));
  CHECK(region_contains(O, Complex(-0.99, -0.001)) == Membership::outside);  // inside the d1 disc
  CHECK(region_contains(O, Complex(-0.2, -1.5)) == Membership::outside);     // below the d2 line

  const auto A = make_region(RegionKind::ExtendedAiry, p);
  CHECK(in_region(A, Complex(10, 0)));
  CHECK_FALSE(in_region(A, Complex(-10, 0)));
  CHECK_FALSE(in_region(A, Complex(0.5, 0)));
}

TEST_CASE("segment frame round trip") {
  for (const Complex z : oracle::annulus_samples(100, 0.0, 3.0, 5)) {
    const auto [t, g] = segment_coords(z);
    CHECK(std::abs(segment_point(t, g) - z) < 1e-12);
  }
  CHECK(std::abs(segment_point(kSegmentLength, 0) - kNode) < 1e-15);
}

TEST_CASE("envelope phi") {
  CHECK(phi_envelope(0.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  // 2e^{i pi/6} - 2/sqrt3 has argument pi/3, so the 3/2 power is imaginary.
  CHECK(std::abs(phi_envelope(kSegmentLength)) < 1e-14);
  double prev = phi_envelope(0.0);
  for (int i = 1; i <= 100; ++i) {
    const double v = phi_envelope(kSegmentLength * i / 100);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(phi_envelope(-0.1), DomainError);
}

TEST_CASE("curve constants") {
  const auto a = curve_constants(-1.0, 1.0);
  CHECK(a.c == doctest::Approx(2 * std::sqrt(kPi)).epsilon(1e-14));
  CHECK(a.k0 == 0.0);
  // sh(1 + i/sqrt3) by its real and imaginary parts.
  const double s = 1.0 / std::sqrt(3.0);
  const double re = std::sinh(1.0) * std::cos(s), im = std::cosh(1.0) * std::sin(s);
  const auto b = curve_constants(kNode, 1.0);
  CHECK(b.c == doctest::Approx(2 * std::sqrt(kPi) * std::hypot(re, im) / std::sinh(2.0)).epsilon(1e-14));
  CHECK(b.k0 == doctest::Approx(std::atan2(im, re) / (2 * kPi)).epsilon(1e-14));
  CHECK(b.c == doctest::Approx(1.266484).epsilon(1e-6));
  CHECK(b.k0 == doctest::Approx(0.1126117).epsilon(1e-6));
  CHECK(curve_constants(0.3, 1.0).k0 == 0.0);
}

TEST_CASE("properties of f on D_eps") {
  const auto p = ProblemParams::from_epsilon(1e-3);
  const auto lam = d_eps_samples(p, 500, 2024);
  const double fd = f_map(d_epsilon(p)).real();

  for (double mu : {0.1, 0.57735, 1.0, 5.0, 50.0}) CHECK(std::abs(f_map(Complex(0, -mu)).imag()) <= 1e-12);

  double prev = 0;
  for (double mu = 1 / std::sqrt(3.0); mu <= 100; mu *= 1.01) {
    const double v = f_map(Complex(0, -mu)).real();
    CHECK(v > prev);
    prev = v;
  }

  const double h = 1e-6;
  for (const Complex z : lam) {
    CHECK(std::abs(std::arg(f_map(z))) < kPi / 6 + 1e-9);
    CHECK(std::abs(std::arg(-kI * f_deriv(z))) < kPi / 6 + 1e-9);
    const Complex f2 = (f_deriv(z + h) - f_deriv(z - h)) / (2 * h);
    CHECK(std::abs(std::arg(f2)) < kPi / 2 + 1e-9);
    CHECK(f_map(z).real() > fd);
    if (std::abs(z.real()) > 1e-3) CHECK(std::abs(f_map(z).imag()) > 0.0);
  }

  double gmin = INFINITY;
  for (int i = 0; i + 1 < 400 && i + 1 < int(lam.size()); i += 2) {
    const Complex a = lam[i], b = lam[i + 1];
    const double g = std::abs(f_map(a) - f_map(b)) * std::sqrt(std::max(std::abs(a), std::abs(b))) / std::abs(a - b);
    gmin = std::min(gmin, g);
  }
  MESSAGE("smallest observed separation ratio " << gmin);
  CHECK(gmin >= 0.5);
}
