#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spectraltie/discretize.hpp"
#include "spectraltie/parallel.hpp"

using namespace spectraltie;

namespace {

double nearest(const std::vector<Complex>& v, Complex z) {
  double b = INFINITY;
  for (const Complex& w : v) b = std::min(b, std::abs(w - z));
  return b;
}

DenseComplexMatrix random_matrix(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  DenseComplexMatrix m(n);
  for (auto& z : m.a) z = Complex(g(rng), g(rng));
  return m;
}

const std::vector<DiscretizationResult>& model_pair_1e3() {
  static const auto r = parallel_map(2, [](std::size_t i) {
    return solve_model_fd(ProblemParams::from_epsilon(1e-3), i ? 2000 : 1500);
  });
  return r;
}

}  // namespace

TEST_CASE("eig_dense on small exact cases") {
  for (Complex z : eig_dense(DenseComplexMatrix::identity(5))) CHECK(std::abs(z - 1.0) < 1e-15);
  DenseComplexMatrix d(3);
  d(0, 0) = 1;
  d(1, 1) = Complex(0, 2);
  d(2, 2) = -3;
  const auto e = eig_dense(d);
  for (Complex z : {Complex(1), Complex(0, 2), Complex(-3)}) CHECK(nearest(e, z) < 1e-15);
  DenseComplexMatrix bad(2);
  bad(0, 1) = Complex(NAN, 0);
  CHECK_THROWS_AS(eig_dense(bad), DomainError);
}

TEST_CASE("eig_dense trace, determinant and backward error on random 30x30") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const auto A = random_matrix(30, seed);
    for (Arithmetic arith : {Arithmetic::binary64, Arithmetic::binary128}) {
      const auto e = eig_dense(A, arith);
      REQUIRE(e.size() == 30);
      Complex tr = 0, sum = 0, prod = 1;
      for (int i = 0; i < 30; ++i) tr += A(i, i);
      for (Complex z : e) {
        sum += z;
        prod *= z;
      }
      const Complex det = oracle::determinant(A.a, 30);
      CHECK(std::abs(sum - tr) <= 1e-8);
      CHECK(std::abs(prod - det) <= 1e-6 * std::abs(det));
      for (int i = 0; i < 30; i += 5) CHECK(ritz_backward_error(A, e[i]) <= 1e-10);
    }
  }
}

TEST_CASE("tridiagonal fast path agrees with the general path") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  DenseComplexMatrix T(60);
  for (int i = 0; i < 60; ++i) {
    T(i, i) = Complex(u(rng), u(rng));
    if (i + 1 < 60) T(i, i + 1) = T(i + 1, i) = Complex(u(rng), u(rng));
  }
  REQUIRE(T.is_tridiagonal());
  REQUIRE(T.is_symmetric());
  const auto fast = eig_dense(T), slow = eig_dense_general(T, Arithmetic::binary128);
  REQUIRE(fast.size() == slow.size());
  for (Complex z : fast) CHECK(nearest(slow, z) <= 1e-12);
}

TEST_CASE("eig_generalized") {
  const auto A = random_matrix(12, 11);
  const auto plain = eig_dense(A), gen = eig_generalized(A, DenseComplexMatrix::identity(12));
  for (Complex z : plain) CHECK(nearest(gen, z) <= 1e-12);

  const auto B = random_matrix(12, 12);
  DenseComplexMatrix A2 = B;
  for (auto& z : A2.a) z *= 2.0;
  for (Complex z : eig_generalized(A2, B)) CHECK(std::abs(z - 2.0) <= 1e-10);

  // A = B M with M upper triangular: the pencil has the diagonal of M.
  DenseComplexMatrix M(3), B3(3);
  const Complex mu[3] = {Complex(1, 0), Complex(2, 1), Complex(0, -3)};
  for (int i = 0; i < 3; ++i) {
    M(i, i) = mu[i];
    for (int j = i + 1; j < 3; ++j) M(i, j) = Complex(0.5 * (i + 1), -0.25 * j);
    for (int j = 0; j < 3; ++j) B3(i, j) = Complex(1.0 / (i + j + 1), i == j ? 1.0 : 0.0);
  }
  const auto e = eig_generalized(B3 * M, B3);
  for (Complex z : mu) CHECK(nearest(e, z) <= 1e-10);

  DenseComplexMatrix S(3);
  S(0, 0) = S(0, 1) = S(1, 0) = S(1, 1) = 1;
  S(2, 2) = 1;
  CHECK_THROWS_AS(eig_generalized(M, S), DomainError);
}

TEST_CASE("model matrix") {
  const auto p = ProblemParams::from_epsilon(1e-3);
  auto m = model_matrix(p, 1);
  CHECK(std::abs(m.a(0, 0) - Complex(0, -2e-3)) < 1e-18);
  CHECK(std::abs(eig_dense(m.a)[0] - Complex(0, -2e-3)) < 1e-18);
  CHECK(m.under_resolved);

  // n = 2: h = 2/3, x = -+1/3, off-diagonal o = i eps/h^2, diagonal x - 2o.
  m = model_matrix(p, 2);
  const Complex o(0, 1e-3 * 9.0 / 4.0), d1 = -1.0 / 3 - 2.0 * o, d2 = 1.0 / 3 - 2.0 * o;
  const Complex disc = std::sqrt((d1 - d2) * (d1 - d2) + 4.0 * o * o);
  const auto e = eig_dense(m.a);
  CHECK(nearest(e, 0.5 * (d1 + d2 + disc)) < 1e-15);
  CHECK(nearest(e, 0.5 * (d1 + d2 - disc)) < 1e-15);

  CHECK_FALSE(model_matrix(p, 2000).under_resolved);
  CHECK(model_matrix(p, 2000).a.is_tridiagonal());
  CHECK_THROWS_AS(model_matrix(p, 0), DomainError);

  const auto& fine = model_pair_1e3()[1];
  REQUIRE(fine.eigenvalues.size() == 2000);
  int near_tie = 0;
  for (Complex z : fine.eigenvalues) {
    CHECK(z.imag() < 0);
    near_tie += oracle::tie_distance(z) <= 0.02;
  }
  CHECK(near_tie >= 8);
}

TEST_CASE("filter_spurious and extrapolation") {
  DiscretizationResult a{{Complex(1, 0), Complex(0, -1)}, 10, Scheme::fd_model, {}};
  DiscretizationResult b{{Complex(1, 0), Complex(0, -1)}, 20, Scheme::fd_model, {}};
  auto f = filter_spurious(a, b, 1e-12);
  CHECK(f.resolved == std::vector<bool>{true, true});
  b.eigenvalues = {Complex(5, 5), Complex(-5, -5)};
  f = filter_spurious(a, b, 1e-3);
  CHECK(f.resolved == std::vector<bool>{false, false});
  CHECK_THROWS_AS(filter_spurious(b, a, 1e-3), DomainError);
  b.scheme = Scheme::colloc_os;
  CHECK_THROWS_AS(filter_spurious(a, b, 1e-3), DomainError);

  // Exact h^2 law is removed exactly.
  const double hc = 2.0 / 11, hf = 2.0 / 21;
  DiscretizationResult c{{Complex(0.3, -0.2) + 7.0 * hc * hc}, 10, Scheme::fd_model, {}};
  DiscretizationResult d{{Complex(0.3, -0.2) + 7.0 * hf * hf}, 20, Scheme::fd_model, {}};
  const auto r = richardson_extrapolate(c, d, 1.0);
  CHECK(std::abs(r.eigenvalues[0] - Complex(0.3, -0.2)) < 1e-14);

  const auto& pair = model_pair_1e3();
  f = filter_spurious(pair[0], pair[1], 1e-4);
  int tie = 0, deep = 0;
  for (std::size_t i = 0; i < f.eigenvalues.size(); ++i) {
    const Complex z = f.eigenvalues[i];
    if (z.imag() >= -1 && oracle::tie_distance(z) <= 0.02) {
      CHECK(f.resolved[i]);
      ++tie;
    }
    if (z.imag() < -50) {
      CHECK_FALSE(f.resolved[i]);
      ++deep;
    }
  }
  CHECK(tie >= 15);
  CHECK(deep > 100);
}

TEST_CASE("collocation pair") {
  const auto p = ProblemParams::from_reynolds(3000, 1.0);
  CHECK_THROWS_AS(os_matrices(p, 63), DomainError);
  const auto [A, B] = os_matrices(p, 64);
  CHECK(A.n == 63);
  CHECK(smallest_singular_value(B) > 1e-3);
  CHECK(std::abs(lambda_from_tilde(tilde_from_lambda(Complex(0.3, -0.7), p), p) - Complex(0.3, -0.7)) < 1e-14);

  // Grid refinement at a moderate Reynolds number.
  const auto q = ProblemParams::from_reynolds(1000, 1.0);
  const auto r = parallel_map(2, [&](std::size_t i) { return solve_os_colloc(q, i ? 160 : 128); });
  const auto f = filter_spurious(r[0], r[1], 1e-6);
  int resolved = 0;
  for (std::size_t i = 0; i < f.eigenvalues.size(); ++i) {
    const Complex z = f.eigenvalues[i];
    if (z.imag() < -1.5) continue;
    CHECK(f.resolved[i]);
    CHECK(nearest(f.eigenvalues, -std::conj(z)) <= 1e-10);
    ++resolved;
  }
  CHECK(resolved > 20);
}

TEST_CASE("nonlocal second-order oracle agrees with collocation") {
  const auto p = ProblemParams::from_reynolds(3000, 1.0);
  const auto A = constrained_model_os(p, 50);
  CHECK_FALSE(A.is_tridiagonal());
  const auto r = parallel_map(3, [&](std::size_t i) {
    if (i == 2) return solve_os_colloc(p, 256);
    return solve_os_constrained(p, i ? 260 : 200, Arithmetic::binary128);
  });
  const auto ext = richardson_extrapolate(r[0], r[1], 0.05);
  std::vector<Complex> resolved;
  for (std::size_t i = 0; i < ext.eigenvalues.size(); ++i)
    if (ext.resolved[i]) resolved.push_back(ext.eigenvalues[i]);
  int checked = 0;
  for (Complex z : r[2].eigenvalues) {
    if (z.imag() < -1.2 || std::abs(z.real()) > 1) continue;
    CHECK(nearest(resolved, z) <= 1e-3);
    ++checked;
  }
  CHECK(checked > 30);
}
