#include "spectraltie/discretize.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <type_traits>

#include <quadmath.h>

namespace spectraltie {

namespace {

// Minimal binary128 complex arithmetic.
struct Cq {
  __float128 re = 0, im = 0;
  Cq() = default;
  Cq(__float128 r, __float128 i = 0) : re(r), im(i) {}
  Cq(double r) : re(r) {}
  Cq(int r) : re(r) {}
  explicit Cq(Complex z) : re(z.real()), im(z.imag()) {}
};
Cq operator+(Cq a, Cq b) { return {a.re + b.re, a.im + b.im}; }
Cq operator-(Cq a, Cq b) { return {a.re - b.re, a.im - b.im}; }
Cq operator*(Cq a, Cq b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cq operator/(Cq a, Cq b) {
  const __float128 d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Cq& operator+=(Cq& a, Cq b) { return a = a + b; }
Cq& operator-=(Cq& a, Cq b) { return a = a - b; }
Cq& operator*=(Cq& a, Cq b) { return a = a * b; }
Cq& operator/=(Cq& a, Cq b) { return a = a / b; }

template <class C>
struct Arith;

template <>
struct Arith<Complex> {
  using R = double;
  using C = Complex;
  static constexpr R eps = DBL_EPSILON;
  static R abs1(C z) { return std::abs(z.real()) + std::abs(z.imag()); }
  static R abs(C z) { return std::abs(z); }
  static R sqrt_r(R x) { return std::sqrt(x); }
  static C sqrt(C z) { return std::sqrt(z); }
  static C conj(C z) { return std::conj(z); }
  static C from(Complex z) { return z; }
  static Complex to(C z) { return z; }
};

template <>
struct Arith<Cq> {
  using R = __float128;
  using C = Cq;
  static constexpr R eps = FLT128_EPSILON;
  static R abs1(C z) { return fabsq(z.re) + fabsq(z.im); }
  static R abs(C z) { return hypotq(z.re, z.im); }
  static R sqrt_r(R x) { return sqrtq(x); }
  static C sqrt(C z) {
    const R m = abs(z);
    if (m == 0) return {};
    if (z.re >= 0) {
      const R t = sqrtq((m + z.re) / 2);
      return {t, z.im / (2 * t)};
    }
    const R t = sqrtq((m - z.re) / 2);
    return {fabsq(z.im) / (2 * t), z.im < 0 ? -t : t};
  }
  static C conj(C z) { return {z.re, -z.im}; }
  static C from(Complex z) { return Cq(z); }
  static Complex to(C z) { return {double(z.re), double(z.im)}; }
};

template <class C>
struct Mat {
  int n = 0;
  std::vector<C> a;
  explicit Mat(int n_) : n(n_), a(std::size_t(n_) * n_) {}
  explicit Mat(const DenseComplexMatrix& m) : n(m.n), a(m.a.size()) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = Arith<C>::from(m.a[i]);
  }
  C& operator()(int i, int j) { return a[std::size_t(i) * n + j]; }
  const C& operator()(int i, int j) const { return a[std::size_t(i) * n + j]; }
};

template <class C>
class Hessenberg {
  using A = Arith<C>;
  using R = typename A::R;

 public:
  explicit Hessenberg(Mat<C> m) : h_(std::move(m)), n_(h_.n) {}

  void balance() {
    bool done = false;
    while (!done) {
      done = true;
      for (int i = 0; i < n_; ++i) {
        R c = 0, r = 0;
        for (int j = 0; j < n_; ++j) {
          if (j == i) continue;
          c += A::abs1(h_(j, i));
          r += A::abs1(h_(i, j));
        }
        if (c == 0 || r == 0) continue;
        R g = r / 2, f = 1;
        const R s = c + r;
        while (c < g) {
          f *= 2;
          c *= 4;
        }
        g = r * 2;
        while (c >= g) {
          f /= 2;
          c /= 4;
        }
        if ((c + r) / f < R(0.95) * s) {
          done = false;
          const C fi = C(R(1) / f), fc = C(f);
          for (int j = 0; j < n_; ++j) h_(i, j) *= fi;
          for (int j = 0; j < n_; ++j) h_(j, i) *= fc;
        }
      }
    }
  }

  void reduce() {
    std::vector<C> v(n_);
    for (int k = 0; k + 2 < n_; ++k) {
      R below = 0;
      for (int i = k + 2; i < n_; ++i) below += A::abs1(h_(i, k));
      if (below == 0) continue;
      R scale = below + A::abs1(h_(k + 1, k));
      R norm2 = 0;
      for (int i = k + 1; i < n_; ++i) {
        v[i] = h_(i, k) / C(scale);
        const R m = A::abs(v[i]);
        norm2 += m * m;
      }
      const R alpha = A::sqrt_r(norm2);
      const R a0 = A::abs(v[k + 1]);
      const C phase = a0 > 0 ? v[k + 1] / C(a0) : C(1);
      v[k + 1] += phase * C(alpha);
      R vnorm2 = 0;
      for (int i = k + 1; i < n_; ++i) {
        const R m = A::abs(v[i]);
        vnorm2 += m * m;
      }
      const C beta = C(R(2) / vnorm2);
      // H <- (I - beta v v^*) H
      for (int j = k; j < n_; ++j) {
        C s = 0;
        for (int i = k + 1; i < n_; ++i) s += A::conj(v[i]) * h_(i, j);
        s *= beta;
        for (int i = k + 1; i < n_; ++i) h_(i, j) -= s * v[i];
      }
      // H <- H (I - beta v v^*)
      for (int i = 0; i < n_; ++i) {
        C s = 0;
        for (int j = k + 1; j < n_; ++j) s += h_(i, j) * v[j];
        s *= beta;
        for (int j = k + 1; j < n_; ++j) h_(i, j) -= s * A::conj(v[j]);
      }
      for (int i = k + 2; i < n_; ++i) h_(i, k) = 0;
    }
  }

  // Explicitly shifted single-shift QR on the active block only; the
  // eigenvalues do not need the rest of the Schur form.
  std::vector<Complex> qr() {
    std::vector<Complex> eig(n_);
    std::vector<bool> have(n_, false);
    std::vector<C> cs(n_), sn(n_);
    R anorm = 0;
    for (const C& z : h_.a) anorm += A::abs1(z);
    if (anorm == 0) anorm = 1;
    long total = 0;
    const long cap = 30L * n_;
    int hi = n_ - 1, iter = 0;
    while (hi >= 0) {
      int l = hi;
      for (; l > 0; --l) {
        R s = A::abs1(h_(l - 1, l - 1)) + A::abs1(h_(l, l));
        if (s == 0) s = anorm;
        if (A::abs1(h_(l, l - 1)) <= A::eps * s) {
          h_(l, l - 1) = 0;
          break;
        }
      }
      if (l == hi) {
        eig[hi] = A::to(h_(hi, hi));
        have[hi] = true;
        --hi;
        iter = 0;
        continue;
      }
      if (++total > cap) {
        std::vector<Complex> done;
        for (int i = 0; i < n_; ++i)
          if (have[i]) done.push_back(eig[i]);
        throw EigenConvergenceError("eig_dense: QR did not converge within 30n iterations", done);
      }
      ++iter;
      C mu;
      if (iter % 10 == 0) {
        mu = h_(hi, hi) + C(R(1.5) * A::abs(h_(hi, hi - 1)));
      } else {
        const C a = h_(hi - 1, hi - 1), b = h_(hi - 1, hi), c = h_(hi, hi - 1), d = h_(hi, hi);
        const C half = C(R(0.5)) * (a - d);
        const C disc = A::sqrt(half * half + b * c);
        const C mid = C(R(0.5)) * (a + d);
        const C m1 = mid + disc, m2 = mid - disc;
        mu = A::abs(m1 - d) < A::abs(m2 - d) ? m1 : m2;
      }
      for (int k = l; k <= hi; ++k) h_(k, k) -= mu;
      for (int k = l; k < hi; ++k) {
        const C x = h_(k, k), y = h_(k + 1, k);
        const R ax = A::abs(x), ay = A::abs(y);
        const R r = A::sqrt_r(ax * ax + ay * ay);
        C c = 1, s = 0;
        if (r > 0) {
          const C rinv = C(R(1) / r);
          c = x * rinv;
          s = y * rinv;
        }
        cs[k] = c;
        sn[k] = s;
        const C cc = A::conj(c), sc = A::conj(s);
        // [c^* s^*; -s c] on rows k, k+1
        C* rk = &h_.a[std::size_t(k) * n_];
        C* rk1 = rk + n_;
        for (int j = k; j <= hi; ++j) {
          const C u = rk[j], w = rk1[j];
          rk[j] = cc * u + sc * w;
          rk1[j] = c * w - s * u;
        }
      }
      for (int k = l; k < hi; ++k) {
        const C c = cs[k], s = sn[k], cc = A::conj(c), sc = A::conj(s);
        const int top = std::min(k + 1, hi);
        for (int i = l; i <= top; ++i) {
          C* row = &h_.a[std::size_t(i) * n_];
          const C u = row[k], w = row[k + 1];
          row[k] = u * c + w * s;
          row[k + 1] = w * cc - u * sc;
        }
      }
      for (int k = l; k <= hi; ++k) h_(k, k) += mu;
    }
    return eig;
  }

 private:
  Mat<C> h_;
  int n_;
};

bool is_hessenberg(const DenseComplexMatrix& a) {
  for (int i = 2; i < a.n; ++i)
    for (int j = 0; j + 1 < i; ++j)
      if (a(i, j) != Complex(0)) return false;
  return true;
}

template <class C>
std::vector<Complex> hessenberg_qr(Mat<C> m, bool already_hessenberg) {
  Hessenberg<C> h(std::move(m));
  h.balance();
  if (!already_hessenberg) h.reduce();
  return h.qr();
}

// Implicit QL for complex-symmetric tridiagonal matrices in binary128. The
// rotations are complex orthogonal (c^2 + s^2 = 1) and may break down on
// isotropic vectors; returns false then.
bool symmetric_tridiagonal_ql(const std::vector<Complex>& d0, const std::vector<Complex>& e0,
                              std::vector<Complex>& out) {
  using A = Arith<Cq>;
  const int n = int(d0.size());
  std::vector<Cq> d(n), e(n);
  for (int i = 0; i < n; ++i) d[i] = Cq(d0[i]);
  for (int i = 0; i + 1 < n; ++i) e[i] = Cq(e0[i]);
  for (int l = 0; l < n; ++l) {
    int iter = 0, m;
    do {
      for (m = l; m < n - 1; ++m) {
        const __float128 dd = A::abs1(d[m]) + A::abs1(d[m + 1]);
        if (A::abs1(e[m]) <= A::eps * dd) break;
      }
      if (m == l) break;
      if (iter++ == 60) return false;
      Cq g = (d[l + 1] - d[l]) / (Cq(2) * e[l]);
      Cq r = A::sqrt(g * g + Cq(1));
      g = d[m] - d[l] + e[l] / (A::abs1(g + r) >= A::abs1(g - r) ? g + r : g - r);
      Cq s = 1, c = 1, p = 0;
      for (int i = m - 1; i >= l; --i) {
        const Cq f = s * e[i], b = c * e[i];
        r = A::sqrt(f * f + g * g);
        if (A::abs1(r) <= 1e-12Q * (A::abs1(f) + A::abs1(g))) return false;
        e[i + 1] = r;
        const Cq rinv = Cq(1) / r;
        s = f * rinv;
        c = g * rinv;
        if (A::abs1(s) > 1e6Q || A::abs1(c) > 1e6Q) return false;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + Cq(2) * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      d[l] = d[l] - p;
      e[l] = g;
      e[m] = 0;
    } while (true);
  }
  out.resize(n);
  for (int i = 0; i < n; ++i) {
    out[i] = A::to(d[i]);
    if (!is_finite(out[i])) return false;
  }
  return true;
}

template <class C>
struct LU {
  Mat<C> lu;
  std::vector<int> piv;
  double min_pivot = INFINITY;
};

template <class C>
LU<C> lu_factor(Mat<C> a) {
  using A = Arith<C>;
  const int n = a.n;
  LU<C> f{std::move(a), std::vector<int>(n), INFINITY};
  auto& m = f.lu;
  for (int k = 0; k < n; ++k) {
    int p = k;
    auto best = A::abs1(m(k, k));
    for (int i = k + 1; i < n; ++i)
      if (A::abs1(m(i, k)) > best) {
        best = A::abs1(m(i, k));
        p = i;
      }
    f.piv[k] = p;
    f.min_pivot = std::min(f.min_pivot, double(A::abs(m(p, k))));
    if (p != k)
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
    if (best == 0) continue;
    const C inv = C(1) / m(k, k);
    for (int i = k + 1; i < n; ++i) {
      const C t = m(i, k) * inv;
      m(i, k) = t;
      if (A::abs1(t) == 0) continue;
      C* ri = &m.a[std::size_t(i) * n];
      const C* rk = &m.a[std::size_t(k) * n];
      for (int j = k + 1; j < n; ++j) ri[j] -= t * rk[j];
    }
  }
  return f;
}

template <class C>
C safe_pivot(const C& piv) {
  return Arith<C>::abs1(piv) != 0 ? piv : C(1e-300);
}

template <class C>
void lu_solve(const LU<C>& f, std::vector<C>& b) {
  const int n = f.lu.n;
  const auto& m = f.lu;
  for (int k = 0; k < n; ++k) std::swap(b[k], b[f.piv[k]]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) b[i] -= m(i, j) * b[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) b[i] -= m(i, j) * b[j];
    b[i] /= safe_pivot(m(i, i));
  }
}

// Solves A^* x = b with the same factorization (P A = L U).
template <class C>
void lu_solve_adjoint(const LU<C>& f, std::vector<C>& b) {
  using A = Arith<C>;
  const int n = f.lu.n;
  const auto& m = f.lu;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) b[i] -= A::conj(m(j, i)) * b[j];
    b[i] /= A::conj(safe_pivot(m(i, i)));
  }
  for (int i = n - 1; i >= 0; --i)
    for (int j = i + 1; j < n; ++j) b[i] -= A::conj(m(j, i)) * b[j];
  for (int k = n - 1; k >= 0; --k) std::swap(b[k], b[f.piv[k]]);
}

template <class C>
std::vector<Complex> generalized(Mat<C> M, Mat<C> Bm) {
  using A = Arith<C>;
  const int n = M.n;
  double bnorm = 0;
  for (int j = 0; j < n; ++j) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += double(A::abs(Bm(i, j)));
    bnorm = std::max(bnorm, s);
  }
  const auto f = lu_factor(std::move(Bm));
  if (!(f.min_pivot > n * DBL_EPSILON * bnorm)) throw DomainError("eig_generalized: B is singular to working precision");
  std::vector<C> col(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) col[i] = M(i, j);
    lu_solve(f, col);
    for (int i = 0; i < n; ++i) M(i, j) = col[i];
  }
  return hessenberg_qr(std::move(M), false);
}

double vec_norm(const std::vector<Complex>& v) {
  double s = 0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

void normalize(std::vector<Complex>& v) {
  const double s = vec_norm(v);
  if (s > 0)
    for (auto& z : v) z /= s;
}

std::vector<Complex> start_vector(int n) {
  std::vector<Complex> v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(1.0 + 0.37 * std::sin(1.3 * i), 0.21 * std::cos(0.7 * i));
  normalize(v);
  return v;
}

void check_input(const DenseComplexMatrix& A) {
  A.validate();
  if (A.n > 4096) throw DomainError("eig_dense: n > 4096");
}

}  // namespace

DenseComplexMatrix DenseComplexMatrix::identity(int n) {
  DenseComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void DenseComplexMatrix::validate() const {
  if (n < 1 || a.size() != std::size_t(n) * n) throw DomainError("matrix: bad shape");
  for (const auto& z : a)
    if (!is_finite(z)) throw DomainError("matrix: non-finite entry");
}

double DenseComplexMatrix::norm1() const {
  double best = 0;
  for (int j = 0; j < n; ++j) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

bool DenseComplexMatrix::is_tridiagonal() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(i - j) > 1 && (*this)(i, j) != Complex(0)) return false;
  return true;
}

bool DenseComplexMatrix::is_symmetric() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

DenseComplexMatrix operator*(const DenseComplexMatrix& x, const DenseComplexMatrix& y) {
  if (x.n != y.n) throw DomainError("matrix product: size mismatch");
  const int n = x.n;
  DenseComplexMatrix z(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Complex a = x(i, k);
      if (a == Complex(0)) continue;
      for (int j = 0; j < n; ++j) z(i, j) += a * y(k, j);
    }
  return z;
}

const char* to_string(Arithmetic a) { return a == Arithmetic::binary64 ? "binary64" : "binary128"; }

std::vector<Complex> eig_dense_general(const DenseComplexMatrix& A, Arithmetic arith) {
  check_input(A);
  const bool hess = is_hessenberg(A);
  if (arith == Arithmetic::binary128) return hessenberg_qr(Mat<Cq>(A), hess);
  return hessenberg_qr(Mat<Complex>(A), hess);
}

std::vector<Complex> eig_dense(const DenseComplexMatrix& A, Arithmetic arith) {
  check_input(A);
  if (A.n > 2 && A.is_tridiagonal() && A.is_symmetric()) {
    std::vector<Complex> d(A.n), e(A.n - 1), out;
    for (int i = 0; i < A.n; ++i) d[i] = A(i, i);
    for (int i = 0; i + 1 < A.n; ++i) e[i] = A(i + 1, i);
    if (symmetric_tridiagonal_ql(d, e, out)) return out;
  }
  return eig_dense_general(A, arith);
}

std::vector<Complex> eig_generalized(const DenseComplexMatrix& A, const DenseComplexMatrix& B, Arithmetic arith) {
  A.validate();
  B.validate();
  if (A.n != B.n) throw DomainError("eig_generalized: size mismatch");
  if (arith == Arithmetic::binary128) return generalized(Mat<Cq>(A), Mat<Cq>(B));
  return generalized(Mat<Complex>(A), Mat<Complex>(B));
}

double ritz_backward_error(const DenseComplexMatrix& A, Complex lambda) {
  const int n = A.n;
  Mat<Complex> S(A);
  const Complex shift = lambda + Complex(1e-13 * std::max(1.0, std::abs(lambda)), 0);
  for (int i = 0; i < n; ++i) S(i, i) -= shift;
  const auto f = lu_factor(std::move(S));
  auto x = start_vector(n);
  for (int it = 0; it < 2; ++it) {
    lu_solve(f, x);
    normalize(x);
  }
  std::vector<Complex> r(n);
  for (int i = 0; i < n; ++i) {
    Complex s = -lambda * x[i];
    for (int j = 0; j < n; ++j) s += A(i, j) * x[j];
    r[i] = s;
  }
  return vec_norm(r) / (A.norm1() * vec_norm(x));
}

double smallest_singular_value(const DenseComplexMatrix& B) {
  const auto f = lu_factor(Mat<Complex>(B));
  if (f.min_pivot == 0) return 0;
  auto x = start_vector(B.n);
  double est = 0;
  for (int it = 0; it < 30; ++it) {
    lu_solve_adjoint(f, x);
    lu_solve(f, x);
    const double g = vec_norm(x);
    normalize(x);
    const double next = 1.0 / std::sqrt(g);
    if (it > 0 && std::abs(next - est) <= 1e-10 * est) return next;
    est = next;
  }
  return est;
}

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::fd_model: return "fd_model";
    case Scheme::colloc_os: return "colloc_os";
    case Scheme::constrained_model_os: return "constrained_model_os";
  }
  return "?";
}

ModelMatrix model_matrix(const ProblemParams& p, int n) {
  if (n < 1) throw DomainError("model_matrix: n must be >= 1");
  const double h = 2.0 / (n + 1);
  const Complex off = Complex(0, p.epsilon) / (h * h);
  ModelMatrix m{DenseComplexMatrix(n), h > std::cbrt(p.epsilon) / 10};
  for (int i = 0; i < n; ++i) {
    m.a(i, i) = -2.0 * off + (-1.0 + (i + 1) * h);
    if (i > 0) m.a(i, i - 1) = off;
    if (i + 1 < n) m.a(i, i + 1) = off;
  }
  return m;
}

namespace {

template <class R>
R real_sin(R x);
template <>
double real_sin(double x) { return std::sin(x); }
template <>
__float128 real_sin(__float128 x) { return sinq(x); }

template <class R>
std::pair<std::vector<R>, std::vector<R>> cheb_impl(int N) {
  if (N < 1) throw DomainError("cheb: N must be >= 1");
  const int m = N + 1;
  const R pi = std::is_same_v<R, double> ? R(kPi) : R(M_PIq);
  std::vector<R> x(m), c(m), D(std::size_t(m) * m, R(0));
  for (int j = 0; j < m; ++j) {
    x[j] = real_sin(pi * R(N - 2 * j) / R(2 * N));  // cos(pi j/N), symmetric to rounding
    c[j] = R((j == 0 || j == N ? 2 : 1) * (j % 2 ? -1 : 1));
  }
  for (int i = 0; i < m; ++i) {
    R row = 0;
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const R v = (c[i] / c[j]) / (x[i] - x[j]);
      D[std::size_t(i) * m + j] = v;
      row += v;
    }
    D[std::size_t(i) * m + i] = -row;
  }
  return {x, D};
}

template <class C>
std::pair<Mat<C>, Mat<C>> os_pair(const ProblemParams& p, int N) {
  using R = typename Arith<C>::R;
  if (N < 64) throw DomainError("os_matrices: n must be >= 64");
  const int m = N + 1;
  const auto [x, D] = cheb_impl<R>(N);
  auto mul = [m](const std::vector<R>& a, const std::vector<R>& b) {
    std::vector<R> c(std::size_t(m) * m, R(0));
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) {
        const R v = a[std::size_t(i) * m + k];
        if (v == 0) continue;
        R* ci = &c[std::size_t(i) * m];
        const R* bk = &b[std::size_t(k) * m];
        for (int j = 0; j < m; ++j) ci[j] += v * bk[j];
      }
    return c;
  };
  const auto D2 = mul(D, D);
  const auto D3 = mul(D2, D);
  const auto D4 = mul(D3, D);
  // Clamped fourth derivative: y = (1 - x^2) g with g(+-1) = 0.
  std::vector<R> S(m, R(0));
  for (int j = 1; j < N; ++j) S[j] = R(1) / (R(1) - x[j] * x[j]);
  const int n = N - 1;
  const R a2 = R(p.alpha) * R(p.alpha);
  const R aR = R(p.alpha) * R(p.reynolds);
  Mat<C> A(n), B(n);
  for (int i = 1; i < N; ++i)
    for (int j = 1; j < N; ++j) {
      const std::size_t ij = std::size_t(i) * m + j;
      const R d4 = ((R(1) - x[i] * x[i]) * D4[ij] - R(8) * x[i] * D3[ij] - R(12) * D2[ij]) * S[j];
      const R L = D2[ij] - (i == j ? a2 : R(0));
      const R L2 = d4 - R(2) * a2 * D2[ij] + (i == j ? a2 * a2 : R(0));
      A(i - 1, j - 1) = C(L2, -aR * x[i] * L);
      B(i - 1, j - 1) = C(-L, R(0));
    }
  return {std::move(A), std::move(B)};
}

DenseComplexMatrix to_dense(const Mat<Complex>& m) {
  DenseComplexMatrix d(m.n);
  d.a = m.a;
  return d;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> cheb(int N) { return cheb_impl<double>(N); }

std::pair<DenseComplexMatrix, DenseComplexMatrix> os_matrices(const ProblemParams& p, int N) {
  const auto [A, B] = os_pair<Complex>(p, N);
  return {to_dense(A), to_dense(B)};
}

Complex lambda_from_tilde(Complex lt, const ProblemParams& p) { return Complex(0, p.epsilon) * (p.alpha * p.alpha - lt); }

Complex tilde_from_lambda(Complex lambda, const ProblemParams& p) {
  return p.alpha * p.alpha - lambda / Complex(0, p.epsilon);
}

namespace {

template <class R>
R real_sinh(R x);
template <>
double real_sinh(double x) { return std::sinh(x); }
template <>
__float128 real_sinh(__float128 x) { return sinhq(x); }

template <class C>
Mat<C> constrained_impl(const ProblemParams& p, int n) {
  using R = typename Arith<C>::R;
  if (n < 3) throw DomainError("constrained_model_os: n must be >= 3");
  const R h = R(2) / R(n + 1), alpha = R(p.alpha);
  const C off = C(R(0), R(p.epsilon) / (h * h));
  auto xs = [h](int i) { return R(-1) + R(i) * h; };
  // Conditions sum_i tau_i g(x_i) w_i = 0 with g1 = sh[alpha(1 - t)], g2 = sh[alpha(1 + t)];
  // g1 vanishes at t = 1 and g2 at t = -1, so each fixes one boundary value:
  // w_0 = sum c0 w, w_{n+1} = sum c1 w.
  const R end_weight = real_sinh(R(2) * alpha) * h / R(2);
  Mat<C> A(n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = C(xs(i + 1)) - C(R(2)) * off;
    if (i > 0) A(i, i - 1) = off;
    if (i + 1 < n) A(i, i + 1) = off;
  }
  for (int j = 0; j < n; ++j) {
    const R c0 = -h * real_sinh(alpha * (R(1) - xs(j + 1))) / end_weight;
    const R c1 = -h * real_sinh(alpha * (R(1) + xs(j + 1))) / end_weight;
    A(0, j) += off * C(c0);
    A(n - 1, j) += off * C(c1);
  }
  return A;
}

}  // namespace

DenseComplexMatrix constrained_model_os(const ProblemParams& p, int n) {
  return to_dense(constrained_impl<Complex>(p, n));
}

DiscretizationResult solve_model_fd(const ProblemParams& p, int n) {
  return {eig_dense(model_matrix(p, n).a), n, Scheme::fd_model, {}};
}

DiscretizationResult solve_os_colloc(const ProblemParams& p, int N, Arithmetic arith) {
  std::vector<Complex> mu;
  if (arith == Arithmetic::binary128) {
    auto [A, B] = os_pair<Cq>(p, N);
    mu = generalized(std::move(A), std::move(B));
  } else {
    auto [A, B] = os_pair<Complex>(p, N);
    mu = generalized(std::move(A), std::move(B));
  }
  for (auto& z : mu) z = lambda_from_tilde(z, p);
  return {mu, N, Scheme::colloc_os, {}};
}

DiscretizationResult solve_os_constrained(const ProblemParams& p, int n, Arithmetic arith) {
  return {arith == Arithmetic::binary128 ? hessenberg_qr(constrained_impl<Cq>(p, n), false)
                                         : eig_dense(constrained_model_os(p, n)), n, Scheme::constrained_model_os, {}};
}

namespace {

int nearest_index(const std::vector<Complex>& v, Complex z, double& dist) {
  int best = -1;
  dist = INFINITY;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = std::abs(v[i] - z);
    if (d < dist) {
      dist = d;
      best = int(i);
    }
  }
  return best;
}

void check_pair(const DiscretizationResult& coarse, const DiscretizationResult& fine) {
  if (coarse.scheme != fine.scheme) throw DomainError("filter_spurious: scheme mismatch");
  if (fine.grid_size <= coarse.grid_size) throw DomainError("filter_spurious: fine grid must be larger");
}

}  // namespace

DiscretizationResult filter_spurious(const DiscretizationResult& coarse, const DiscretizationResult& fine, double tol) {
  check_pair(coarse, fine);
  DiscretizationResult out = fine;
  out.resolved.assign(fine.eigenvalues.size(), false);
  for (std::size_t i = 0; i < fine.eigenvalues.size(); ++i) {
    double d;
    nearest_index(coarse.eigenvalues, fine.eigenvalues[i], d);
    out.resolved[i] = d <= tol;
  }
  return out;
}

DiscretizationResult richardson_extrapolate(const DiscretizationResult& coarse, const DiscretizationResult& fine,
                                            double tol) {
  check_pair(coarse, fine);
  const double hc = 2.0 / (coarse.grid_size + 1), hf = 2.0 / (fine.grid_size + 1);
  const double wc = hc * hc, wf = hf * hf;
  DiscretizationResult out = fine;
  out.resolved.assign(fine.eigenvalues.size(), false);
  for (std::size_t i = 0; i < fine.eigenvalues.size(); ++i) {
    double d;
    const int j = nearest_index(coarse.eigenvalues, fine.eigenvalues[i], d);
    if (j < 0 || d > tol) continue;
    out.eigenvalues[i] = (wc * fine.eigenvalues[i] - wf * coarse.eigenvalues[j]) / (wc - wf);
    out.resolved[i] = true;
  }
  return out;
}

}  // namespace spectraltie
