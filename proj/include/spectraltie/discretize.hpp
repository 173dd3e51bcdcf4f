#pragma once

// Matrix discretizations of both eigenproblems and a dense complex eigensolver.

#include <utility>
#include <vector>

#include "spectraltie/os_spectrum.hpp"
#include "spectraltie/scalar_maps.hpp"

namespace spectraltie {

struct DenseComplexMatrix {
  int n = 0;
  std::vector<Complex> a;  // row-major

  DenseComplexMatrix() = default;
  explicit DenseComplexMatrix(int n_) : n(n_), a(std::size_t(n_) * n_) {
    if (n_ < 1) throw DomainError("matrix: n must be >= 1");
  }
  static DenseComplexMatrix identity(int n);

  Complex& operator()(int i, int j) { return a[std::size_t(i) * n + j]; }
  Complex operator()(int i, int j) const { return a[std::size_t(i) * n + j]; }

  void validate() const;  // throws DomainError on non-finite entries
  double norm1() const;
  bool is_tridiagonal() const;
  bool is_symmetric() const;  // A = A^T (no conjugation)
};

DenseComplexMatrix operator*(const DenseComplexMatrix& x, const DenseComplexMatrix& y);

class EigenConvergenceError : public Error {
 public:
  EigenConvergenceError(const std::string& what, std::vector<Complex> converged)
      : Error(what), converged_(std::move(converged)) {}
  const std::vector<Complex>& converged() const { return converged_; }

 private:
  std::vector<Complex> converged_;
};

// Working arithmetic of the eigensolver. Eigenvalues near the junction of
// the tie set are so ill-conditioned that binary64 rounding moves them by
// more than the discretization error.
enum class Arithmetic { binary64, binary128 };
const char* to_string(Arithmetic a);

// All eigenvalues. Balancing, Householder reduction to Hessenberg form and
// single-shift complex QR with deflation. Complex-symmetric tridiagonal input
// goes through an implicit QL iteration in binary128 instead (O(n^2)); if
// that breaks down the general path is used.
std::vector<Complex> eig_dense(const DenseComplexMatrix& A, Arithmetic arith = Arithmetic::binary64);
// The general path only, for testing the fast path against it.
std::vector<Complex> eig_dense_general(const DenseComplexMatrix& A, Arithmetic arith = Arithmetic::binary64);

// A y = mu B y via B^{-1} A. Throws DomainError when B is singular to
// working precision.
std::vector<Complex> eig_generalized(const DenseComplexMatrix& A, const DenseComplexMatrix& B,
                                     Arithmetic arith = Arithmetic::binary64);

// ||A x - lambda x|| / (||A|| ||x||) for x from two steps of inverse iteration.
double ritz_backward_error(const DenseComplexMatrix& A, Complex lambda);

// Smallest singular value estimate via inverse iteration on B^* B.
double smallest_singular_value(const DenseComplexMatrix& B);

enum class Scheme { fd_model, colloc_os, constrained_model_os };
const char* to_string(Scheme s);

struct DiscretizationResult {
  std::vector<Complex> eigenvalues;  // lambda form
  int grid_size = 0;
  Scheme scheme = Scheme::fd_model;
  std::vector<bool> resolved;  // set by filter_spurious only
};

struct ModelMatrix {
  DenseComplexMatrix a;
  bool under_resolved = false;  // h > eps^{1/3}/10
};

// i eps D2 + diag(x) on the n interior points x_i = -1 + i h, h = 2/(n+1).
ModelMatrix model_matrix(const ProblemParams& p, int n);

// Chebyshev differentiation matrix on N+1 points x_j = cos(pi j/N).
std::pair<std::vector<double>, std::vector<double>> cheb(int N);

// Clamped-collocation pair for A y = lt B y on the N-1 interior Chebyshev
// points: A = L^2 - i alpha R X L, B = -L, L = D^2 - alpha^2.
std::pair<DenseComplexMatrix, DenseComplexMatrix> os_matrices(const ProblemParams& p, int N);

// -i eps w'' = (x - lambda) w on n interior points with the two integral
// conditions int sh[alpha(1 -+ t)] w dt = 0 (trapezoid weights) replacing
// Dirichlet values; the boundary unknowns are eliminated.
DenseComplexMatrix constrained_model_os(const ProblemParams& p, int n);

DiscretizationResult solve_model_fd(const ProblemParams& p, int n);
DiscretizationResult solve_os_colloc(const ProblemParams& p, int N, Arithmetic arith = Arithmetic::binary128);
DiscretizationResult solve_os_constrained(const ProblemParams& p, int n, Arithmetic arith = Arithmetic::binary64);

// Marks resolved exactly those fine eigenvalues with a coarse partner within tol.
DiscretizationResult filter_spurious(const DiscretizationResult& coarse, const DiscretizationResult& fine, double tol);

// Second-order extrapolation of matched pairs (h^2 error law, h = 2/(n+1)):
// for each resolved fine eigenvalue with nearest coarse partner within tol,
// (h_c^2 l_f - h_f^2 l_c)/(h_c^2 - h_f^2). Unmatched values are copied and
// left unresolved.
DiscretizationResult richardson_extrapolate(const DiscretizationResult& coarse, const DiscretizationResult& fine,
                                            double tol);

}  // namespace spectraltie
