#pragma once

// Complex root location shared by the determinant modules.

#include <functional>
#include <optional>
#include <vector>

#include "spectraltie/types.hpp"

namespace spectraltie {

// A determinant value together with the log-magnitude of its largest term.
// normalized() is the cancellation ratio |det| / max|term|.
struct DetValue {
  ScaledComplex value;
  double log_ref = 0.0;

  double normalized() const { return std::exp(value.log_abs() - log_ref); }
};

using DetFn = std::function<DetValue(Complex)>;

// Wraps a plain analytic function; normalized() is then |f|.
DetFn plain_det(std::function<Complex(Complex)> f);

struct SearchRectangle {
  Complex lower_left;
  Complex upper_right;
  int nx = 2;
  int ny = 2;

  void validate() const;
  double width() const { return upper_right.real() - lower_left.real(); }
  double height() const { return upper_right.imag() - lower_left.imag(); }
  Complex node(int i, int j) const;
  bool contains(Complex z) const;
};

class RootOnBoundaryError : public Error {
 public:
  using Error::Error;
};

// Strict interior local minima of fn's normalized magnitude on the nx-by-ny
// node grid that sit at least a factor 10 below the grid median.
std::vector<Complex> grid_scan_minima(const DetFn& fn, const SearchRectangle& rect);

// Winding number of fn around the rectangle boundary. Edges start with
// samples_per_edge points and are bisected until every phase step is < pi/2.
// A root on (or numerically at) the boundary triggers up to three retries on
// slightly enlarged rectangles, then RootOnBoundaryError.
int argument_count(const DetFn& fn, const SearchRectangle& rect, int samples_per_edge = 64);

enum class DerivativeRule { central, complex_step };

// f'(z) for analytic f. central: real step h; complex_step: step i h.
ScaledComplex numeric_derivative(const DetFn& fn, Complex z, DerivativeRule rule = DerivativeRule::central,
                                 double h = 0.0);

struct NewtonResult {
  Complex root;
  double residual;  // normalized magnitude at the root
  int iterations;
};

// Newton with central-difference derivative (h = 1e-6 max(1,|z|)) until the
// step is <= tol. Throws ConvergenceError (carrying the last iterate) on
// escape beyond trust_radius from the seed or after max_iter steps.
NewtonResult newton_complex(const DetFn& fn, Complex seed, double tol = 1e-12, int max_iter = 60,
                            double trust_radius = 1.0, DerivativeRule rule = DerivativeRule::central);

struct LocateOptions {
  double tol = 1e-12;
  int max_iter = 60;
  double trust_radius = 1.0;
  double merge_distance = 1e-8;     // refined roots closer than this are one root
  double max_residual = 1e-6;       // reject converged points with larger normalized residual
  std::optional<SearchRectangle> keep_inside;  // drop roots outside this box
};

// Refines every seed (in parallel), drops failures, merges duplicates and
// returns roots ordered by (Im, Re).
std::vector<NewtonResult> locate_roots(const DetFn& fn, const std::vector<Complex>& seeds,
                                       const LocateOptions& opt = {});

// Quadtree completion: wherever the winding number of a box exceeds the
// number of known roots inside it, the box is split (down to min_size) and
// Newton is seeded from the centre of each deficient leaf. Returns the merged,
// ordered root list. Boxes are split off-centre so that symmetric root sets
// do not land on the cuts.
std::vector<NewtonResult> complete_roots(const DetFn& fn, const SearchRectangle& rect,
                                         std::vector<NewtonResult> known, const LocateOptions& opt = {},
                                         double min_size = 1e-3, int samples_per_edge = 64);

// Orders complex values by (Im, Re).
bool im_re_less(Complex a, Complex b);

}  // namespace spectraltie
