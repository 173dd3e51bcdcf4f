#pragma once

// Matching of root sets between routes and the count reports built on it.

#include <vector>

#include <string>

#include "spectraltie/scalar_maps.hpp"

namespace spectraltie {

struct MatchResult {
  std::vector<std::pair<int, int>> pairs;  // (index in a, index in b)
  std::vector<int> unmatched_a;
  std::vector<int> unmatched_b;
  double max_distance = 0;  // over the pairs

  bool bijective() const { return unmatched_a.empty() && unmatched_b.empty(); }
};

// One-to-one matching within tol, closest pairs first.
MatchResult match_sets(const std::vector<Complex>& a, const std::vector<Complex>& b, double tol);

// Distance from z to the nearest element of v (infinity when v is empty).
double nearest_distance(const std::vector<Complex>& v, Complex z);

enum class TieComponent { left, right, ray, node, off };
const char* to_string(TieComponent c);

// Node disc of radius eps^{1/2} ln eps^{-theta} first, then within band of a
// segment (0 < t <= cut) or of the ray below the disc; otherwise off.
TieComponent classify_tie(Complex z, const ProblemParams& p, double band, double cut);

struct ComponentCount {
  std::string component;
  double predicted = 0;
  int actual = 0;
  double difference() const { return actual - predicted; }
};

// Model problem: each segment up to t = 2/sqrt3 - eps^{1/2} ln eps^{-theta},
// the ray from the node disc down to Im lambda = -depth, and the node disc.
std::vector<ComponentCount> model_count_report(const std::vector<Complex>& roots, const ProblemParams& p,
                                               double depth);

// Orr-Sommerfeld problem: each side of each segment over the curve window
// (half the model count each) plus the ray and the node disc as above.
std::vector<ComponentCount> os_count_report(const std::vector<Complex>& roots, const ProblemParams& p, double depth);

// One cross-route comparison: pass flag, worst mismatch over the checked
// items and a one-line diagnosis.
struct RegimeCheck {
  std::string name;
  bool pass = false;
  double worst = 0;
  int checked = 0;
  std::string detail;
};

// Ray predictions k0+1..k0+count each within 5 eps of a determinant root.
RegimeCheck check_model_ray(const ProblemParams& p, const std::vector<Complex>& det, int count = 20);

// Segment predictions with t in the middle half of the window within 1e-6.
RegimeCheck check_model_segment(const ProblemParams& p, const std::vector<Complex>& det);

// Bijection within tol between resolved oracle values and determinant roots
// inside window. Points within tol of the window edge may stay unmatched.
RegimeCheck check_oracle(const std::vector<Complex>& oracle, const std::vector<Complex>& det, double tol,
                         Complex lower_left, Complex upper_right);

// Two-sided splitting: roots near the segment on the middle half of the
// curve window lie on both sides, each with |gamma| within a factor band of
// the predicted |gamma(t)| and farther than 0.3 |gamma(t)| from the segment;
// each curve prediction has a root on its side with |dt| <= 3 eps^{1/2}.
RegimeCheck check_os_splitting(const ProblemParams& p, const std::vector<Complex>& det, double band = 2.0);

// Ray predictions for count consecutive k from the first index inside D_eps
// within 5 eps of a determinant root; at most two unmatched roots on that
// stretch of the ray.
RegimeCheck check_os_ray(const ProblemParams& p, const std::vector<Complex>& det, int count = 10);

}  // namespace spectraltie
