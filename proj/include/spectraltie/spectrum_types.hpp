#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spectraltie/types.hpp"

namespace spectraltie {

enum class Method { exact_det, asymptotic, oracle };
const char* to_string(Method m);

enum class Side { plus, minus };
const char* to_string(Side s);

// A point on one of the limit curves, in the segment frame and in the plane.
struct CurveSample {
  double t = 0;
  double gamma = 0;
  Complex lambda;
  Side side = Side::plus;
};

struct Eigenvalue {
  Complex value;
  int index = -1;  // k for predictions; -1 when not tied to an index
  Method method = Method::exact_det;
  double residual = 0;
  std::optional<CurveSample> curve;  // OS segment predictions only
};

struct IndexError {
  int k;
  std::string message;
};

// Per-index computations report failures alongside the successes.
struct EigenList {
  std::vector<Eigenvalue> values;
  std::vector<IndexError> errors;
};

}  // namespace spectraltie
