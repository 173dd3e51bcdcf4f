#pragma once

// Model problem -i eps y'' = (x - lambda) y, y(+-1) = 0.

#include "spectraltie/rootfind.hpp"
#include "spectraltie/scalar_maps.hpp"
#include "spectraltie/spectrum_types.hpp"

namespace spectraltie {

// v(xi1) v(w' xi2) - v(w' xi1) v(xi2), w' = e^{-2 pi i/3},
// xi1,2 = eps^{-1/3} e^{i pi/6} (-+1 - lambda). log_ref is the larger term.
DetValue model_det(Complex lambda, const ProblemParams& p);
DetFn model_det_fn(const ProblemParams& p);

// Smallest k whose quantized level pi k sqrt(eps) reaches f at the node.
int ray_k_min(const ProblemParams& p);
// Smallest k whose ray point lies inside D_eps (level >= f(d_eps)).
int ray_k_min_in_D(const ProblemParams& p);

// rho_k from f(-i rho) = pi k sqrt(eps); lambda_k = -i rho_k.
EigenList ray_eigenvalues(const ProblemParams& p, int k_min, int k_max);

// Upper end 2/sqrt3 - eps^{1/2} ln eps^{-theta} of the segment window in t.
double segment_window_end(const ProblemParams& p);

// lambda_k = e^{-i pi/6} eps^{1/3} x_k - 1 and mirror images, x_k the zeros
// of v(-x), for t_k inside the window. Left segment first, each by k.
std::vector<Eigenvalue> segment_eigenvalues(const ProblemParams& p);

// (eps^{-1/2}/pi)(2/3)|-+1 - lambda|^{3/2}, counted from the outer endpoint.
double counting_segment(Complex lambda, const ProblemParams& p);
// eps^{-1/2} f(-i mu) / pi for lambda = -i mu, mu >= 1/sqrt3.
double counting_ray(Complex lambda, const ProblemParams& p);
// Count in the disc of radius delta about the node: the fixed-delta formula.
double counting_node(double delta, const ProblemParams& p);
// Shrinking disc delta = eps^{1/2} ln eps^{-theta}: (2^{1/2} 3^{3/4}/pi) ln eps^{-theta}.
double counting_node_shrinking(const ProblemParams& p);
inline const double kNodeConstant = std::sqrt(2.0) * std::pow(3.0, 0.75) / kPi;

Eigenvalue refine_root(Complex seed, const DetFn& det, double tol, double trust_radius = 1.0);

struct ModelRootOptions {
  SearchRectangle window{{-1.1, -5.0}, {1.1, 0.1}, 221, 511};
  double tol = 1e-12;
};

// Exact-determinant roots in the window: seeds from the ray and segment
// predictions plus a grid scan of the normalized determinant, then a
// winding-number completion pass.
std::vector<Eigenvalue> model_exact_roots(const ProblemParams& p, const ModelRootOptions& opt = {});

}  // namespace spectraltie
