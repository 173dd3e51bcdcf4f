#include <doctest.h>

#include "spectraltie/model_spectrum.hpp"
#include "spectraltie/validate.hpp"

using namespace spectraltie;

TEST_CASE("match_sets") {
  const std::vector<Complex> a{0, 1, Complex(0, 2)}, b{Complex(1.05, 0), Complex(0.01, 0)};
  auto m = match_sets(a, b, 0.1);
  CHECK(m.pairs == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}});
  CHECK(m.unmatched_a == std::vector<int>{2});
  CHECK(m.unmatched_b.empty());
  CHECK_FALSE(m.bijective());
  CHECK(m.max_distance == doctest::Approx(0.05));
  // Closest pair wins; each point is used once.
  m = match_sets({0}, {Complex(0.02), Complex(0.01)}, 0.1);
  CHECK(m.pairs == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(match_sets({}, {}, 0).bijective());
  CHECK_THROWS_AS(match_sets(a, b, -1), DomainError);
  CHECK(nearest_distance({}, 0) == INFINITY);
}

TEST_CASE("classify_tie") {
  const auto p = ProblemParams::from_epsilon(1e-3);
  const double cut = segment_window_end(p);
  CHECK(classify_tie(kNode, p, 0.05, cut) == TieComponent::node);
  CHECK(classify_tie(segment_point(0.5, 0.01), p, 0.05, cut) == TieComponent::left);
  CHECK(classify_tie(-std::conj(segment_point(0.5, -0.01)), p, 0.05, cut) == TieComponent::right);
  CHECK(classify_tie(Complex(0.01, -2), p, 0.05, cut) == TieComponent::ray);
  CHECK(classify_tie(Complex(0.5, -2), p, 0.05, cut) == TieComponent::off);
  CHECK(classify_tie(Complex(0, 0.5), p, 0.05, cut) == TieComponent::off);
}

TEST_CASE("model counts per tie component") {
  for (double eps : {1e-3, 1.0 / 3000}) {
    const auto p = ProblemParams::from_epsilon(eps);
    ModelRootOptions o;
    o.window = {{-1.1, -3.0}, {1.1, 0.1}, 221, 311};
    std::vector<Complex> z;
    for (const auto& e : model_exact_roots(p, o)) z.push_back(e.value);
    for (const auto& c : model_count_report(z, p, 3.0)) {
      INFO(eps, " ", c.component, " predicted ", c.predicted, " actual ", c.actual);
      CHECK(std::abs(c.difference()) <= 3);
    }
  }
}

TEST_CASE("node disc count at eps = 1e-4") {
  const auto p = ProblemParams::from_epsilon(1e-4);
  const double delta = node_offset(p.epsilon, p.theta);
  ModelRootOptions o;
  o.window = {kNode - Complex(delta, delta) * 1.5, kNode + Complex(delta, delta) * 1.5, 61, 61};
  std::vector<Complex> z;
  for (const auto& e : model_exact_roots(p, o)) z.push_back(e.value);
  const auto report = model_count_report(z, p, 0.0);
  const auto& node = report.back();
  REQUIRE(node.component == "node");
  CHECK(node.predicted == doctest::Approx(2.835).epsilon(1e-3));
  CHECK(std::abs(node.difference()) <= 4);
}
