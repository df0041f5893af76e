// Walks through the main entry points on the 3-point space
// {0, a, b} with d(a,0) = 2, d(b,0) = 1, d(a,b) = 2.
#include <iostream>

#include "lipfree/lipfree.hpp"

int main() {
  using namespace lipfree;
  const auto space = FiniteMetricSpace::from_raw(
      RawSpace{{"0", "a", "b"}, "0", {{0, 2, 1}, {2, 0, 2}, {1, 2, 0}}});
  const std::size_t o = 0, a = 1, b = 2;

  const auto bad = make_system(space, {{a, o}, {o, b}}, {Rational{1, 2}, Rational{1, 2}});
  const auto cert = free_norm(space, to_point_masses(space, bad));
  std::cout << "norm of 1/2 m(a,0) + 1/2 m(0,b): " << to_string(cert.value) << '\n';
  std::cout << "attains: " << std::boolalpha << attains(space, bad) << '\n';

  const auto single = make_system(space, {{a, o}}, {Rational{1}});
  const auto verdict = decide(space, single);
  std::cout << "m(a,0) is a point of differentiability: "
            << (verdict.kind == DiffKind::Frechet) << '\n';
  if (const auto* u = std::get_if<Uncovered>(&verdict.failure)) {
    std::cout << "uncovered point: " << space.label(u->point) << '\n';
  }
}
