#pragma once

#include "skeintrace/qtorus.hpp"

#include <cstdlib>
#include <random>
#include <string>

namespace testsupport {

inline unsigned seed() {
  if (const char *s = std::getenv("SKEINTRACE_SEED"))
    return static_cast<unsigned>(std::stoul(s));
  return 20240611u;
}

inline std::mt19937 &rng() {
  static std::mt19937 g(seed());
  return g;
}

inline int uniform(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng());
}

inline skeintrace::Scalar random_scalar(int terms = 2) {
  using namespace skeintrace;
  static auto ids = tet_angle_symbols("rnd");
  Scalar s;
  for (int i = 0; i < terms; ++i) {
    Scalar t(uniform(-3, 3));
    if (uniform(0, 1))
      t *= Scalar::zeta();
    t *= Scalar::A(Rat(uniform(-6, 6), 4));
    if (uniform(0, 3) == 0)
      t *= Scalar::Ct(uniform(-2, 2)) * Scalar::Cb(uniform(-2, 2));
    if (uniform(0, 2) == 0)
      t *= Scalar::q_angle(AngleForm::symbol(ids[uniform(0, 2)], Rat(uniform(-2, 2), 2)));
    s += t;
  }
  return s;
}

inline skeintrace::TorusElem random_elem(const skeintrace::TorusPtr &t,
                                         int terms = 3, int range = 2) {
  using namespace skeintrace;
  TorusElem e(t);
  for (int i = 0; i < terms; ++i) {
    Vec g(t->rank());
    for (auto &x : g)
      x = uniform(-range, range);
    e.add_term(g, random_scalar(1));
  }
  return e;
}

} // namespace testsupport
