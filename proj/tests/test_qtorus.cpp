#include "doctest.h"
#include "skeintrace/errors.hpp"
#include "skeintrace/qtorus.hpp"
#include "support.hpp"

#include <algorithm>

using namespace skeintrace;

namespace {

TorusPtr three_cycle(int m, int s) {
  // x0 x1 = c x1 x0 and cyclic
  std::vector<std::vector<int>> M = {{0, m, -m}, {-m, 0, m}, {m, -m, 0}};
  std::vector<std::vector<int>> S = {{0, s, -s}, {-s, 0, s}, {s, -s, 0}};
  return QuantumTorus::make({"x", "y", "w"}, M, S);
}

// brute-force reordering oracle: ordered product divided by omega factors
TorusElem ordered(const TorusPtr &t, const std::vector<Vec> &gs) {
  TorusElem r = TorusElem::one(t);
  for (const auto &g : gs)
    r = r * TorusElem::monomial(t, g);
  return r;
}

} // namespace

TEST_CASE("monomials") {
  auto t = three_cycle(2, 0);
  CHECK(TorusElem::monomial(t, {0, 0, 0}) == TorusElem::one(t));
  auto x = TorusElem::gen(t, "x");
  CHECK((x * x.pow(-1)) == TorusElem::one(t));
  CHECK_THROWS_AS(TorusElem::monomial(t, {1, 0}), RankMismatch);
  auto qx = TorusElem::monomial(t, {-1, 0, 0}, Scalar::q());
  CHECK(qx.coeff({-1, 0, 0}) == Scalar::q());
}

TEST_CASE("product law") {
  auto t = QuantumTorus::make({"a", "b"}, {{0, 2}, {-2, 0}}, {{0, 0}, {0, 0}});
  auto ab = TorusElem::gen(t, "a") * TorusElem::gen(t, "b");
  CHECK(ab == TorusElem::monomial(t, {1, 1}, Scalar::A()));
  // gl1 triangle: alpha beta = (-A) beta alpha
  auto g = three_cycle(1, 1);
  auto al = TorusElem::gen(g, "x"), be = TorusElem::gen(g, "y");
  CHECK(al * be == be * al * (-Scalar::A()));
  CHECK(al * be == TorusElem::monomial(g, {1, 1, 0}, Scalar::zeta() * Scalar::A(Rat(1, 2))));
}

TEST_CASE("weyl ordering") {
  auto t = three_cycle(4, 2); // xx' = q^2 x'x
  auto w = TorusElem::weyl(t, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  auto prod = ordered(t, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(w == prod * Scalar::q(-1));
  CHECK(TorusElem::weyl(t, {{1, 0, 0}}) == TorusElem::gen(t, "x"));
}

TEST_CASE("weyl permutation invariance, exhaustive to length 4") {
  for (auto t : {three_cycle(2, 1), three_cycle(1, 1), three_cycle(4, 2)}) {
    for (int len = 1; len <= 4; ++len) {
      std::vector<Vec> gs;
      for (int i = 0; i < len; ++i)
        gs.push_back({testsupport::uniform(-2, 2), testsupport::uniform(-2, 2),
                      testsupport::uniform(-2, 2)});
      auto ref = TorusElem::weyl(t, gs);
      std::vector<int> idx(len);
      for (int i = 0; i < len; ++i)
        idx[i] = i;
      do {
        std::vector<Vec> perm;
        for (int i : idx)
          perm.push_back(gs[i]);
        CHECK(TorusElem::weyl(t, perm) == ref);
        // oracle: the ordered product times the inverse omega chain
        Scalar corr(1);
        Vec pre(3, 0);
        for (const auto &g : perm) {
          corr *= t->omega(pre, g);
          pre = vadd(pre, g);
        }
        CHECK(ordered(t, perm) == ref * corr);
      } while (std::next_permutation(idx.begin(), idx.end()));
    }
  }
}

TEST_CASE("associativity and commutation") {
  for (auto t : {three_cycle(2, 1), three_cycle(1, 1), three_cycle(-1, 3)}) {
    for (int i = 0; i < 200; ++i) {
      auto a = testsupport::random_elem(t), b = testsupport::random_elem(t),
           c = testsupport::random_elem(t);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * TorusElem::one(t) == a);
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        auto gi = TorusElem::monomial(t, unit_vec(3, i)),
             gj = TorusElem::monomial(t, unit_vec(3, j));
        CHECK(gi * gj == gj * gi * t->commutation(unit_vec(3, i), unit_vec(3, j)));
      }
  }
}

TEST_CASE("tensor") {
  auto a = three_cycle(2, 1);
  auto t = QuantumTorus::tensor({a, a}, {"S", "T"});
  CHECK(t->rank() == 6);
  CHECK(t->name(3) == "T.x");
  CHECK(t->commutes(unit_vec(6, 0), unit_vec(6, 4)));
  CHECK(QuantumTorus::tensor({})->rank() == 0);
}

TEST_CASE("reduce_mod") {
  auto t = three_cycle(4, 2);
  MonomialRelation vert{{1, 1, 1}, Scalar::q(Rat(1, 2)), Side::Central};
  CHECK(t->commutes({1, 1, 1}, {1, 0, 0}));
  Reducer red(t, {vert});
  CHECK(red.reduce(TorusElem::monomial(t, {1, 1, 1})) ==
        TorusElem::constant(t, Scalar::q(Rat(1, 2))));
  CHECK(red.reduce(TorusElem::one(t)) == TorusElem::one(t));
  for (int i = 0; i < 50; ++i) {
    auto e = testsupport::random_elem(t);
    auto r = red.reduce(e);
    CHECK(red.reduce(r) == r);
    // central relation: reduce(a r) = reduce(a) s
    CHECK(red.reduce(e * TorusElem::monomial(t, {1, 1, 1})) ==
          r * Scalar::q(Rat(1, 2)));
  }
  CHECK_THROWS_AS(Reducer(t, {vert, {{2, 2, 2}, Scalar(1), Side::Central}}),
                  DependentRelations);
}

TEST_CASE("reduce_mod over a 3-relation lattice") {
  auto t = QuantumTorus::tensor({three_cycle(2, 1), three_cycle(2, 1)}, {"P", "Q"});
  // commuting relations: both centers and a product of commuting pieces
  std::vector<MonomialRelation> rels = {
      {{1, 1, 1, 0, 0, 0}, Scalar(-1), Side::Central},
      {{0, 0, 0, 1, 1, 1}, Scalar::q(), Side::Central},
  };
  auto probe = rels;
  probe.push_back({{1, 0, 0, 0, 0, 0}, Scalar::Ct(2), Side::Right});
  probe.push_back({{0, 1, 0, 0, 0, 0}, Scalar(1), Side::Right});
  CHECK_THROWS_AS(Reducer(t, probe), NonCommutingRelations);
  rels.push_back({{0, 0, 0, 2, 2, 2}, Scalar::q(2), Side::Right});
  CHECK_THROWS_AS(Reducer(t, rels), DependentRelations);
  auto [kept, dropped] = Reducer::independent_subset(t, rels);
  CHECK(kept.size() == 2);
  CHECK(dropped == std::vector<int>{2});
  rels.back() = {{0, 0, 0, 2, 2, 2}, Scalar::q(3), Side::Right};
  CHECK_THROWS_AS(Reducer::independent_subset(t, rels), DependentRelations);
  Reducer red(t, kept);
  for (int i = 0; i < 50; ++i) {
    auto e = testsupport::random_elem(t);
    CHECK(red.reduce(red.reduce(e)) == red.reduce(e));
  }
}

TEST_CASE("torus homomorphism") {
  auto t = three_cycle(2, 1);
  auto id = TorusHom(t, t, {TorusElem::gen(t, "x"), TorusElem::gen(t, "y"),
                            TorusElem::gen(t, "w")});
  for (int i = 0; i < 20; ++i) {
    auto e = testsupport::random_elem(t);
    CHECK(id(e) == e);
  }
  CHECK_THROWS_AS(TorusHom(t, t, {TorusElem::gen(t, "y"), TorusElem::gen(t, "x"),
                                  TorusElem::gen(t, "w")}),
                  ConstraintViolation);
}
