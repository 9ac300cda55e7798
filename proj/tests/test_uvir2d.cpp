#include "doctest.h"
#include "skeintrace/errors.hpp"
#include "skeintrace/uvir2d.hpp"
#include "support.hpp"
#include "surfaces.hpp"

using namespace skeintrace;
using testsupport::hexagon_fan;
using testsupport::random_presentation;
using testsupport::uniform;

namespace {

StatedWord w(const std::string &s) { return StatedWord::parse(s); }

StatedWord random_word(int max_len) {
  StatedWord r;
  int n = uniform(0, max_len);
  for (int i = 0; i < n; ++i)
    r.tokens.push_back(token(uniform(0, 2), uniform(0, 1), uniform(0, 1) ? 1 : -1,
                             uniform(0, 1) ? 1 : -1));
  return r;
}

SurfaceTri single() { return SurfaceTri::build({{"T", {"a", "b", "c"}}}); }

// Lift of an endpoint read off the state/sheet dictionary: outgoing + and
// incoming - sit on the unstarred lift, the other two on the starred one.
bool dictionary_star(bool out, int state) { return out ? state < 0 : state > 0; }

Vec dictionary_vector(const Strand2D &t) {
  auto s = single();
  auto [e1, e2] = corner_slots(t.corner);
  int from = t.forward ? e1 : e2, to = t.forward ? e2 : e1;
  int sf = t.forward ? t.states[0].value : t.states[1].value;
  int st = t.forward ? t.states[1].value : t.states[0].value;
  const auto &edges = s.triangles()[0].edges;
  return lift_vector(s, {0, edges[from], dictionary_star(true, sf), edges[to],
                         dictionary_star(false, st)});
}

TorusElem ev_mono(std::vector<int> g, const Scalar &c = 1) {
  return TorusElem::monomial(ev_target_torus(), g, c);
}

} // namespace

TEST_CASE("hexagon torus") {
  CHECK(Scalar::zeta().pow(2) == Scalar(-1));
  auto h = hexagon_torus();
  CHECK(h->rank() == 6);
  auto g = [&](int i) { return TorusElem::monomial(h, unit_vec(6, i)); };
  // cyclic q-relations
  for (int i = 0; i < 6; ++i) {
    int j = (i + 1) % 6;
    CHECK(g(i) * g(j) == g(j) * g(i) * Scalar::q());
  }
  // alpha1 gamma1 = - gamma1 alpha1 and the other sign pairs
  for (auto [i, j] : {std::pair{0, 2}, {2, 4}, {4, 0}, {1, 3}, {3, 5}, {5, 1}})
    CHECK(g(i) * g(j) == -(g(j) * g(i)));
  for (int i = 0; i < 3; ++i)
    CHECK(g(i) * g(i + 3) == g(i + 3) * g(i));
  auto ordered = TorusElem::one(h);
  for (int i = 0; i < 6; ++i)
    ordered *= g(i);
  CHECK(ordered == TorusElem::monomial(h, Vec(6, 1), Scalar::q(2)));
  auto c = hexagon_central();
  CHECK(c.scalar == Scalar(-1));
  for (int i = 0; i < 6; ++i)
    CHECK(h->commutes(c.vector, unit_vec(6, i)));
  CHECK(hexagon_torus(true)->m(0, 1) == -2);
}

TEST_CASE("gl1 triangle torus") {
  auto t = gl1_triangle_torus();
  auto a = TorusElem::gen(t, "alpha"), b = TorusElem::gen(t, "beta"),
       c = TorusElem::gen(t, "gamma");
  CHECK(a * b == b * a * (-Scalar::A()));
  CHECK(b * c == c * b * (-Scalar::A()));
  CHECK(c * a == a * c * (-Scalar::A()));
  CHECK(t->commutes(gl1_central().vector, {1, 0, 0}));
}

TEST_CASE("stated words") {
  auto x = w("->alpha-+ <-beta++ ->gamma--");
  CHECK(x.tokens.size() == 3);
  CHECK(StatedWord::parse(x.str()).str() == x.str());
  CHECK(x.tokens[1].corner == Beta);
  CHECK_FALSE(x.tokens[1].forward);
  CHECK_THROWS_AS(w("=>alpha++"), ParseError);
  CHECK_THROWS_AS(w("->delta++"), ParseError);
  CHECK_THROWS_AS(w("->alpha+0"), ParseError);
  StatedWord v;
  v.tokens.push_back({"", Alpha, true, {EndState{0, "s"}, EndState{1, ""}}});
  CHECK_THROWS_AS(b_of(v), UnresolvedState);
  CHECK_THROWS_AS(f_triangle(v), UnresolvedState);
}

TEST_CASE("b on simple words") {
  CHECK(b_of(StatedWord{}) == Rat(0));
  CHECK(b_of(w("->alpha++")) == Rat(0));
  // out+ at c above in+ at c
  CHECK(b_of(w("->beta++ ->alpha++")) == Rat(1, 2));
  CHECK(b_of(w("->alpha++ ->beta++")) == Rat(3, 2));
  // same class on the shared side
  CHECK(b_of(w("->alpha++ ->beta--")) == Rat(0));
  CHECK(sign_of(Rat(1, 2)) == Scalar::zeta());
  CHECK(sign_of(Rat(1)) == Scalar(-1));
}

TEST_CASE("b is an antisymmetric cocycle") {
  for (int n = 0; n < 200; ++n) {
    auto a = random_word(3), b = random_word(3), c = random_word(3);
    CHECK(b_of(a, b) + b_of(b, a) == Rat(0) + (b_of(a, b) + b_of(b, a) >= 2 ? 2 : 0));
    Rat lhs = b_of(a, b * c) + b_of(b, c), rhs = b_of(a, b) + b_of(a * b, c);
    while (lhs >= 2)
      lhs -= 2;
    while (rhs >= 2)
      rhs -= 2;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("b is graded by the defining relations") {
  std::vector<std::pair<StatedWord, StatedWord>> rels;
  for (int k = 0; k < 3; ++k) {
    auto n = [&](int j) { return corner_name((k + j) % 3); };
    rels.push_back({w("->" + n(0) + "-- <-" + n(0) + "++"), StatedWord{}});
    rels.push_back({w("->" + n(0) + "-+"), w("<-" + n(1) + "++ <-" + n(2) + "--")});
    rels.push_back({w("<-" + n(0) + "-+"), w("->" + n(1) + "++ ->" + n(2) + "--")});
  }
  for (int n = 0; n < 100; ++n) {
    auto x = random_word(3);
    for (const auto &[l, r] : rels) {
      CHECK(b_of(x, l) == b_of(x, r));
      CHECK(b_of(l, x) == b_of(r, x));
    }
  }
}

TEST_CASE("pi") {
  auto p = pi_map(w("->alpha++"));
  REQUIRE(p.sl2.size() == 1);
  CHECK(p.sl2[0].first == Alpha);
  CHECK(p.sl2[0].second == std::array<int, 2>{1, 1});
  CHECK(p.gl1 == std::vector<std::pair<int, int>>{{Alpha, 1}});
  CHECK(p.sign == Scalar(1));
  CHECK(pi_map(w("->beta++ ->alpha++")).sign == Scalar::zeta());
  auto [e, c] = twisted_mul(w("->alpha--"), StatedWord{});
  CHECK(e.str() == "->alpha--");
  CHECK(c == Scalar(1));
  // multiplicative for the twisted product
  for (int n = 0; n < 200; ++n) {
    auto a = random_word(3), b = random_word(3);
    auto [ab, s] = twisted_mul(a, b);
    CHECK(pi_map(ab).traced(Scalar::Ct()) * s ==
          pi_map(a).traced(Scalar::Ct()) * pi_map(b).traced(Scalar::Ct()));
  }
}

TEST_CASE("F on single tokens") {
  auto h = hexagon_torus();
  CHECK(f_triangle(w("->alpha--")) == TorusElem::gen(h, "alpha1"));
  CHECK(f_triangle(w("->alpha++")) == TorusElem::gen(h, "alpha2"));
  CHECK(f_triangle(w("->beta++")) == TorusElem::gen(h, "beta2"));
  CHECK(f_triangle(w("->gamma--")) == TorusElem::gen(h, "gamma1"));
  CHECK(f_triangle(w("<-alpha++")) == TorusElem::gen(h, "alpha1", -1));
  CHECK(f_triangle(w("->alpha+-")).is_zero());
  CHECK(f_triangle(w("<-gamma+-")).is_zero());
  CHECK(f_triangle(StatedWord{}) == TorusElem::one(h));
  // every good token against the lift dictionary
  for (int k = 0; k < 3; ++k)
    for (bool fwd : {true, false})
      for (int mu : {-1, 1})
        for (int nu : {-1, 1}) {
          if (is_bad_arc(mu, nu))
            continue;
          auto t = token(k, fwd, mu, nu);
          auto f = f_token(t);
          REQUIRE(f.is_monomial());
          CHECK(f.terms().begin()->first == dictionary_vector(t));
          CHECK(f.terms().begin()->second == Scalar(1));
        }
  // both-starred arc b* -> c* through a: q^(-1/2) (a -> c*)(b* -> a)
  auto s = single();
  auto ac = TorusElem::monomial(h, lift_vector(s, {0, "a", false, "c", true}));
  auto ba = TorusElem::monomial(h, lift_vector(s, {0, "b", true, "a", false}));
  CHECK(f_triangle(w("->alpha-+")) == ac * ba * Scalar::q(Rat(-1, 2)));
}

TEST_CASE("F is multiplicative for the twisted product") {
  for (int n = 0; n < 200; ++n) {
    auto a = random_word(3), b = random_word(3);
    auto [ab, s] = twisted_mul(a, b);
    CHECK(f_triangle(ab) * s == f_triangle(a) * f_triangle(b));
  }
}

TEST_CASE("evaluation map") {
  auto h = hexagon_torus();
  CHECK(ev_triangle(TorusElem::gen(h, "alpha1")) == ev_mono({0, -1, -1, 1, 0, 0}));
  CHECK(ev_triangle(TorusElem::gen(h, "gamma2"), Scalar::Ct()) ==
        ev_mono({1, 1, 0, 0, 0, 1}, Scalar::Ct()));
  CHECK(ev_triangle(TorusElem::one(h)) == TorusElem::one(ev_target_torus()));
  auto central = TorusElem::monomial(h, hexagon_central().vector);
  for (auto ct : {Scalar(1), Scalar::Ct(), Scalar::Ct(3)})
    CHECK(reduce_gl1(ev_triangle(central, ct)) == TorusElem::constant(ev_target_torus(), -1));
}

TEST_CASE("triangle compatibility") {
  int checked = 0;
  for (int k = 0; k < 3; ++k)
    for (bool fwd : {true, false})
      for (int mu : {-1, 1})
        for (int nu : {-1, 1}) {
          StatedWord x{{token(k, fwd, mu, nu)}};
          auto r = compat_check_word(x, Scalar::Ct());
          CHECK_MESSAGE(r.ok(), r.to_json().dump());
          if (mu == nu)
            ++checked;
        }
  CHECK(checked == 12);
  CHECK(compat_check_word(StatedWord{}).ok());
  for (int n = 0; n < 100; ++n) {
    auto x = random_word(n < 50 ? 2 : 5);
    auto r = compat_check_word(x, Scalar::Ct());
    CHECK_MESSAGE(r.ok(), r.to_json().dump());
  }
}

TEST_CASE("glued compatibility") {
  auto s = SurfaceTri::from_json(flip_quad_spec());
  SplitPresentation2D p;
  p.strands.push_back({"T1", Beta, false, {EndState{0, "e"}, EndState{1, ""}}});
  p.strands.push_back({"T2", Gamma, true, {EndState{0, "e"}, EndState{1, ""}}});
  p.prefactor.push_back({"e", Rat(1)});
  auto r = compat_check_2d(s, p, Scalar::Ct());
  CHECK_MESSAGE(r.ok(), r.to_json().dump());
  CHECK(compat_check_2d(s, SplitPresentation2D{}).ok());
  auto fan = hexagon_fan();
  for (int n = 0; n < 15; ++n) {
    auto rp = random_presentation(fan);
    auto rr = compat_check_2d(fan, rp, Scalar::Ct());
    CHECK_MESSAGE(rr.ok(), rr.to_json().dump());
  }
}

TEST_CASE("web flux must match across edges") {
  auto s = SurfaceTri::from_json(flip_quad_spec());
  auto cover = ev_cover_torus(s);
  Vec g(cover->rank(), 0);
  g[3] = 1; // alpha in T1 only
  CHECK_THROWS_AS(glue_2d(s, TorusElem::monomial(cover, g), s.edges()), DegreeMismatch);
}

TEST_CASE("quadrilateral cover and psi") {
  auto s = SurfaceTri::from_json(flip_quad_spec());
  auto qc = quad_cover(s, "x");
  CHECK(qc.gens->rank() == 9);
  CHECK(qc.outer == std::array<std::string, 4>{"y", "z", "v", "w"});
  CHECK(qc.fresh == "x'");
  auto g = [&](const std::string &n) { return TorusElem::gen(qc.gens, n); };
  // corners are fixed: the evaluated images stay monomials of the same shape
  for (int i = 0; i < 8; ++i) {
    auto img = psi_flip(qc, TorusElem::monomial(qc.gens, unit_vec(9, i)));
    CHECK(img.is_monomial());
  }
  auto lon = psi_flip(qc, g("w>z.1"));
  CHECK(lon.terms().size() == 2);
  CHECK(psi_flip(qc, g("y>z.1") * g("z>v.1")) ==
        psi_flip(qc, g("y>z.1")) * psi_flip(qc, g("z>v.1")));
  CHECK(psi_flip(qc, g("w>z.1") * g("v>w.2")) ==
        psi_flip(qc, g("w>z.1")) * psi_flip(qc, g("v>w.2")));
  CHECK_THROWS_AS(psi_flip(qc, g("w>z.1").pow(-1)), OutOfDomain);
  CHECK_THROWS_AS(psi_flip(qc, TorusElem::one(hexagon_torus())), OutOfDomain);

  // evaluated longitude: w x' z + w x'^-1 z tensor the arc w -> z
  auto ev = ev_cover_hom(qc.after);
  std::vector<std::string> web(qc.outer.begin(), qc.outer.end());
  auto glued = glue_2d(qc.after, ev(lon), web);
  auto gt = glued_torus(qc.after, web);
  auto mono = [&](int xp) {
    Vec v(gt->rank(), 0);
    v[gt->index("tr.w")] = 1;
    v[gt->index("tr.z")] = 1;
    v[gt->index("tr.x'")] = xp;
    v[gt->index("web.w")] = -1;
    v[gt->index("web.z")] = 1;
    return TorusElem::monomial(gt, v);
  };
  CHECK(glued == mono(1) + mono(-1));
}

TEST_CASE("naturality under the flip") {
  auto s = SurfaceTri::from_json(flip_quad_spec());
  for (auto ct : {Scalar(1), Scalar::Ct()}) {
    auto r = naturality_check_2d(s, "x", ct);
    CHECK(r.checks.size() == 10);
    CHECK_MESSAGE(r.ok(), r.to_json().dump(1));
  }
  // a flip inside a larger surface
  auto fan = hexagon_fan();
  auto r = naturality_check_2d(fan, "e03");
  CHECK_MESSAGE(r.ok(), r.to_json().dump(1));
  CHECK_THROWS_AS(naturality_check_2d(s, "y"), BoundaryEdge);
}
