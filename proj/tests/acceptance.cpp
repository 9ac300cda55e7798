// One line per acceptance criterion; exit status 0 iff all pass.

#include "complexes.hpp"
#include "support.hpp"
#include "surfaces.hpp"

#include "skeintrace/complex.hpp"
#include "skeintrace/suites.hpp"
#include "skeintrace/uvir3d.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <set>

using namespace skeintrace;
using testsupport::uniform;

namespace {

struct Tally {
  int checks = 0, failed = 0;
  std::string first;
  void operator()(bool ok, const std::string &what) {
    ++checks;
    if (!ok && failed++ == 0)
      first = what;
  }
  void report(const Report &r) {
    for (const auto &c : r.checks)
      (*this)(c.equal, r.name + ": " + c.name);
  }
  bool has(const Report &r, const std::string &name) {
    bool found = std::any_of(r.checks.begin(), r.checks.end(),
                             [&](const CheckRecord &c) { return c.name == name; });
    (*this)(found, "missing record '" + name + "'");
    return found;
  }
};

const Scalar ct0 = Scalar::q(Rat(-1, 2));
const Scalar cb0 = Scalar(1);

TorusElem golden(const SQGM &g) {
  auto y = [&](int k) { return g.gen("Y", 2, k); };
  auto z = [&](int k) { return g.gen("Z", 2, k); };
  Scalar A = Scalar::A();
  return y(1) * z(-1) * A + y(-1) * z(1) * A - y(-1) * z(-1) * A;
}

void figure8_golden(Tally &t) {
  auto m = Mfld3Tri::from_json(figure8_spec());
  auto p = figure8_presentation();
  SQGM g(m);
  t(trace_3d(m, p, ct0, cb0).substitute_constants(ct0, cb0) == golden(g), "total");
  auto y = [&](int k) { return g.gen("Y", 2, k); };
  auto z = [&](int k) { return g.gen("Z", 2, k); };
  Scalar A = Scalar::A();
  std::map<std::string, TorusElem> want = {
      {"++", TorusElem(g.torus())},
      {"+-", y(1) * z(-1) * A},
      {"-+", y(-1) * z(1) * A},
      {"--", y(-1) * z(-1) * (-A * Scalar::Cb(-2))},
  };
  for (const auto &st : assignments({"eps1", "eps2"})) {
    std::string k = std::string(st.at("eps1") > 0 ? "+" : "-") + (st.at("eps2") > 0 ? "+" : "-");
    auto raw = to_shape_elem(m, g, sf_state_term(m, p, st, Scalar::Ct(), Scalar::Cb()));
    t(g.reduce(raw) == g.reduce(want.at(k)), "state " + k);
    if (k == "--")
      t(raw == want.at(k), "unreduced coefficient of state --");
  }
  t.report(run_figure8(2).report);
  t.report(gl1_detour_check());
}

void figure8_compat(Tally &t) {
  auto rep = figure8_compat_suite();
  t.report(rep);
  for (const char *n : {"suspension S", "suspension N", "state eps1=+ eps2=-", "glued total",
                        "angle-free total"})
    t.has(rep, n);
  auto m = Mfld3Tri::from_json(figure8_spec());
  auto p = figure8_presentation();
  SQGM g(m);
  t(recover_trace(m, p, std::nullopt, ct0, cb0).substitute_constants(ct0, cb0) == golden(g),
    "recovered trace equals the golden answer");
}

void triangle_square(Tally &t) {
  auto rep = triangle_square_suite();
  t.report(rep);
  t.has(rep, "central hexagon");
  int words = 0;
  for (const auto &c : rep.checks)
    words += c.name.rfind("->", 0) == 0 || c.name.rfind("<-", 0) == 0;
  t(words == 12, "12 generator records");
}

void sf_square(Tally &t) {
  auto rep = sf_square_suite();
  t.report(rep);
  int gens = 0;
  for (const auto &c : rep.checks)
    gens += c.name.rfind("block ", 0) == 0 && c.name.find("angle-free") == std::string::npos;
  t(gens == 24, "24 generator records");
}

void sqgm(Tally &t) {
  auto rep = sqgm_suite();
  t.report(rep);
  for (int k = 3; k <= 6; ++k)
    t.has(rep, "edge relation k=" + std::to_string(k));
  for (const char *n : {"2-3 move: vertex scaling", "2-3 move: lagrangian expansion",
                        "2-3 move: lagrangian remainder", "2-3 move: horizontal biangle bc"})
    t.has(rep, n);
  // vertex scaling identity checked directly: (q^-1 Ct^-2 Cb^2)^3 = 1
  Scalar v = Scalar::q(-1) * Scalar::Ct(-2) * Scalar::Cb(2);
  t((v * v * v).reduce_cb() == Scalar(1), "vertex scaling cube");
}

void cone(Tally &t) {
  auto rep = cone_suite();
  t.report(rep);
  for (const char *n : {"sign relation", "3-term transport", "module identity",
                        "cyclic vector value"})
    t.has(rep, n);
  auto ct = cone_torus();
  t(reduce_mod(TorusElem::monomial(ct, Vec(3, 1)), {cone_central()}) ==
        TorusElem::constant(ct, -1),
    "[x x' x''] = -1");
  auto x = TorusElem::gen(ct, "x"), xp = TorusElem::gen(ct, "x'");
  t(x * xp == xp * x * Scalar::q(2), "x x' = q^2 x' x");
}

void flip(Tally &t) {
  auto rep = flip_naturality_suite();
  t.report(rep);
  int corners = 0;
  for (const auto &c : rep.checks)
    corners += c.name != "identity" && c.name != "longitude image" && c.name != "w>z.1";
  t(corners == 8, "8 corner records");
  t.has(rep, "w>z.1");
  t.has(rep, "longitude image");
}

TorusPtr three_cycle(int m, int s) {
  std::vector<std::vector<int>> M = {{0, m, -m}, {-m, 0, m}, {m, -m, 0}};
  std::vector<std::vector<int>> S = {{0, s, -s}, {-s, 0, s}, {s, -s, 0}};
  return QuantumTorus::make({"x", "y", "w"}, M, S);
}

StatedWord random_word(int max_len) {
  StatedWord r;
  int n = uniform(0, max_len);
  for (int i = 0; i < n; ++i)
    r.tokens.push_back(token(uniform(0, 2), uniform(0, 1), uniform(0, 1) ? 1 : -1,
                             uniform(0, 1) ? 1 : -1));
  return r;
}

Rat mod2(Rat r) {
  while (r >= 2)
    r -= 2;
  while (r < 0)
    r += 2;
  return r;
}

void properties(Tally &t) {
  std::vector<TorusPtr> tori = {three_cycle(2, 1), three_cycle(1, 1), three_cycle(4, 2),
                                hexagon_torus()};
  // Weyl symbols do not depend on the order of the factors
  for (const auto &tor : tori)
    for (int len = 1; len <= 4; ++len) {
      std::vector<Vec> gs;
      for (int i = 0; i < len; ++i) {
        Vec g(tor->rank());
        for (auto &x : g)
          x = uniform(-2, 2);
        gs.push_back(g);
      }
      auto ref = TorusElem::weyl(tor, gs);
      std::vector<int> idx(len);
      std::iota(idx.begin(), idx.end(), 0);
      do {
        std::vector<Vec> perm;
        TorusElem ordered = TorusElem::one(tor);
        Scalar corr(1);
        Vec pre(tor->rank(), 0);
        for (int i : idx) {
          perm.push_back(gs[i]);
          ordered = ordered * TorusElem::monomial(tor, gs[i]);
          corr *= tor->omega(pre, gs[i]);
          pre = vadd(pre, gs[i]);
        }
        t(TorusElem::weyl(tor, perm) == ref, "weyl permutation");
        t(ordered == ref * corr, "weyl against the omega chain");
      } while (std::next_permutation(idx.begin(), idx.end()));
    }
  for (const auto &tor : tori)
    for (int i = 0; i < 200; ++i) {
      auto a = testsupport::random_elem(tor), b = testsupport::random_elem(tor),
           c = testsupport::random_elem(tor);
      t((a * b) * c == a * (b * c), "associativity");
    }
  for (int n = 0; n < 200; ++n) {
    auto a = random_word(3), b = random_word(3), c = random_word(3);
    auto [ab, s] = twisted_mul(a, b);
    t(pi_map(ab).traced(Scalar::Ct()) * s ==
          pi_map(a).traced(Scalar::Ct()) * pi_map(b).traced(Scalar::Ct()),
      "pi twisted multiplicativity");
    t(mod2(b_of(a, b) + b_of(b, a)) == Rat(0), "b antisymmetry");
    t(mod2(b_of(a, b * c) + b_of(b, c)) == mod2(b_of(a, b) + b_of(a * b, c)), "b cocycle");
  }
  {
    auto m = Mfld3Tri::from_json(figure8_spec());
    SQGM g(m);
    for (int i = 0; i < 50; ++i) {
      auto e = testsupport::random_elem(g.torus(), 3, 3);
      auto r = g.reduce(e);
      t(g.reduce(r) == r, "reduce idempotence");
    }
  }
  {
    auto m = Mfld3Tri::from_json(figure8_spec());
    for (int i = 0; i < 20; ++i) {
      auto p = testsupport::random_presentation_3d(m);
      auto vars = p.variables();
      std::vector<int> faces(p.suspensions.size());
      std::iota(faces.begin(), faces.end(), 0);
      auto sum = [&] {
        TorusElem r(m.sf_big_torus());
        for (const auto &st : assignments(vars))
          r += sf_state_term(m, p, st, Scalar::Ct(), Scalar::Cb(), faces);
        return r;
      };
      auto base = sum();
      std::reverse(vars.begin(), vars.end());
      std::rotate(faces.begin(), faces.begin() + 1, faces.end());
      t(sum() == base, "3d state-sum order independence");
    }
    auto s = testsupport::hexagon_fan();
    for (int i = 0; i < 20; ++i) {
      auto p = testsupport::random_presentation(s);
      auto base = trace_surface(s, p, Scalar::Ct());
      auto vars = p.variables();
      std::reverse(vars.begin(), vars.end());
      t(trace_surface(s, p, Scalar::Ct(), {vars, 2}) == base, "2d state-sum order independence");
    }
  }
}

} // namespace

int main() {
  struct Criterion {
    const char *title;
    void (*run)(Tally &);
  };
  const Criterion all[] = {
      {"figure-8 golden trace and per-state values", figure8_golden},
      {"3d compatibility and trace recovery", figure8_compat},
      {"triangle square on 12 generators, central hexagon -> -1", triangle_square},
      {"face-suspension square on 24 generators, angle-free", sf_square},
      {"SQGM relations and the 2-3 move on the bipyramid", sqgm},
      {"gl1 cone point relations", cone},
      {"2d naturality under the flip", flip},
      {"property suites", properties},
  };
  std::printf("seed %u\n", testsupport::seed());
  int failed = 0, n = 0;
  for (const auto &c : all) {
    ++n;
    Tally t;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(t);
    } catch (const std::exception &e) {
      t(false, std::string("exception: ") + e.what());
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = t.failed == 0 && t.checks > 0;
    failed += !ok;
    std::printf("criterion %d: %s  %s (%d checks, %.2fs)%s%s\n", n, ok ? "PASS" : "FAIL", c.title,
                t.checks, secs, ok ? "" : "; first failure: ", ok ? "" : t.first.c_str());
  }
  return failed == 0 ? 0 : 1;
}
