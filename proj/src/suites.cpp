#include "skeintrace/suites.hpp"

#include "skeintrace/complex.hpp"
#include "skeintrace/errors.hpp"
#include "skeintrace/uvir3d.hpp"

#include <future>

namespace skeintrace {

CheckRecord truth(const std::string &name, bool ok) {
  return CheckRecord{name, ok ? "true" : "false", "true", ok, ok ? "" : "does not hold"};
}

namespace {

const Scalar &ct0() {
  static const Scalar s = Scalar::q(Rat(-1, 2));
  return s;
}
const Scalar &cb0() {
  static const Scalar s = Scalar(1);
  return s;
}

void append(Report &into, const Report &from, const std::string &prefix) {
  for (const auto &c : from.checks) {
    auto r = c;
    r.name = prefix + r.name;
    into.add(std::move(r));
  }
}

std::string state_key(const std::map<std::string, int> &st) {
  return std::string(st.at("eps1") > 0 ? "+" : "-") + (st.at("eps2") > 0 ? "+" : "-");
}

TorusElem figure8_golden(const SQGM &g) {
  auto y = [&](int k) { return g.gen("Y", 2, k); };
  auto z = [&](int k) { return g.gen("Z", 2, k); };
  Scalar A = Scalar::A();
  return y(1) * z(-1) * A + y(-1) * z(1) * A - y(-1) * z(-1) * A;
}

Token3D fixed_token(int block, int gen, bool biangle, bool fwd, int mu, int nu) {
  Token3D t;
  t.block = block;
  t.gen = gen;
  t.biangle = biangle;
  t.forward = fwd;
  t.states = {EndState{mu, "", 1}, EndState{nu, "", 1}};
  return t;
}

} // namespace

Figure8Run run_figure8(int jobs) {
  auto m = Mfld3Tri::from_json(figure8_spec());
  auto p = figure8_presentation();
  SQGM g(m);
  auto ex = figure8_expected(g);
  Figure8Run run;
  run.report.name = "figure-8 knot";
  auto &rep = run.report;

  for (const auto &st : assignments(p.variables())) {
    auto key = state_key(st);
    auto sym = g.reduce(to_shape_elem(m, g, sf_state_term(m, p, st, Scalar::Ct(), Scalar::Cb())));
    auto want = ex.per_state.count(key) ? g.reduce(ex.per_state.at(key)) : TorusElem(g.torus());
    rep.add(compare("state " + key, sym, want));
    auto at0 = g.reduce(to_shape_elem(m, g, sf_state_term(m, p, st, ct0(), cb0())))
                   .substitute_constants(ct0(), cb0());
    if (!at0.is_zero())
      run.per_state.emplace_back(key, g.render(at0));
  }
  auto raw = to_shape_elem(m, g, sf_state_term(m, p, {{"eps1", -1}, {"eps2", -1}}, Scalar::Ct(),
                                               Scalar::Cb()));
  rep.add(compare("coefficient of state --", raw,
                  g.gen("Y", 2, -1) * g.gen("Z", 2, -1) * (-Scalar::A() * Scalar::Cb(-2))));

  StateSum3DOptions opt;
  opt.jobs = jobs;
  auto total = trace_3d(m, p, ct0(), cb0(), opt).substitute_constants(ct0(), cb0());
  auto golden = figure8_golden(g);
  rep.add(compare("total", total, golden));
  rep.add(compare("symbolic total", trace_3d(m, p, Scalar::Ct(), Scalar::Cb(), opt),
                  g.reduce(ex.total)));
  run.total = g.render(total);
  run.golden = g.render(golden);
  return run;
}

Report figure8_compat_suite() {
  auto m = Mfld3Tri::from_json(figure8_spec());
  auto p = figure8_presentation();
  SQGM g(m);
  Report rep{"figure-8 compatibility", {}};
  append(rep, compat_check_3d(m, p), "");
  rep.add(compare("recovered trace", recover_trace(m, p), trace_3d(m, p)));
  rep.add(compare("recovered golden",
                  recover_trace(m, p, std::nullopt, ct0(), cb0()).substitute_constants(ct0(), cb0()),
                  figure8_golden(g)));
  return rep;
}

Report triangle_square_suite() {
  Report rep{"triangle square", {}};
  int n = 0;
  for (int k = 0; k < 3; ++k)
    for (bool fwd : {true, false})
      for (int e : {1, -1}) {
        StatedWord w{{token(k, fwd, e, e)}};
        append(rep, compat_check_word(w, Scalar::Ct()), w.str() + ": ");
        ++n;
      }
  rep.add(truth("12 generators", n == 12));
  auto central = TorusElem::monomial(hexagon_torus(), hexagon_central().vector);
  rep.add(compare("central hexagon", reduce_gl1(ev_triangle(central, Scalar::Ct())),
                  TorusElem::constant(ev_target_torus(), -1)));
  return rep;
}

Report sf_square_suite() {
  Report rep{"face-suspension square", {}};
  auto a = formal_sf_angles("th");
  auto run = [&](const Token3D &t, const std::string &name) {
    Suspension3D s{"S", {}, {}};
    (t.biangle ? s.right : s.left).push_back(t);
    auto lhs = reduce_gl1_sf(ev_sf(f_sf(s, a), a));
    auto rhs = reduce_gl1_sf(pi_sf(s));
    rep.add(compare(name, lhs, rhs));
    rep.add(truth(name + " angle-free", !lhs.has_angles()));
  };
  int n = 0;
  for (int block : {1, 2})
    for (int k = 0; k < 3; ++k)
      for (bool fwd : {true, false})
        for (int e : {1, -1}) {
          run(fixed_token(block, k, false, fwd, e, e),
              "block " + std::to_string(block) + " corner " + corner_name(k) +
                  (fwd ? " fwd " : " bwd ") + (e > 0 ? "++" : "--"));
          ++n;
        }
  rep.add(truth("24 generators", n == 24));
  for (int k = 0; k < 3; ++k)
    for (bool fwd : {true, false})
      for (int e : {1, -1})
        run(fixed_token(1, k, true, fwd, e, e), std::string("biangle ") + "abc"[k] +
                                                     (fwd ? " fwd " : " bwd ") +
                                                     (e > 0 ? "++" : "--"));
  auto d = sf_double_cover_torus();
  for (int block = 0; block < 2; ++block) {
    Vec h(d->rank(), 0);
    for (int i = 0; i < 6; ++i)
      h[6 * block + i] = 1;
    rep.add(compare("central hexagon " + std::string(block ? "T" : "S"),
                    reduce_gl1_sf(ev_sf(TorusElem::monomial(d, h), a)),
                    TorusElem::constant(ev_sf_torus(), -1)));
  }
  return rep;
}

Report sqgm_suite() {
  Report rep{"SQGM relations", {}};
  for (auto [name, spec] : {std::pair{"figure-8", figure8_spec()}, {"bipyramid", bipyramid_spec()}}) {
    auto m = Mfld3Tri::from_json(spec, true);
    SQGM g(m);
    bool central = true;
    for (const auto &r : g.vertex_relations())
      for (int i = 0; i < g.torus()->rank(); ++i)
        central = central &&
                  g.torus()->commutation(r.vector, unit_vec(g.torus()->rank(), i)) == Scalar(1);
    rep.add(truth(std::string("vertex centrality ") + name, central));
  }
  for (int k = 3; k <= 6; ++k) {
    auto m = Mfld3Tri::from_json(edge_book_spec(k), true);
    SQGM g(m);
    std::string name = "edge relation k=" + std::to_string(k);
    if (g.gluing_relations().size() != 1) {
      rep.add(truth(name, false));
      continue;
    }
    auto e = TorusElem::monomial(g.torus(), g.gluing_relations()[0].vector);
    rep.add(compare(name, g.reduce(e),
                    TorusElem::constant(g.torus(), (Scalar::q() * Scalar::Cb(-k)).reduce_cb())));
  }
  auto bp = Mfld3Tri::from_json(bipyramid_spec(), true);
  append(rep, phi_2_3(bp, "F").report, "2-3 move: ");
  return rep;
}

Report cone_suite() {
  auto bp = Mfld3Tri::from_json(bipyramid_spec(), true);
  Report rep{"gl1 cone", {}};
  append(rep, cone_3term_check(bp, "F"), "");
  return rep;
}

Report flip_naturality_suite() {
  auto s = SurfaceTri::from_json(flip_quad_spec());
  Report rep{"flip naturality", {}};
  append(rep, naturality_check_2d(s, "x", Scalar::Ct()), "");

  auto qc = quad_cover(s, "x");
  std::vector<std::string> web(qc.outer.begin(), qc.outer.end());
  auto lon = psi_flip(qc, TorusElem::gen(qc.gens, "w>z.1"));
  auto glued = glue_2d(qc.after, ev_cover_hom(qc.after)(lon), web);
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
  rep.add(compare("longitude image", glued, mono(1) + mono(-1)));
  return rep;
}

Report detour_suite() { return gl1_detour_check(); }

std::vector<NamedSuite> builtin_suites() {
  return {
      {"figure-8 knot", [] { return run_figure8().report; }},
      {"figure-8 compatibility", figure8_compat_suite},
      {"triangle square", triangle_square_suite},
      {"face-suspension square", sf_square_suite},
      {"SQGM relations", sqgm_suite},
      {"gl1 cone", cone_suite},
      {"flip naturality", flip_naturality_suite},
      {"gl1 detour", detour_suite},
  };
}

std::vector<Report> run_suites(const std::vector<NamedSuite> &suites, int jobs) {
  auto guarded = [](const NamedSuite &s) {
    try {
      auto r = s.run();
      r.name = s.name;
      return r;
    } catch (const std::exception &e) {
      return Report{s.name, {CheckRecord{"error", e.what(), "", false, e.what()}}};
    }
  };
  std::vector<Report> out;
  out.reserve(suites.size());
  jobs = std::max(1, jobs);
  for (std::size_t i = 0; i < suites.size(); i += jobs) {
    std::vector<std::future<Report>> batch;
    for (std::size_t j = i; j < std::min(suites.size(), i + jobs); ++j)
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, guarded,
                                 std::cref(suites[j])));
    for (auto &f : batch)
      out.push_back(f.get());
  }
  return out;
}

} // namespace skeintrace
