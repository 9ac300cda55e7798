#include "skeintrace/trace3d.hpp"
#include "skeintrace/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <thread>

namespace skeintrace {

using nlohmann::json;

// ------------------------------------------------------------------- SQGM

TorusPtr shape_torus(const Mfld3Tri &t) {
  static const TorusPtr single = [] {
    auto tri = triangle_torus();
    std::vector<std::vector<int>> m(3, std::vector<int>(3)), s = m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        m[i][j] = tri->m(i, j);
        s[i][j] = tri->s(i, j);
      }
    return QuantumTorus::make({"z", "z'", "z''"}, m, s);
  }();
  std::vector<TorusPtr> parts;
  std::vector<std::string> pre;
  for (const auto &tet : t.tets()) {
    parts.push_back(single);
    pre.push_back(tet.id);
  }
  return QuantumTorus::tensor(parts, pre);
}

SQGM::SQGM(const Mfld3Tri &t, std::vector<int> priority)
    : torus_(shape_torus(t)), priority_(std::move(priority)) {
  int nt = static_cast<int>(t.tets().size());
  int n = 3 * nt;
  if (priority_.empty())
    for (int type : {0, 1, 2})
      for (int k = 0; k < nt; ++k)
        priority_.push_back(3 * k + type);
  Scalar vs = Scalar::q(-1) * Scalar::Ct(-3);
  for (int k = 0; k < nt; ++k) {
    Vec v(n, 0);
    v[3 * k] = v[3 * k + 1] = v[3 * k + 2] = 1;
    vertex_.push_back({v, vs, Side::Central});
  }
  for (const auto &c : t.edge_classes()) {
    if (!c.interior)
      continue;
    Vec v(n, 0);
    for (const auto &cone : c.cones)
      v[t.shape_index(cone)] += 1;
    int k = static_cast<int>(c.cones.size());
    gluing_.push_back({v, Scalar::q() * Scalar::Cb(-k), Side::Right});
  }
  auto all = vertex_;
  all.insert(all.end(), gluing_.begin(), gluing_.end());
  std::tie(kept_, dropped_) = Reducer::independent_subset(torus_, all, priority_);
  reducer_ = std::make_shared<Reducer>(torus_, kept_, priority_);
}

TorusElem SQGM::reduce(const TorusElem &e) const {
  return reducer_->reduce(e).reduce_cb();
}

bool SQGM::equal(const TorusElem &a, const TorusElem &b) const {
  return (reduce(a) - reduce(b)).is_zero();
}

TorusElem SQGM::gen(int tet, int type, int power) const {
  return TorusElem::monomial(torus_, unit_vec(torus_->rank(), 3 * tet + type, power));
}

TorusElem SQGM::gen(const std::string &tet, int type, int power) const {
  static const char *suffix[3] = {".z", ".z'", ".z''"};
  return TorusElem::gen(torus_, tet + suffix[type], power);
}

std::string SQGM::render(const TorusElem &e) const { return reduce(e).str(); }

std::array<TorusElem, 3> lagrangian_trinomials(const Mfld3Tri &t, int tet) {
  if (tet < 0 || tet >= static_cast<int>(t.tets().size()))
    throw UnknownId("tetrahedron index " + std::to_string(tet));
  auto st = shape_torus(t);
  int n = st->rank();
  std::array<TorusElem, 3> out;
  for (int r = 0; r < 3; ++r) {
    int p = 3 * tet + r, pp = 3 * tet + (r + 2) % 3;
    out[r] = TorusElem::one(st) -
             TorusElem::monomial(st, unit_vec(n, p, -2), Scalar::Cb(-2)) -
             TorusElem::monomial(st, unit_vec(n, pp, 2), Scalar::Cb(2));
  }
  return out;
}

bool lagrangian_oracle(const Mfld3Tri &t, int tet, const TorusElem &e) {
  if (e.is_zero())
    return true;
  if (e.terms().size() != 3)
    return false;
  auto ls = lagrangian_trinomials(t, tet);
  auto st = ls[0].torus();
  if (e.torus() != st && !e.torus()->same_as(*st))
    return false;
  // the term of e that is x * 1
  for (const auto &l : ls)
    for (const auto &[g, c] : e.terms()) {
      auto x = TorusElem::monomial(st, g, c);
      if (((x * l) - e).reduce_cb().is_zero())
        return true;
    }
  return false;
}

// ----------------------------------------------------------- presentations

namespace {

EndState end_from(const json &j) {
  EndState e;
  if (j.is_number_integer()) {
    e.value = j.get<int>();
    if (e.value != 1 && e.value != -1)
      throw ParseError("state must be +1 or -1");
    return e;
  }
  if (!j.is_string())
    throw ParseError("bad state entry");
  auto s = j.get<std::string>();
  if (s == "+" || s == "+1") {
    e.value = 1;
  } else if (s == "-" || s == "-1") {
    e.value = -1;
  } else if (s.size() > 1 && s[0] == '-') {
    e.var = s.substr(1);
    e.sign = -1;
  } else if (!s.empty()) {
    e.var = s;
  } else {
    throw ParseError("empty state");
  }
  return e;
}

json end_to(const EndState &e) {
  if (e.fixed())
    return e.value;
  return e.sign < 0 ? "-" + e.var : e.var;
}

Token3D token_from(const json &j, bool right) {
  Token3D t;
  auto g = j.at("gen").get<std::string>();
  if (g == "a" || g == "b" || g == "c") {
    t.biangle = true;
    t.gen = g[0] - 'a';
    t.block = j.value("block", 1);
  } else {
    try {
      t.gen = corner_from(g);
    } catch (const Malformed &) {
      throw ParseError("unknown generator '" + g + "'");
    }
    t.block = j.at("block").get<int>();
  }
  if (t.biangle != right)
    throw InvalidPresentation(std::string(right ? "right" : "left") +
                              " words take " + (right ? "biangle" : "triangle") +
                              " generators, got '" + g + "'");
  if (t.block != 1 && t.block != 2)
    throw ParseError("block must be 1 or 2");
  auto o = j.value("orient", std::string("fwd"));
  if (o != "fwd" && o != "bwd")
    throw ParseError("orient must be fwd or bwd");
  t.forward = o == "fwd";
  const auto &ss = j.at("states");
  if (!ss.is_array() || ss.size() != 2)
    throw ParseError("a token has two states");
  t.states = {end_from(ss[0]), end_from(ss[1])};
  return t;
}

json token_to(const Token3D &t) {
  static const char *corners[3] = {"alpha", "beta", "gamma"};
  std::string g = t.biangle ? std::string(1, static_cast<char>('a' + t.gen)) : corners[t.gen];
  return {{"block", t.block},
          {"gen", g},
          {"orient", t.forward ? "fwd" : "bwd"},
          {"states", {end_to(t.states[0]), end_to(t.states[1])}}};
}

Rat rat_from(const json &j) {
  if (j.is_number_integer())
    return Rat(j.get<std::int64_t>());
  if (j.is_string())
    return parse_rat(j.get<std::string>());
  throw ParseError("expected a rational");
}

} // namespace

SplitPresentation3D SplitPresentation3D::from_json(const json &j) {
  SplitPresentation3D p;
  try {
    for (const auto &s : j.at("suspensions")) {
      Suspension3D sus;
      sus.face = s.at("face").get<std::string>();
      for (const auto &t : s.value("left", json::array()))
        sus.left.push_back(token_from(t, false));
      for (const auto &t : s.value("right", json::array()))
        sus.right.push_back(token_from(t, true));
      p.suspensions.push_back(std::move(sus));
    }
    for (const auto &v : j.value("states", json::array()))
      p.states.push_back(v.get<std::string>());
    for (const auto &f : j.value("prefactor", json::array()))
      p.prefactor.push_back({f.at("var").get<std::string>(), rat_from(f.at("half_q_coeff"))});
    if (j.contains("coefficient"))
      p.coefficient = Scalar::parse(j.at("coefficient").get<std::string>());
  } catch (const json::exception &e) {
    throw ParseError(std::string("presentation: ") + e.what());
  }
  return p;
}

json SplitPresentation3D::to_json() const {
  json j = {{"suspensions", json::array()}, {"states", states}, {"prefactor", json::array()}};
  for (const auto &s : suspensions) {
    json l = json::array(), r = json::array();
    for (const auto &t : s.left)
      l.push_back(token_to(t));
    for (const auto &t : s.right)
      r.push_back(token_to(t));
    j["suspensions"].push_back({{"face", s.face}, {"left", l}, {"right", r}});
  }
  for (const auto &f : prefactor)
    j["prefactor"].push_back({{"var", f.var}, {"half_q_coeff", rat_str(f.half_q)}});
  if (!(coefficient == Scalar(1)))
    j["coefficient"] = coefficient.str();
  return j;
}

std::vector<std::string> SplitPresentation3D::variables() const {
  std::set<std::string> v(states.begin(), states.end());
  for (const auto &s : suspensions)
    for (const auto *word : {&s.left, &s.right})
      for (const auto &t : *word)
        for (const auto &e : t.states)
          if (!e.fixed())
            v.insert(e.var);
  return {v.begin(), v.end()};
}

Scalar SplitPresentation3D::prefactor_at(const std::map<std::string, int> &st) const {
  Rat e{0};
  for (const auto &f : prefactor) {
    auto it = st.find(f.var);
    if (it == st.end())
      throw UnresolvedState("prefactor variable '" + f.var + "'");
    e += f.half_q * Rat(it->second, 2);
  }
  return coefficient * Scalar::q(e);
}

int resolve_state(const EndState &e, const std::map<std::string, int> &states) {
  return e.resolve(states);
}

std::array<int, 2> resolve_states(const Token3D &t, const std::map<std::string, int> &states) {
  return {t.states[0].resolve(states), t.states[1].resolve(states)};
}

std::array<int, 2> token_cones(const Mfld3Tri &, int face, const Token3D &tok) {
  if (tok.biangle)
    return {6 * face + tok.gen, 6 * face + 3 + tok.gen};
  auto [s1, s2] = corner_slots(tok.gen);
  int base = 6 * face + 3 * (tok.block - 1);
  return {base + s1, base + s2};
}

namespace {

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

} // namespace

void validate(const Mfld3Tri &t, const SplitPresentation3D &p) {
  int nf = static_cast<int>(t.faces().size());
  std::set<std::string> declared(p.states.begin(), p.states.end());
  // bare cones linked through a tetrahedron or across a biangle
  UF uf(6 * nf);
  for (int ti = 0; ti < static_cast<int>(t.tets().size()); ++ti)
    for (int e = 0; e < 6; ++e) {
      auto bs = t.bare_cones({ti, e});
      for (std::size_t k = 1; k < bs.size(); ++k)
        uf.unite(bs[0], bs[k]);
    }
  for (int f = 0; f < nf; ++f)
    for (int s = 0; s < 3; ++s)
      uf.unite(6 * f + s, 6 * f + 3 + s);
  std::map<std::string, std::vector<int>> seen;
  std::set<std::string> faces;
  for (const auto &s : p.suspensions) {
    int fi;
    try {
      fi = t.face_index(s.face);
    } catch (const UnknownId &) {
      throw InvalidPresentation("unknown face '" + s.face + "'");
    }
    if (!faces.insert(s.face).second)
      throw InvalidPresentation("face '" + s.face + "' listed twice");
    for (const auto *word : {&s.left, &s.right})
      for (const auto &tok : *word) {
        if (tok.gen < 0 || tok.gen > 2 || (tok.block != 1 && tok.block != 2))
          throw InvalidPresentation("token out of range on face " + s.face);
        auto cones = token_cones(t, fi, tok);
        for (int k = 0; k < 2; ++k) {
          const auto &e = tok.states[k];
          if (e.fixed()) {
            if (e.value != 1 && e.value != -1)
              throw InvalidPresentation("state must be +1 or -1");
            continue;
          }
          if (!declared.empty() && !declared.count(e.var))
            throw InvalidPresentation("undeclared state variable '" + e.var + "'");
          seen[e.var].push_back(cones[k]);
        }
      }
  }
  for (const auto &[v, cones] : seen) {
    if (cones.size() < 2 || cones.size() % 2)
      throw InvalidPresentation("state variable '" + v + "' is not paired");
    int root = uf.find(cones[0]);
    for (int c : cones)
      if (uf.find(c) != root)
        throw InvalidPresentation("state variable '" + v +
                                  "' joins bare cones of different edge cones");
  }
  for (const auto &f : p.prefactor)
    if (!seen.count(f.var))
      throw InvalidPresentation("prefactor variable '" + f.var + "' is not a state");
}

// ------------------------------------------------------------------ traces

TorusPtr sf_local_torus() {
  static const TorusPtr t = [] {
    auto b = QuantumTorus::tensor({triangle_torus(false), triangle_torus(true)});
    std::vector<std::vector<int>> m(6, std::vector<int>(6)), s = m;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        m[i][j] = b->m(i, j);
        s[i][j] = b->s(i, j);
      }
    return QuantumTorus::make({"a1", "b1", "c1", "a2", "b2", "c2"}, m, s);
  }();
  return t;
}

namespace {

void check_constants(const Scalar &ct, const Scalar &cb) {
  if (!satisfies_constraint(ct, cb))
    throw ConstraintViolation("Cb^2 != q Ct^2 for Ct=" + ct.str() + ", Cb=" + cb.str());
}

} // namespace

TorusElem sf_token_weight(const Token3D &tok, int mu, int nu, const Scalar &ct,
                          const Scalar &cb) {
  auto sf = sf_local_torus();
  if ((mu != 1 && mu != -1) || (nu != 1 && nu != -1))
    throw UnresolvedState("token state must be +1 or -1");
  if (tok.biangle) {
    if (mu != nu)
      return TorusElem(sf);
    Vec g(6, 0);
    g[tok.gen] = g[3 + tok.gen] = mu;
    return TorusElem::monomial(sf, g, cb.pow(mu));
  }
  TorusElem w;
  if (tok.block == 1) {
    w = corner_weight(tok.gen, mu, nu, ct);
  } else {
    // mirror: slot j -> -j, which sends the corner k to -k with the
    // two ends exchanged
    auto m = corner_weight((3 - tok.gen) % 3, nu, mu, ct);
    w = TorusElem(triangle_torus(true));
    for (const auto &[g, c] : m.terms())
      w.add_term({g[0], g[2], g[1]}, c);
  }
  return w.embed(sf, 3 * (tok.block - 1));
}

TorusElem trace_sf(const Mfld3Tri &t, const Suspension3D &s, const Scalar &ct,
                   const Scalar &cb) {
  check_constants(ct, cb);
  t.face_index(s.face);
  auto r = TorusElem::one(sf_local_torus());
  for (const auto *word : {&s.left, &s.right})
    for (const auto &tok : *word) {
      if (!tok.states[0].fixed() || !tok.states[1].fixed())
        throw UnresolvedState("token with a state variable on face " + s.face);
      r *= sf_token_weight(tok, tok.states[0].value, tok.states[1].value, ct, cb);
      if (r.is_zero())
        return r;
    }
  return r;
}

namespace {

Suspension3D fix_states(const Suspension3D &s, const std::map<std::string, int> &st) {
  Suspension3D r = s;
  for (auto *word : {&r.left, &r.right})
    for (auto &tok : *word)
      for (auto &e : tok.states)
        e = EndState{e.resolve(st), "", 1};
  return r;
}

} // namespace

TorusElem sf_state_term(const Mfld3Tri &t, const SplitPresentation3D &p,
                        const std::map<std::string, int> &states, const Scalar &ct,
                        const Scalar &cb, const std::vector<int> &face_order) {
  auto big = t.sf_big_torus();
  auto r = TorusElem::constant(big, p.prefactor_at(states));
  std::vector<int> order = face_order;
  if (order.empty()) {
    order.resize(p.suspensions.size());
    std::iota(order.begin(), order.end(), 0);
  }
  for (int i : order) {
    const auto &s = p.suspensions.at(i);
    auto w = trace_sf(t, fix_states(s, states), ct, cb);
    if (w.is_zero())
      return TorusElem(big);
    r *= w.embed(big, 6 * t.face_index(s.face));
  }
  return r;
}

TorusElem to_shape_elem(const Mfld3Tri &t, const SQGM &g, const TorusElem &bare) {
  TorusElem r(g.torus());
  for (const auto &[v, c] : bare.terms()) {
    auto s = t.to_shape(v);
    if (!s)
      throw InvalidPresentation("term " + monomial_str(*bare.torus(), v) +
                                " is not a product of edge cones");
    r.add_term(*s, c);
  }
  return r;
}

std::vector<std::map<std::string, int>> assignments(const std::vector<std::string> &vars) {
  if (vars.size() > 24)
    throw InvalidPresentation("too many state variables");
  std::vector<std::map<std::string, int>> out;
  long long total = 1LL << vars.size();
  for (long long bits = 0; bits < total; ++bits) {
    std::map<std::string, int> st;
    for (std::size_t i = 0; i < vars.size(); ++i)
      st[vars[i]] = (bits >> i) & 1 ? -1 : 1;
    out.push_back(std::move(st));
  }
  return out;
}

TorusElem trace_3d_raw(const Mfld3Tri &t, const SplitPresentation3D &p, const Scalar &ct,
                       const Scalar &cb, const StateSum3DOptions &opt) {
  validate(t, p);
  check_constants(ct, cb);
  SQGM g(t);
  auto vars = opt.order.empty() ? p.variables() : opt.order;
  {
    auto a = vars, b = p.variables();
    std::sort(a.begin(), a.end());
    if (a != b)
      throw InvalidPresentation("enumeration order must list every state variable once");
  }
  auto all = assignments(vars);
  int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(all.size())));
  std::vector<TorusElem> part(jobs, TorusElem(t.sf_big_torus()));
  auto work = [&](int j) {
    for (std::size_t i = j; i < all.size(); i += jobs)
      part[j] += sf_state_term(t, p, all[i], ct, cb, opt.face_order);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> th;
    for (int j = 0; j < jobs; ++j)
      th.emplace_back(work, j);
    for (auto &x : th)
      x.join();
  }
  TorusElem sum = part[0];
  for (int j = 1; j < jobs; ++j)
    sum += part[j];
  return to_shape_elem(t, g, sum);
}

TorusElem trace_3d(const Mfld3Tri &t, const SplitPresentation3D &p, const Scalar &ct,
                   const Scalar &cb, const StateSum3DOptions &opt) {
  return SQGM(t).reduce(trace_3d_raw(t, p, ct, cb, opt));
}

// --------------------------------------------------------------- figure 8

namespace {

int slot_of_type(const FaceSusp &f, int block, int type) {
  const auto &edges = block == 1 ? f.top_edge : f.bottom_edge;
  for (int s = 0; s < 3; ++s)
    if (edge_type(edges[s]) == type)
      return s;
  throw Malformed("face without an edge of type " + std::to_string(type));
}

// corner arc from slot p to slot r
Token3D arc(int block, int p, int r, EndState at_p, EndState at_r) {
  Token3D t;
  t.block = block;
  t.gen = 3 - p - r;
  t.forward = corner_slots(t.gen).first == p;
  t.states = t.forward ? std::array<EndState, 2>{at_p, at_r}
                       : std::array<EndState, 2>{at_r, at_p};
  return t;
}

Token3D bi(int slot, EndState s1, EndState s2) {
  Token3D t;
  t.biangle = true;
  t.gen = slot;
  t.states = {s1, s2};
  return t;
}

EndState var(const std::string &v, int sign = 1) { return EndState{0, v, sign}; }

} // namespace

SplitPresentation3D figure8_presentation() {
  auto m = Mfld3Tri::from_json(figure8_spec());
  const auto &S = m.faces()[m.face_index("S")];
  const auto &N = m.faces()[m.face_index("N")];
  SplitPresentation3D p;
  p.states = {"eps1", "eps2"};
  // S: Y on top.  ->y''_{eps1} y_{-eps2} [] ->y_{eps2} z''_{eps2}
  {
    Suspension3D s{"S", {}, {}};
    int ypp = slot_of_type(S, 1, 2), y = slot_of_type(S, 1, 0);
    s.left.push_back(arc(1, ypp, y, var("eps1"), var("eps2", -1)));
    s.right.push_back(bi(y, var("eps2"), var("eps2")));
    p.suspensions.push_back(s);
  }
  // N: Z on top.  ->z''_{eps2} z_{-eps1} [] ->z_{eps1} y''_{eps1}
  {
    Suspension3D s{"N", {}, {}};
    int zpp = slot_of_type(N, 1, 2), z = slot_of_type(N, 1, 0);
    s.left.push_back(arc(1, zpp, z, var("eps2"), var("eps1", -1)));
    s.right.push_back(bi(z, var("eps1"), var("eps1")));
    p.suspensions.push_back(s);
  }
  p.prefactor = {{"eps2", Rat(-1)}, {"eps1", Rat(-1)}};
  return p;
}

Figure8Expected figure8_expected(const SQGM &g, const Scalar &ct, const Scalar &cb) {
  auto y = [&](int k) { return g.gen("Y", 2, k); };
  auto z = [&](int k) { return g.gen("Z", 2, k); };
  Figure8Expected ex;
  Scalar A = Scalar::A();
  Scalar cbinv2 = cb.pow(-2);
  ex.per_state["+-"] = y(1) * z(-1) * A;
  ex.per_state["-+"] = y(-1) * z(1) * A;
  ex.per_state["--"] = y(-1) * z(-1) * (-A * cbinv2);
  (void)ct;
  ex.total = ex.per_state["+-"] + ex.per_state["-+"] + ex.per_state["--"];
  return ex;
}

// ------------------------------------------------------------------ 2-3

namespace {

CheckRecord truth(const std::string &name, bool ok, const std::string &what) {
  return CheckRecord{name, what, ok ? what : "not " + what, ok, ok ? "" : what + " fails"};
}

int tet_with(const Mfld3Tri &m, std::set<std::string> vs) {
  for (int i = 0; i < static_cast<int>(m.tets().size()); ++i) {
    std::set<std::string> have(m.tets()[i].v.begin(), m.tets()[i].v.end());
    if (have == vs)
      return i;
  }
  throw NotAPachnerPair("no tetrahedron on the expected vertices");
}

} // namespace

Phi23 phi_2_3(const Mfld3Tri &before, const std::string &face,
              const std::optional<Mfld3Tri> &after) {
  PachnerResult mv;
  try {
    mv = pachner_2_3(before, face);
  } catch (const UnknownId &e) {
    throw NotAPachnerPair(e.what());
  } catch (const SelfAdjacentFace &e) {
    throw NotAPachnerPair(e.what());
  }
  if (after && after->to_json() != mv.after.to_json())
    throw NotAPachnerPair("the second complex is not the 2-3 move on " + face);
  const Mfld3Tri &T3 = mv.after;
  SQGM g2(before), g3(T3);
  int n2 = g2.torus()->rank(), n3 = g3.torus()->rank();
  Scalar cb = Scalar::Cb();

  auto gen3 = [&](int idx, int power = 1) {
    return TorusElem::monomial(g3.torus(), unit_vec(n3, idx, power));
  };
  std::vector<TorusElem> images;
  int top = before.tet_index(mv.top), bot = before.tet_index(mv.bottom);
  for (int i = 0; i < n2; ++i) {
    int ti = i / 3, type = i % 3;
    if (ti != top && ti != bot) {
      images.push_back(gen3(3 * T3.tet_index(before.tets()[ti].id) + type));
      continue;
    }
    const std::array<EdgeCone, 2> *img = nullptr;
    for (const auto &[old, pair] : mv.cone_map)
      if (old.tet == ti && edge_type(old.edge) == type)
        img = &pair;
    if (!img)
      throw NotAPachnerPair("missing apex cone");
    images.push_back(gen3(T3.shape_index((*img)[0])) * gen3(T3.shape_index((*img)[1])) * cb);
  }
  TorusHom phi(g2.torus(), g3.torus(), images, true);

  Report rep{"phi_2_3 " + face, {}};
  auto zero3 = TorusElem(g3.torus());

  // vertex relations
  for (int ti : {top, bot}) {
    Vec v(n2, 0);
    v[3 * ti] = v[3 * ti + 1] = v[3 * ti + 2] = 1;
    auto lhs = phi(TorusElem::monomial(g2.torus(), v)) -
               TorusElem::constant(g3.torus(), Scalar::q(-1) * Scalar::Ct(-3));
    rep.add(compare("vertex " + before.tets()[ti].id, g3.reduce(lhs), zero3));
  }
  {
    auto k = Scalar::q(-1) * Scalar::Ct(-2) * cb.pow(2);
    rep.add(compare("vertex scaling", (Scalar(1) - k.pow(3)).reduce_cb(), Scalar(0)));
  }

  // names: a, e apexes; the top tet's cones at a of types 0, 1, 2 end at d, b, c
  const Tet &tt = before.tets()[top];
  const auto &F = before.faces()[before.face_index(face)];
  int opp = tt.vertex(mv.apex_top);
  std::array<std::string, 3> partner;
  for (int o = 0; o < 4; ++o)
    if (o != opp)
      partner[edge_type(local_edge(opp, o))] = tt.v[o];
  const std::string &a = mv.apex_top, &e = mv.apex_bottom;
  const std::string &d = partner[0], &b = partner[1], &c = partner[2];
  int xt = tet_with(T3, {a, e, b, d}), yt = tet_with(T3, {a, e, b, c}),
      zt = tet_with(T3, {a, e, c, d});
  auto cone = [&](int tet, const std::string &p, const std::string &q) {
    const Tet &x = T3.tets()[tet];
    return T3.shape_index({tet, local_edge(x.vertex(p), x.vertex(q))});
  };
  int x = cone(xt, b, d), x1 = cone(xt, a, d);
  int y = cone(yt, b, c), y2 = cone(yt, a, c);
  int z = cone(zt, a, e), z1 = cone(zt, a, c), z2 = cone(zt, a, d);
  auto one3 = TorusElem::one(g3.torus());
  auto tri = [&](int p, int pp) {
    return one3 - gen3(p, -2) * cb.pow(-2) - gen3(pp, 2) * cb.pow(2);
  };
  {
    auto lag_v = TorusElem::one(g2.torus()) -
                 TorusElem::monomial(g2.torus(), unit_vec(n2, 3 * top, -2), cb.pow(-2)) -
                 TorusElem::monomial(g2.torus(), unit_vec(n2, 3 * top + 2, 2), cb.pow(2));
    auto Lz = tri(z2, z1), Lx = tri(x1, x), Ly = tri(y, y2);
    rep.add(truth("lagrangian form " + T3.tets()[zt].id, lagrangian_oracle(T3, zt, Lz),
                  "trinomial of " + T3.tets()[zt].id));
    rep.add(truth("lagrangian form " + T3.tets()[xt].id, lagrangian_oracle(T3, xt, Lx),
                  "trinomial of " + T3.tets()[xt].id));
    rep.add(truth("lagrangian form " + T3.tets()[yt].id, lagrangian_oracle(T3, yt, Ly),
                  "trinomial of " + T3.tets()[yt].id));
    auto rest = gen3(x, 2) * gen3(z2, -2) + gen3(y, -2) * gen3(z1, 2);
    auto lhs = phi(lag_v) - Lz - Lx * gen3(z2, -2) * cb.pow(-2) - Ly * gen3(z1, 2) * cb.pow(2);
    rep.add(compare("lagrangian expansion", lhs.reduce_cb(), rest.reduce_cb()));
    rep.add(compare("lagrangian remainder", g3.reduce(rest), zero3));
  }

  // horizontal biangles: the two old cones at a face edge collapse to one
  auto bottom_cone = [&](const std::string &p, const std::string &q) {
    const Tet &bt = before.tets()[bot];
    int lp = F.map[tt.vertex(p)], lq = F.map[tt.vertex(q)];
    (void)bt;
    return 3 * bot + edge_type(local_edge(lp, lq));
  };
  auto top_cone = [&](const std::string &p, const std::string &q) {
    return 3 * top + edge_type(local_edge(tt.vertex(p), tt.vertex(q)));
  };
  struct H {
    std::string p, q;
    int target;
  };
  for (const auto &h : {H{b, c, y}, H{b, d, x}, H{c, d, z}}) {
    Vec v = vadd(unit_vec(n2, top_cone(h.p, h.q)), unit_vec(n2, bottom_cone(h.p, h.q)));
    auto lhs = phi(TorusElem::monomial(g2.torus(), v, cb.pow(3)));
    auto rhs = gen3(h.target) * cb.pow(2);
    rep.add(compare("horizontal biangle " + h.p + h.q, g3.reduce(lhs), g3.reduce(rhs)));
  }
  (void)zt;
  return Phi23{before, T3, mv, phi, rep};
}

} // namespace skeintrace
