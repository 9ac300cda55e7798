#include "skeintrace/trace2d.hpp"
#include "skeintrace/errors.hpp"

#include <algorithm>
#include <set>
#include <thread>

namespace skeintrace {

int corner_from(const std::string &s) {
  if (s == "alpha" || s == "α")
    return Alpha;
  if (s == "beta" || s == "β")
    return Beta;
  if (s == "gamma" || s == "γ")
    return Gamma;
  throw Malformed("unknown corner '" + s + "'");
}

std::string corner_name(int corner) {
  static const char *names[3] = {"alpha", "beta", "gamma"};
  return names[corner];
}

std::pair<int, int> corner_slots(int corner) { return {(corner + 1) % 3, (corner + 2) % 3}; }

bool is_bad_arc(int mu, int nu) { return mu == 1 && nu == -1; }

namespace {

TorusElem pure_weight(int corner, int eps, const Scalar &ct) {
  auto [s1, s2] = corner_slots(corner);
  Vec g(3, 0);
  g[s1] = eps;
  g[s2] = eps;
  return TorusElem::monomial(triangle_torus(), g, ct.pow(eps));
}

// [X Y] for monomials X, Y
TorusElem weyl_product(const TorusElem &x, const TorusElem &y) {
  const auto &gx = x.terms().begin()->first;
  const auto &gy = y.terms().begin()->first;
  return x * y * x.torus()->omega(gx, gy).inverse();
}

} // namespace

TorusElem corner_weight(int corner, int mu, int nu, const Scalar &ct) {
  if (corner < 0 || corner > 2)
    throw Malformed("corner out of range");
  if ((mu != 1 && mu != -1) || (nu != 1 && nu != -1))
    throw UnresolvedState("corner state must be +1 or -1");
  if (is_bad_arc(mu, nu))
    return TorusElem(triangle_torus());
  if (mu == nu)
    return pure_weight(corner, mu, ct);
  // (-,+) from ->alpha_{-+} = [<-beta_{++} <-gamma_{--}] and its rotations;
  // the Ct factors cancel
  static const std::array<TorusElem, 3> mixed = [] {
    std::array<TorusElem, 3> r;
    for (int k = 0; k < 3; ++k)
      r[k] = weyl_product(pure_weight((k + 1) % 3, 1, 1), pure_weight((k + 2) % 3, -1, 1));
    return r;
  }();
  return mixed[corner];
}

// ------------------------------------------------------------ presentations

int EndState::resolve(const std::map<std::string, int> &states) const {
  if (fixed())
    return value;
  auto it = states.find(var);
  if (it == states.end())
    throw UnresolvedState("state variable '" + var + "'");
  return sign * it->second;
}

namespace {

EndState end_from(const nlohmann::json &j) {
  EndState e;
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "+" || s == "+1")
      e.value = 1;
    else if (s == "-" || s == "-1")
      e.value = -1;
    else if (s.size() > 1 && s[0] == '-') {
      e.var = s.substr(1);
      e.sign = -1;
    } else
      e.var = s;
  } else if (j.is_number_integer()) {
    e.value = j.get<int>();
    if (e.value != 1 && e.value != -1)
      throw Malformed("state must be +1 or -1");
  } else {
    throw Malformed("bad state entry");
  }
  return e;
}

nlohmann::json end_to(const EndState &e) {
  if (e.fixed())
    return e.value;
  return e.sign < 0 ? "-" + e.var : e.var;
}

Rat rat_from(const nlohmann::json &j) {
  if (j.is_number_integer())
    return Rat(j.get<std::int64_t>());
  if (j.is_string())
    return parse_rat(j.get<std::string>());
  throw Malformed("expected a rational");
}

} // namespace

SplitPresentation2D SplitPresentation2D::from_json(const nlohmann::json &j) {
  SplitPresentation2D p;
  try {
    for (const auto &s : j.at("strands")) {
      Strand2D st;
      st.tri = s.at("tri").get<std::string>();
      st.corner = corner_from(s.at("corner").get<std::string>());
      auto o = s.value("orient", std::string("fwd"));
      if (o != "fwd" && o != "bwd")
        throw Malformed("orient must be fwd or bwd");
      st.forward = o == "fwd";
      const auto &ss = s.at("states");
      if (!ss.is_array() || ss.size() != 2)
        throw Malformed("a strand has two states");
      st.states = {end_from(ss[0]), end_from(ss[1])};
      p.strands.push_back(st);
    }
    if (j.contains("prefactor"))
      for (const auto &f : j.at("prefactor"))
        p.prefactor.push_back({f.at("var").get<std::string>(), rat_from(f.at("half_q_coeff"))});
    if (j.contains("coefficient"))
      p.coefficient = Scalar::parse(j.at("coefficient").get<std::string>());
  } catch (const nlohmann::json::exception &e) {
    throw Malformed(std::string("presentation: ") + e.what());
  }
  return p;
}

nlohmann::json SplitPresentation2D::to_json() const {
  nlohmann::json j;
  j["strands"] = nlohmann::json::array();
  for (const auto &s : strands)
    j["strands"].push_back({{"tri", s.tri},
                            {"corner", corner_name(s.corner)},
                            {"orient", s.forward ? "fwd" : "bwd"},
                            {"states", {end_to(s.states[0]), end_to(s.states[1])}}});
  j["prefactor"] = nlohmann::json::array();
  for (const auto &f : prefactor)
    j["prefactor"].push_back({{"var", f.var}, {"half_q_coeff", rat_str(f.half_q)}});
  j["coefficient"] = coefficient.str();
  return j;
}

std::vector<std::string> SplitPresentation2D::variables() const {
  std::set<std::string> v;
  for (const auto &s : strands)
    for (const auto &e : s.states)
      if (!e.fixed())
        v.insert(e.var);
  return {v.begin(), v.end()};
}

Scalar SplitPresentation2D::prefactor_at(const std::map<std::string, int> &states) const {
  Scalar r = coefficient;
  for (const auto &f : prefactor) {
    auto it = states.find(f.var);
    if (it == states.end())
      throw UnresolvedState("prefactor variable '" + f.var + "'");
    r *= Scalar::q(f.half_q * Rat(it->second, 2));
  }
  return r;
}

void validate(const SurfaceTri &s, const SplitPresentation2D &p) {
  // variable -> (edge, slot) of each occurrence
  std::map<std::string, std::vector<std::pair<std::string, Slot>>> seen;
  for (const auto &st : p.strands) {
    int t = s.triangle_index(st.tri);
    if (st.corner < 0 || st.corner > 2)
      throw InvalidPresentation("corner out of range");
    auto [s1, s2] = corner_slots(st.corner);
    for (int k = 0; k < 2; ++k) {
      int slot = k == 0 ? s1 : s2;
      const auto &edge = s.triangles()[t].edges[slot];
      const auto &e = st.states[k];
      if (s.is_boundary(edge)) {
        if (!e.fixed())
          throw InvalidPresentation("state variable '" + e.var + "' on boundary edge " + edge);
        continue;
      }
      if (e.fixed())
        throw InvalidPresentation("fixed state on interior edge " + edge);
      seen[e.var].push_back({edge, Slot{t, slot}});
    }
  }
  for (const auto &[v, occ] : seen) {
    if (occ.size() != 2)
      throw InvalidPresentation("state variable '" + v + "' must be shared by two endpoints");
    if (occ[0].first != occ[1].first || occ[0].second == occ[1].second)
      throw InvalidPresentation("state variable '" + v +
                                "' does not pair the two sides of one edge");
  }
  for (const auto &f : p.prefactor)
    if (!seen.count(f.var))
      throw InvalidPresentation("prefactor variable '" + f.var + "' is not a state");
}

TorusElem bare_weight(const SurfaceTri &s, const SplitPresentation2D &p,
                      const std::map<std::string, int> &states, const Scalar &ct) {
  auto bare = s.bare_torus();
  auto r = TorusElem::one(bare);
  for (const auto &st : p.strands) {
    int v[2] = {st.states[0].resolve(states), st.states[1].resolve(states)};
    auto w = corner_weight(st.corner, v[0], v[1], ct);
    if (w.is_zero())
      return TorusElem(bare);
    r *= w.embed(bare, 3 * s.triangle_index(st.tri));
  }
  return r;
}

TorusElem push_to_edges(const SurfaceTri &s, const TorusElem &bare) {
  auto t = s.sqts_torus(true);
  TorusElem r(t);
  for (const auto &[g, c] : bare.terms()) {
    Vec h(t->rank(), 0);
    for (const auto &e : s.edges()) {
      const auto &sl = s.slots(e);
      int a = g[3 * sl[0].tri + sl[0].slot];
      if (sl.size() == 2 && g[3 * sl[1].tri + sl[1].slot] != a)
        throw InvalidPresentation("unbalanced exponents at edge " + e);
      h[s.edge_index(e)] = a;
    }
    r.add_term(h, c);
  }
  return r;
}

TorusElem trace_surface(const SurfaceTri &s, const SplitPresentation2D &p, const Scalar &ct,
                        const StateSumOptions &opt) {
  validate(s, p);
  auto vars = p.variables();
  if (!opt.order.empty()) {
    auto sorted = opt.order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != vars)
      throw InvalidPresentation("enumeration order is not a permutation of the state variables");
    vars = opt.order;
  }
  if (vars.size() > 24)
    throw InvalidPresentation("too many state variables");
  const long long total = 1LL << vars.size();
  auto run = [&](long long lo, long long hi) {
    TorusElem acc(s.bare_torus());
    std::map<std::string, int> st;
    for (long long i = lo; i < hi; ++i) {
      for (std::size_t k = 0; k < vars.size(); ++k)
        st[vars[k]] = (i >> (vars.size() - 1 - k)) & 1 ? -1 : 1;
      auto w = bare_weight(s, p, st, ct);
      if (!w.is_zero())
        acc += w * p.prefactor_at(st);
    }
    return acc;
  };
  int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(total)));
  TorusElem sum(s.bare_torus());
  if (jobs == 1) {
    sum = run(0, total);
  } else {
    std::vector<TorusElem> parts(jobs);
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back([&, j] { parts[j] = run(total * j / jobs, total * (j + 1) / jobs); });
    for (auto &th : pool)
      th.join();
    for (const auto &part : parts)
      sum += part;
  }
  return push_to_edges(s, sum);
}

// --------------------------------------------------------------------- flip

namespace {

// roles y, z, v, w, x (x' on the image side)
using Roles = std::array<int, 5>;

struct Factor {
  Roles g;
  int p = 0; // power of (x' + x'^-1)
};

struct Entry {
  Roles key;
  Scalar coeff{1};
  std::vector<Factor> factors;
};

Roles rotate(const Roles &r) { return {r[2], r[3], r[0], r[1], r[4]}; }
Roles negate(const Roles &r) { return {-r[0], -r[1], -r[2], -r[3], -r[4]}; }

Entry rotate(const Entry &e) {
  Entry r{rotate(e.key), e.coeff, {}};
  for (const auto &f : e.factors)
    r.factors.push_back({rotate(f.g), f.p});
  return r;
}

Entry invert(const Entry &e) {
  Entry r{negate(e.key), e.coeff.inverse(), {}};
  for (auto it = e.factors.rbegin(); it != e.factors.rend(); ++it)
    r.factors.push_back({negate(it->g), -it->p});
  return r;
}

const std::vector<Entry> &flip_table() {
  static const std::vector<Entry> table = [] {
    const Scalar half = Scalar::A(Rat(-1, 2));
    auto m = [](Roles g) { return Factor{g, 0}; };
    auto sum = [](int k, int p) { return Factor{{0, 0, 0, 0, k}, p}; };
    std::vector<Entry> t;
    //           y   z   v   w   x
    t.push_back({{1, 1, 0, 0, 0}, 1, {m({1, 1, 0, 0, 1})}});
    t.push_back({{-1, 1, 0, 0, 0}, 1, {m({-1, 0, 0, 0, 0}), sum(0, 1), m({0, 1, 0, 0, 0})}});
    t.push_back({{1, 0, 0, 1, 1}, 1, {m({1, 0, 0, 1, 0})}});
    t.push_back({{1, 0, 0, 1, -1}, 1, {m({1, 0, 0, 1, 2})}});
    t.push_back({{1, 0, 0, -1, 1}, half,
                 {m({0, 0, 0, -1, 0}), sum(-1, -1), m({1, 0, 0, 0, 0})}});
    t.push_back({{1, 0, 0, -1, -1}, half,
                 {m({0, 0, 0, -1, 0}), sum(1, -1), m({1, 0, 0, 0, 0})}});
    t.push_back({{1, 0, 1, 0, 1}, 1, {m({1, 0, 0, 0, 0}), sum(0, -1), m({0, 0, 1, 0, 0})}});
    t.push_back({{1, 0, 1, 0, -1}, 1, {m({1, 0, 0, 0, 0}), sum(2, -1), m({0, 0, 1, 0, 0})}});
    t.push_back({{-1, 0, 1, 0, 1}, 1, {m({-1, 0, 1, 0, -1})}});
    t.push_back({{-1, 0, 1, 0, -1}, 1, {m({-1, 0, 1, 0, 1})}});
    t.push_back({{0, 1, 0, 1, 1}, 1, {m({0, 0, 0, 1, 0}), sum(0, 1), m({0, 1, 0, 0, 0})}});
    t.push_back({{0, 1, 0, 1, -1}, 1, {m({0, 0, 0, 1, 0}), sum(2, 1), m({0, 1, 0, 0, 0})}});
    t.push_back({{0, 1, 0, -1, 1}, 1, {m({0, 1, 0, -1, -1})}});
    t.push_back({{0, 1, 0, -1, -1}, 1, {m({0, 1, 0, -1, 1})}});
    return t;
  }();
  return table;
}

std::optional<Entry> lookup(const Roles &key) {
  if (key[0] == 0 && key[1] == 0 && key[2] == 0 && key[3] == 0 && key[4] % 2 == 0)
    return Entry{key, 1, {Factor{{0, 0, 0, 0, -key[4]}, 0}}};
  for (const auto &e : flip_table()) {
    auto r = rotate(e);
    if (e.key == key)
      return e;
    if (r.key == key)
      return r;
    if (negate(e.key) == key)
      return invert(e);
    if (negate(r.key) == key)
      return invert(r);
  }
  return std::nullopt;
}

} // namespace

TorusElem flip_even(const SurfaceTri &s, const std::string &edge, const TorusElem &m,
                    const Scalar &ct) {
  auto src = s.sqts_torus(true);
  if (!m.torus() || !m.torus()->same_as(*src))
    throw TorusMismatch("element is not in the edge torus of this triangulation");
  auto after = s.flip(edge);
  const auto &sl = s.slots(edge);
  const auto &t1 = s.triangles()[sl[0].tri];
  const auto &t2 = s.triangles()[sl[1].tri];
  std::array<std::string, 5> role = {
      t1.edges[(sl[0].slot + 1) % 3], t1.edges[(sl[0].slot + 2) % 3],
      t2.edges[(sl[1].slot + 1) % 3], t2.edges[(sl[1].slot + 2) % 3], edge};
  std::set<std::string> distinct(role.begin(), role.end());
  if (distinct.size() != 5)
    throw OutOfDomain("the quadrilateral around '" + edge + "' has repeated edges");
  const std::string fresh = after.triangles()[sl[0].tri].edges[1];
  auto dst = after.sqts_torus(true);
  std::array<int, 5> src_idx, dst_idx;
  for (int k = 0; k < 5; ++k) {
    src_idx[k] = s.edge_index(role[k]);
    dst_idx[k] = after.edge_index(k == 4 ? fresh : role[k]);
  }
  auto to_dst = [&](const Roles &r) {
    Vec h(dst->rank(), 0);
    for (int k = 0; k < 5; ++k)
      h[dst_idx[k]] = r[k];
    return h;
  };
  const int xi = dst_idx[4];
  auto diag = TorusElem::monomial(dst, unit_vec(dst->rank(), xi)) +
              TorusElem::monomial(dst, unit_vec(dst->rank(), xi, -1));

  TorusElem out(dst);
  for (const auto &[g, c] : m.terms()) {
    for (const auto &t : s.triangles()) {
      int deg = 0;
      for (const auto &e : t.edges)
        deg += g[s.edge_index(e)];
      if (deg % 2 != 0)
        throw NotEven("odd degree in triangle " + t.id);
    }
    Roles key;
    Vec quad(src->rank(), 0), outer = g;
    for (int k = 0; k < 5; ++k) {
      key[k] = g[src_idx[k]];
      quad[src_idx[k]] = g[src_idx[k]];
      outer[src_idx[k]] = 0;
    }
    auto entry = lookup(key);
    if (!entry)
      throw OutOfDomain("monomial " + monomial_str(*src, g) + " is not in the flip table");
    for (const auto &f : entry->factors)
      if (f.p < 0)
        throw NonLaurentImage("image of " + monomial_str(*src, g) + " has a denominator");
    auto img = TorusElem::constant(dst, entry->coeff);
    for (const auto &f : entry->factors) {
      img *= TorusElem::monomial(dst, to_dst(f.g));
      if (f.p > 0)
        img *= diag.pow(f.p);
    }
    Vec outer_dst(dst->rank(), 0);
    for (int i = 0; i < src->rank(); ++i)
      if (outer[i] != 0)
        outer_dst[after.edge_index(src->name(i))] = outer[i];
    img = img * TorusElem::monomial(dst, outer_dst);
    img = img * (c * src->omega(quad, outer).inverse());
    for (const auto &[h, d] : img.terms())
      out.add_term(h, d * ct.pow(h[xi] - key[4]));
  }
  return out;
}

} // namespace skeintrace
