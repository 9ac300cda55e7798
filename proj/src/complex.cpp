#include "skeintrace/complex.hpp"
#include "skeintrace/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace skeintrace {

using nlohmann::json;

TorusPtr triangle_torus(bool reversed) {
  int k = reversed ? 1 : -1;
  std::vector<std::vector<int>> m = {{0, k, -k}, {-k, 0, k}, {k, -k, 0}};
  std::vector<std::vector<int>> s(3, std::vector<int>(3, 0));
  return QuantumTorus::make({"a", "b", "c"}, m, s);
}

// ---------------------------------------------------------------- surfaces

SurfaceTri SurfaceTri::build(std::vector<Triangle> tris) {
  SurfaceTri s;
  std::set<std::string> ids;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    if (tris[t].id.empty() || !ids.insert(tris[t].id).second)
      throw Malformed("duplicate or empty triangle id '" + tris[t].id + "'");
    for (int k = 0; k < 3; ++k) {
      const auto &e = tris[t].edges[k];
      if (e.empty())
        throw Malformed("empty edge name in triangle " + tris[t].id);
      auto &v = s.slots_[e];
      v.push_back({static_cast<int>(t), k});
      if (v.size() > 2)
        throw Malformed("edge '" + e + "' used more than twice");
    }
  }
  s.tris_ = std::move(tris);
  for (const auto &[e, v] : s.slots_)
    s.edges_.push_back(e);
  return s;
}

SurfaceTri SurfaceTri::from_json(const json &j) {
  try {
    std::vector<Triangle> tris;
    for (const auto &t : j.at("triangles")) {
      Triangle tri;
      tri.id = t.at("id").get<std::string>();
      auto es = t.at("edges").get<std::vector<std::string>>();
      if (es.size() != 3)
        throw Malformed("triangle " + tri.id + " needs three edges");
      std::copy(es.begin(), es.end(), tri.edges.begin());
      tris.push_back(tri);
    }
    return build(std::move(tris));
  } catch (const json::exception &e) {
    throw Malformed(std::string("surface spec: ") + e.what());
  }
}

json SurfaceTri::to_json() const {
  json tris = json::array();
  for (const auto &t : tris_)
    tris.push_back({{"id", t.id}, {"edges", t.edges}});
  return {{"triangles", tris}};
}

const std::vector<Slot> &SurfaceTri::slots(const std::string &edge) const {
  auto it = slots_.find(edge);
  if (it == slots_.end())
    throw UnknownId("edge '" + edge + "'");
  return it->second;
}

bool SurfaceTri::is_boundary(const std::string &edge) const {
  return slots(edge).size() == 1;
}

bool SurfaceTri::closed() const {
  return std::none_of(edges_.begin(), edges_.end(),
                      [&](const auto &e) { return is_boundary(e); });
}

int SurfaceTri::triangle_index(const std::string &id) const {
  for (std::size_t i = 0; i < tris_.size(); ++i)
    if (tris_[i].id == id)
      return static_cast<int>(i);
  throw UnknownId("triangle '" + id + "'");
}

int SurfaceTri::edge_index(const std::string &edge) const {
  auto it = std::find(edges_.begin(), edges_.end(), edge);
  if (it == edges_.end())
    throw UnknownId("edge '" + edge + "'");
  return static_cast<int>(it - edges_.begin());
}

TorusPtr SurfaceTri::bare_torus() const {
  std::vector<TorusPtr> parts(tris_.size(), triangle_torus());
  std::vector<std::string> pre;
  for (const auto &t : tris_)
    pre.push_back(t.id);
  return QuantumTorus::tensor(parts, pre);
}

int SurfaceTri::form(const std::string &e, const std::string &f) const {
  int r = 0;
  for (const auto &se : slots(e))
    for (const auto &sf : slots(f))
      if (se.tri == sf.tri) {
        if ((se.slot + 1) % 3 == sf.slot)
          r -= 1;
        else if ((sf.slot + 1) % 3 == se.slot)
          r += 1;
      }
  return r;
}

TorusPtr SurfaceTri::sqts_torus(bool allow_boundary) const {
  if (!allow_boundary && !closed())
    throw HasBoundary("surface has boundary edges");
  int n = static_cast<int>(edges_.size());
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0)), s = m;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[i][j] = form(edges_[i], edges_[j]);
  return QuantumTorus::make(edges_, m, s);
}

Vec SurfaceTri::bare_to_edges(const Vec &bare) const {
  if (bare.size() != 3 * tris_.size())
    throw RankMismatch("bare edge vector");
  Vec r(edges_.size(), 0);
  for (std::size_t t = 0; t < tris_.size(); ++t)
    for (int k = 0; k < 3; ++k)
      r[edge_index(tris_[t].edges[k])] += bare[3 * t + k];
  return r;
}

SurfaceTri SurfaceTri::flip(const std::string &edge) const {
  const auto &sl = slots(edge);
  if (sl.size() != 2)
    throw BoundaryEdge("edge '" + edge + "' is on the boundary");
  if (sl[0].tri == sl[1].tri)
    throw SelfGlued("edge '" + edge + "' has the same triangle on both sides");
  const auto &t1 = tris_[sl[0].tri];
  const auto &t2 = tris_[sl[1].tri];
  // t1 = (p, q, e), t2 = (e, r, s)
  auto p = t1.edges[(sl[0].slot + 1) % 3], q = t1.edges[(sl[0].slot + 2) % 3];
  auto r = t2.edges[(sl[1].slot + 1) % 3], s = t2.edges[(sl[1].slot + 2) % 3];
  auto fresh = edge + "'";
  while (slots_.count(fresh))
    fresh += "'";
  auto tris = tris_;
  tris[sl[0].tri].edges = {p, fresh, s};
  tris[sl[1].tri].edges = {q, r, fresh};
  return build(std::move(tris));
}

// ------------------------------------------------------------ 3-manifolds

int local_edge(int u, int v) {
  if (u > v)
    std::swap(u, v);
  static const int table[4][4] = {
      {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  if (u < 0 || v > 3 || u == v)
    throw Malformed("bad local edge");
  return table[u][v];
}

std::pair<int, int> edge_vertices(int e) {
  static const std::pair<int, int> table[6] = {{0, 1}, {0, 2}, {0, 3},
                                               {1, 2}, {1, 3}, {2, 3}};
  return table[e];
}

int edge_type(int e) {
  static const int table[6] = {0, 1, 2, 2, 1, 0};
  return table[e];
}

int Tet::vertex(const std::string &name) const {
  for (int i = 0; i < 4; ++i)
    if (v[i] == name)
      return i;
  throw UnknownId("vertex '" + name + "' of tetrahedron " + id);
}

namespace {

int parity(const std::array<int, 4> &p) {
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j])
        ++inv;
  return inv % 2;
}

std::array<int, 3> face_order(int opp) {
  std::array<int, 3> r{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (i != opp)
      r[k++] = i;
  if (parity({opp, r[0], r[1], r[2]}))
    std::swap(r[1], r[2]);
  return r;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b)
      p[std::max(a, b)] = std::min(a, b);
  }
};

bool plain_name(const std::string &s) {
  if (s.empty() || s == "pi")
    return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  });
}

} // namespace

Mfld3Tri Mfld3Tri::build(std::vector<Tet> tets, std::vector<GluingSpec> gluings,
                         bool allow_boundary) {
  Mfld3Tri m;
  std::set<std::string> ids;
  for (const auto &t : tets) {
    if (t.id.empty() || !ids.insert(t.id).second)
      throw Malformed("duplicate or empty tetrahedron id '" + t.id + "'");
    std::set<std::string> vs(t.v.begin(), t.v.end());
    if (vs.size() != 4)
      throw Malformed("tetrahedron " + t.id + " needs four distinct vertices");
  }
  m.tets_ = std::move(tets);
  std::set<std::string> names;
  for (std::size_t g = 0; g < gluings.size(); ++g) {
    auto &spec = gluings[g];
    if (spec.name.empty())
      spec.name = "G" + std::to_string(g);
    if (!names.insert(spec.name).second)
      throw Malformed("duplicate gluing name '" + spec.name + "'");
    FaceSusp f;
    f.name = spec.name;
    int t1 = m.tet_index(spec.tet1), t2 = m.tet_index(spec.tet2);
    std::array<int, 3> l1{}, l2{};
    for (int k = 0; k < 3; ++k) {
      l1[k] = m.tets_[t1].vertex(spec.verts1[k]);
      l2[k] = m.tets_[t2].vertex(spec.verts2[k]);
    }
    if (std::set<int>(l1.begin(), l1.end()).size() != 3 ||
        std::set<int>(l2.begin(), l2.end()).size() != 3)
      throw Malformed("gluing " + spec.name + " repeats a vertex");
    int o1 = 6 - l1[0] - l1[1] - l1[2], o2 = 6 - l2[0] - l2[1] - l2[2];
    f.top = {t1, o1};
    f.bottom = {t2, o2};
    for (int k = 0; k < 3; ++k)
      f.map[l1[k]] = l2[k];
    f.map[o1] = o2;
    if (!parity(f.map))
      throw OrientationClash("gluing " + spec.name + " preserves orientation");
    for (auto side : {f.top, f.bottom}) {
      auto key = std::make_pair(side.tet, side.opp);
      if (m.face_of_.count(key))
        throw Malformed("face of " + m.tets_[side.tet].id +
                        " opposite local vertex " + std::to_string(side.opp) +
                        " glued twice");
      m.face_of_[key] = {static_cast<int>(m.faces_.size()),
                         side.tet == f.top.tet && side.opp == f.top.opp ? 0 : 1};
    }
    auto jkl = face_order(o1);
    for (int s = 0; s < 3; ++s) {
      int u = jkl[s], v = jkl[(s + 1) % 3];
      f.top_edge[s] = local_edge(u, v);
      f.bottom_edge[s] = local_edge(f.map[u], f.map[v]);
    }
    m.faces_.push_back(f);
  }
  m.specs_ = std::move(gluings);

  int nt = static_cast<int>(m.tets_.size());
  for (int t = 0; t < nt; ++t)
    for (int o = 0; o < 4; ++o)
      if (!m.face_of_.count({t, o})) {
        if (!allow_boundary)
          throw Malformed("face of " + m.tets_[t].id + " opposite " +
                          m.tets_[t].v[o] + " is not glued");
        m.boundary_.push_back({{t, o}});
      }

  UnionFind uf(6 * nt);
  for (const auto &f : m.faces_)
    for (int s = 0; s < 3; ++s)
      uf.unite(6 * f.top.tet + f.top_edge[s], 6 * f.bottom.tet + f.bottom_edge[s]);
  std::map<int, int> root_to_class;
  for (int x = 0; x < 6 * nt; ++x) {
    int r = uf.find(x);
    auto it = root_to_class.find(r);
    if (it == root_to_class.end()) {
      it = root_to_class.emplace(r, static_cast<int>(m.classes_.size())).first;
      m.classes_.push_back({"E" + std::to_string(m.classes_.size()), {}, true});
    }
    EdgeCone c{x / 6, x % 6};
    auto &cls = m.classes_[it->second];
    cls.cones.push_back(c);
    m.class_of_[c] = it->second;
    auto [u, v] = edge_vertices(c.edge);
    for (int o = 0; o < 4; ++o)
      if (o != u && o != v && !m.face_of_.count({c.tet, o}))
        cls.interior = false;
  }
  return m;
}

Mfld3Tri Mfld3Tri::from_json(const json &j, bool allow_boundary) {
  try {
    std::vector<Tet> tets;
    const json empty = json::object();
    const auto &angles = j.contains("angles") ? j.at("angles") : empty;
    for (const auto &t : j.at("tetrahedra")) {
      Tet tet;
      tet.id = t.at("id").get<std::string>();
      auto vs = t.at("vertices").get<std::vector<std::string>>();
      if (vs.size() != 4)
        throw Malformed("tetrahedron " + tet.id + " needs four vertices");
      std::copy(vs.begin(), vs.end(), tet.v.begin());
      std::array<std::string, 3> given;
      if (angles.contains(tet.id)) {
        const auto &a = angles.at(tet.id);
        const char *keys[3][2] = {{"theta", "theta"}, {"thetap", "theta'"},
                                  {"thetapp", "theta''"}};
        for (int s = 0; s < 3; ++s)
          for (auto k : keys[s])
            if (a.contains(k))
              given[s] = a.at(k).get<std::string>();
      }
      bool all_plain = std::all_of(given.begin(), given.end(), plain_name);
      bool none = std::all_of(given.begin(), given.end(),
                              [](const auto &s) { return s.empty(); });
      if (none || all_plain) {
        auto ids = none ? tet_angle_symbols(tet.id)
                        : tet_angle_symbols(tet.id, {given[0], given[1], given[2]});
        for (int s = 0; s < 3; ++s)
          tet.angle[s] = AngleForm::symbol(ids[s]);
      } else {
        for (int s = 0; s < 3; ++s) {
          if (given[s].empty())
            throw Malformed("tetrahedron " + tet.id + " has partial angles");
          tet.angle[s] = AngleForm::parse(given[s]);
        }
      }
      tets.push_back(tet);
    }
    std::vector<GluingSpec> gl;
    if (j.contains("gluings"))
      for (const auto &g : j.at("gluings")) {
        GluingSpec s;
        if (g.contains("name"))
          s.name = g.at("name").get<std::string>();
        s.tet1 = g.at("face").at(0).get<std::string>();
        auto v1 = g.at("face").at(1).get<std::vector<std::string>>();
        s.tet2 = g.at("to").at(0).get<std::string>();
        auto v2 = g.at("to").at(1).get<std::vector<std::string>>();
        if (v1.size() != 3 || v2.size() != 3)
          throw Malformed("gluing faces need three vertices");
        std::copy(v1.begin(), v1.end(), s.verts1.begin());
        std::copy(v2.begin(), v2.end(), s.verts2.begin());
        gl.push_back(s);
      }
    bool boundary = allow_boundary || j.value("allow_boundary", false);
    return build(std::move(tets), std::move(gl), boundary);
  } catch (const json::exception &e) {
    throw Malformed(std::string("manifold spec: ") + e.what());
  }
}

json Mfld3Tri::to_json() const {
  json tets = json::array(), gl = json::array(), ang = json::object();
  for (const auto &t : tets_) {
    tets.push_back({{"id", t.id}, {"vertices", t.v}});
    ang[t.id] = {{"theta", t.angle[0].str()},
                 {"thetap", t.angle[1].str()},
                 {"thetapp", t.angle[2].str()}};
  }
  for (const auto &s : specs_)
    gl.push_back({{"name", s.name},
                  {"face", {s.tet1, s.verts1}},
                  {"to", {s.tet2, s.verts2}}});
  json j = {{"tetrahedra", tets}, {"gluings", gl}, {"angles", ang}};
  if (!boundary_.empty())
    j["allow_boundary"] = true;
  return j;
}

int Mfld3Tri::tet_index(const std::string &id) const {
  for (std::size_t i = 0; i < tets_.size(); ++i)
    if (tets_[i].id == id)
      return static_cast<int>(i);
  throw UnknownId("tetrahedron '" + id + "'");
}

int Mfld3Tri::face_index(const std::string &name) const {
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (faces_[i].name == name)
      return static_cast<int>(i);
  throw UnknownId("face '" + name + "'");
}

int Mfld3Tri::class_of(const EdgeCone &c) const {
  auto it = class_of_.find(c);
  if (it == class_of_.end())
    throw UnknownId("edge cone");
  return it->second;
}

TorusPtr Mfld3Tri::sf_torus(const std::string &face) const {
  face_index(face);
  auto t = QuantumTorus::tensor({triangle_torus(false), triangle_torus(true)});
  std::vector<std::vector<int>> m(6, std::vector<int>(6)), s = m;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      m[i][j] = t->m(i, j);
      s[i][j] = t->s(i, j);
    }
  return QuantumTorus::make({"a1", "b1", "c1", "a2", "b2", "c2"}, m, s);
}

TorusPtr Mfld3Tri::sf_big_torus() const {
  std::vector<TorusPtr> parts;
  std::vector<std::string> pre;
  for (const auto &f : faces_) {
    parts.push_back(sf_torus(f.name));
    pre.push_back(f.name);
  }
  return QuantumTorus::tensor(parts, pre);
}

std::vector<int> Mfld3Tri::bare_cones(const EdgeCone &c) const {
  std::vector<int> out;
  auto [u, v] = edge_vertices(c.edge);
  for (int o = 0; o < 4; ++o) {
    if (o == u || o == v)
      continue;
    auto it = face_of_.find({c.tet, o});
    if (it == face_of_.end())
      continue;
    auto [fi, block] = it->second;
    const auto &edges = block == 0 ? faces_[fi].top_edge : faces_[fi].bottom_edge;
    for (int s = 0; s < 3; ++s)
      if (edges[s] == c.edge)
        out.push_back(6 * fi + 3 * block + s);
  }
  return out;
}

Vec Mfld3Tri::shape_vector(const EdgeCone &c) const {
  if (c.tet < 0 || c.tet >= static_cast<int>(tets_.size()) || c.edge < 0 || c.edge > 5)
    throw UnknownId("edge cone");
  Vec r(6 * faces_.size(), 0);
  for (int b : bare_cones(c))
    r[b] += 1;
  return r;
}

std::optional<Vec> Mfld3Tri::to_shape(const Vec &bare) const {
  if (bare.size() != 6 * faces_.size())
    throw RankMismatch("bare cone vector");
  Vec r(3 * tets_.size(), 0);
  for (int t = 0; t < static_cast<int>(tets_.size()); ++t)
    for (int e = 0; e < 6; ++e) {
      auto bs = bare_cones({t, e});
      if (bs.empty())
        continue;
      int n = bare[bs[0]];
      for (int b : bs)
        if (bare[b] != n)
          return std::nullopt;
      r[shape_index({t, e})] += n;
    }
  return r;
}

std::vector<std::pair<std::string, AngleForm>> Mfld3Tri::angle_residuals() const {
  std::vector<std::pair<std::string, AngleForm>> out;
  for (const auto &t : tets_)
    out.emplace_back("tet " + t.id,
                     (t.angle[0] + t.angle[1] + t.angle[2] - AngleForm(1)).eliminated());
  for (const auto &c : classes_) {
    if (!c.interior)
      continue;
    AngleForm sum;
    for (const auto &cone : c.cones)
      sum = sum + angle_at(cone);
    out.emplace_back("edge " + c.name, (sum - AngleForm(2)).eliminated());
  }
  return out;
}

// ------------------------------------------------------------- 2-3 move

PachnerResult pachner_2_3(const Mfld3Tri &t, const std::string &face,
                          std::optional<AngleForm> free_angle) {
  const auto &f = t.faces()[t.face_index(face)];
  if (f.top.tet == f.bottom.tet)
    throw SelfAdjacentFace("face " + face + " joins a tetrahedron to itself");
  const Tet &top = t.tets()[f.top.tet];
  const Tet &bot = t.tets()[f.bottom.tet];
  PachnerResult res;
  res.top = top.id;
  res.bottom = bot.id;
  res.free_angle = free_angle ? *free_angle : AngleForm::named("t_" + face);

  std::array<int, 3> fl{};
  for (int i = 0, k = 0; i < 4; ++i)
    if (i != f.top.opp)
      fl[k++] = i;
  std::string a = top.v[f.top.opp];
  std::array<std::string, 3> bcd = {top.v[fl[0]], top.v[fl[1]], top.v[fl[2]]};
  std::string e = bot.v[f.bottom.opp];
  auto taken = [&](const std::string &n) {
    return n == a || std::find(bcd.begin(), bcd.end(), n) != bcd.end();
  };
  while (taken(e))
    e += "'";
  res.apex_top = a;
  res.apex_bottom = e;
  res.face_vertices = bcd;

  // bottom local vertex -> new name
  std::array<std::string, 4> bot_name;
  for (int i = 0; i < 4; ++i)
    if (i != f.top.opp)
      bot_name[f.map[i]] = top.v[i];
  bot_name[f.bottom.opp] = e;

  auto T = [&](int i, int j) { return top.angle[edge_type(local_edge(fl[i], fl[j]))]; };
  auto B = [&](int i, int j) {
    return bot.angle[edge_type(local_edge(f.map[fl[i]], f.map[fl[j]]))];
  };
  AngleForm v = T(0, 1), v1 = T(1, 2), v2 = T(0, 2);
  AngleForm w = B(0, 1), w1 = B(0, 2), w2 = B(1, 2);
  AngleForm z = res.free_angle, pi(1);

  const std::string &b = bcd[0], &c = bcd[1], &d = bcd[2];
  // new tets for the face edges bc, bd, cd; each replaces the third vertex
  std::array<std::pair<std::string, std::string>, 3> pairs = {
      std::make_pair(b, c), std::make_pair(b, d), std::make_pair(c, d)};
  std::array<std::string, 3> third = {d, c, b};
  std::vector<Tet> tets;
  for (const auto &x : t.tets())
    if (x.id != top.id && x.id != bot.id)
      tets.push_back(x);
  std::array<Tet, 3> fresh;
  for (int k = 0; k < 3; ++k) {
    std::array<std::string, 4> l = top.v;
    for (auto &n : l)
      if (n == third[k])
        n = e;
    // reorder to (a, e, x, y) keeping orientation
    std::array<int, 4> perm{};
    std::vector<std::string> rest;
    for (const auto &n : l)
      if (n != a && n != e)
        rest.push_back(n);
    std::array<std::string, 4> order = {a, e, rest[0], rest[1]};
    for (int i = 0; i < 4; ++i)
      perm[i] = static_cast<int>(std::find(l.begin(), l.end(), order[i]) - l.begin());
    if (parity(perm))
      std::swap(order[2], order[3]);
    Tet nt;
    nt.id = face + "_" + pairs[k].first + pairs[k].second;
    nt.v = order;
    fresh[k] = nt;
    res.fresh[k] = nt.id;
  }
  auto set_angle = [&](Tet &nt, const std::string &p, const std::string &q,
                       const AngleForm &val) {
    nt.angle[edge_type(local_edge(nt.vertex(p), nt.vertex(q)))] = val;
  };
  set_angle(fresh[0], b, c, v + w);
  set_angle(fresh[0], e, c, z);
  set_angle(fresh[0], a, c, pi - v - w - z);
  set_angle(fresh[1], b, d, v2 + w1);
  set_angle(fresh[1], a, b, v1 - z);
  set_angle(fresh[1], a, d, v - w1 + z);
  set_angle(fresh[2], c, d, v1 + w2);
  set_angle(fresh[2], a, c, w - v1 + z);
  set_angle(fresh[2], a, d, w1 - z);
  for (const auto &nt : fresh)
    tets.push_back(nt);

  auto tet_for = [&](const std::string &missing) {
    for (int k = 0; k < 3; ++k)
      if (third[k] == missing)
        return fresh[k].id;
    throw NotAPachnerPair("vertex " + missing);
  };

  std::vector<Mfld3Tri::GluingSpec> gl;
  for (const auto &s : t.gluing_specs()) {
    if (s.name == face)
      continue;
    auto side = [&](const std::string &tet, std::array<std::string, 3> vs)
        -> std::pair<std::string, std::array<std::string, 3>> {
      if (tet == top.id) {
        std::string miss;
        for (const auto &n : top.v)
          if (std::find(vs.begin(), vs.end(), n) == vs.end())
            miss = n;
        return {tet_for(miss), vs};
      }
      if (tet == bot.id) {
        std::string miss;
        for (int i = 0; i < 4; ++i)
          if (std::find(vs.begin(), vs.end(), bot.v[i]) == vs.end())
            miss = bot_name[i];
        for (auto &n : vs)
          n = bot_name[bot.vertex(n)];
        return {tet_for(miss), vs};
      }
      return {tet, vs};
    };
    auto [t1, v1s] = side(s.tet1, s.verts1);
    auto [t2, v2s] = side(s.tet2, s.verts2);
    gl.push_back({s.name, t1, v1s, t2, v2s});
  }
  // interior faces a e p between the two new tets containing p
  for (const auto &p : bcd) {
    std::vector<std::string> with;
    for (int k = 0; k < 3; ++k)
      if (third[k] != p)
        with.push_back(fresh[k].id);
    gl.push_back({face + "_" + p, with[0], {a, e, p}, with[1], {a, e, p}});
  }

  res.after = Mfld3Tri::build(tets, gl, !t.boundary_faces().empty());

  for (int i = 0; i < 3; ++i) {
    const auto &p = bcd[i];
    std::array<EdgeCone, 2> img{};
    int n = 0;
    for (int k = 0; k < 3; ++k)
      if (third[k] != p) {
        int ti = res.after.tet_index(fresh[k].id);
        img[n++] = {ti, local_edge(fresh[k].vertex(a), fresh[k].vertex(p))};
      }
    res.cone_map[{f.top.tet, local_edge(f.top.opp, fl[i])}] = img;
    n = 0;
    for (int k = 0; k < 3; ++k)
      if (third[k] != p) {
        int ti = res.after.tet_index(fresh[k].id);
        img[n++] = {ti, local_edge(fresh[k].vertex(e), fresh[k].vertex(p))};
      }
    res.cone_map[{f.bottom.tet, local_edge(f.bottom.opp, f.map[fl[i]])}] = img;
  }
  return res;
}

// ------------------------------------------------------------ built-ins

json figure8_spec() {
  return json::parse(R"({
    "tetrahedra": [
      {"id": "Y", "vertices": ["y0", "y1", "y2", "y3"]},
      {"id": "Z", "vertices": ["z0", "z3", "z1", "z2"]}
    ],
    "gluings": [
      {"name": "S", "face": ["Y", ["y1", "y2", "y3"]], "to": ["Z", ["z2", "z1", "z3"]]},
      {"name": "N", "face": ["Z", ["z1", "z3", "z0"]], "to": ["Y", ["y0", "y1", "y2"]]},
      {"name": "E", "face": ["Y", ["y0", "y2", "y3"]], "to": ["Z", ["z2", "z0", "z3"]]},
      {"name": "W", "face": ["Y", ["y0", "y1", "y3"]], "to": ["Z", ["z1", "z2", "z0"]]}
    ]
  })");
}

json bipyramid_spec() {
  return json::parse(R"({
    "tetrahedra": [
      {"id": "T", "vertices": ["a", "d", "b", "c"]},
      {"id": "B", "vertices": ["e", "d", "c", "b"]}
    ],
    "gluings": [
      {"name": "F", "face": ["T", ["b", "c", "d"]], "to": ["B", ["b", "c", "d"]]}
    ],
    "allow_boundary": true
  })");
}

json edge_book_spec(int k) {
  if (k < 1)
    throw Malformed("edge book needs at least one tetrahedron");
  json tets = json::array(), gl = json::array();
  auto p = [&](int i) { return "p" + std::to_string(((i % k) + k) % k); };
  for (int i = 0; i < k; ++i)
    tets.push_back({{"id", "K" + std::to_string(i)},
                    {"vertices", {"a", "b", p(i), p(i + 1)}}});
  for (int i = 0; i < k; ++i)
    gl.push_back({{"name", "H" + std::to_string(i)},
                  {"face", {"K" + std::to_string(i), {"a", "b", p(i + 1)}}},
                  {"to", {"K" + std::to_string((i + 1) % k), {"a", "b", p(i + 1)}}}});
  return {{"tetrahedra", tets}, {"gluings", gl}, {"allow_boundary", true}};
}

json flip_quad_spec() {
  return json::parse(R"({
    "triangles": [
      {"id": "T1", "edges": ["y", "z", "x"]},
      {"id": "T2", "edges": ["x", "v", "w"]}
    ]
  })");
}

} // namespace skeintrace
