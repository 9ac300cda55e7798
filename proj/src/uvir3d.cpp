#include "skeintrace/uvir3d.hpp"
#include "skeintrace/errors.hpp"

#include <algorithm>
#include <set>

namespace skeintrace {

// -------------------------------------------------------------- angles

SfAngles sf_angles(const Mfld3Tri &t, const std::string &face) {
  const auto &f = t.faces()[t.face_index(face)];
  SfAngles a;
  for (int s = 0; s < 3; ++s) {
    a.theta[s] = t.tets()[f.top.tet].angle[edge_type(f.top_edge[s])];
    a.theta[3 + s] = t.tets()[f.bottom.tet].angle[edge_type(f.bottom_edge[s])];
  }
  return a;
}

SfAngles formal_sf_angles(const std::string &prefix) {
  static const char *names[6] = {"a1", "b1", "c1", "a2", "b2", "c2"};
  SfAngles a;
  for (int i = 0; i < 6; ++i)
    a.theta[i] = AngleForm::named(prefix + "." + names[i]);
  return a;
}

namespace {

int mirror(int k) { return (3 - k) % 3; }

// angles of one block in the slot order of its (abstract) triangle
std::array<AngleForm, 3> block_angles(const SfAngles &a, int block) {
  if (block == 1)
    return {a.theta[0], a.theta[1], a.theta[2]};
  return {a.theta[3], a.theta[3 + mirror(1)], a.theta[3 + mirror(2)]};
}

void check_constants(const Scalar &ct, const Scalar &cb) {
  if (!satisfies_constraint(ct, cb))
    throw ConstraintViolation("Cb^2 != q Ct^2 for Ct=" + ct.str() + ", Cb=" + cb.str());
}

void check_fixed(const Token3D &tok) {
  if (!tok.states[0].fixed() || !tok.states[1].fixed())
    throw UnresolvedState("token with a state variable");
}

TorusPtr commuting(std::vector<std::string> names) {
  auto n = names.size();
  std::vector<std::vector<int>> z(n, std::vector<int>(n, 0));
  return QuantumTorus::make(std::move(names), z, z);
}

} // namespace

// ------------------------------------------------------------------ tori

TorusPtr bigon_double_torus() {
  static const TorusPtr t = commuting({"a.p", "a.m", "b.p", "b.m", "c.p", "c.m"});
  return t;
}

TorusPtr sf_double_cover_torus() {
  static const TorusPtr t = QuantumTorus::tensor(
      {hexagon_torus(), hexagon_torus(), bigon_double_torus()}, {"S", "T", "bi"});
  return t;
}

namespace {

constexpr int kBigon = 12;

int bigon_p(int k) { return kBigon + 2 * k; }
int bigon_m(int k) { return kBigon + 2 * k + 1; }

} // namespace

std::vector<FaceRelation> sf_face_relations() {
  static const char *corner[3] = {"alpha", "beta", "gamma"};
  std::vector<FaceRelation> out;
  for (int k = 0; k < 3; ++k) {
    auto [x, y] = corner_slots(k);
    for (int sheet = 1; sheet <= 2; ++sheet) {
      FaceRelation r;
      r.name = std::string(corner[k]) + " sheet " + std::to_string(sheet);
      r.left = Vec(18, 0);
      r.right = Vec(18, 0);
      // x -> y in S, then y -> x in T read in the mirror
      r.left[hex_gen(k, sheet)] += 1;
      r.left[6 + hex_gen(mirror(k), sheet)] += 1;
      if (sheet == 1) {
        r.right[bigon_m(x)] += 1;
        r.right[bigon_p(y)] -= 1;
      } else {
        r.right[bigon_p(x)] += 1;
        r.right[bigon_m(y)] -= 1;
      }
      r.relation = {vsub(r.left, r.right), Scalar(1), Side::Right};
      out.push_back(r);
    }
  }
  return out;
}

TorusPtr gl1_sf_torus() {
  static const TorusPtr t = QuantumTorus::tensor(
      {gl1_triangle_torus(false), gl1_triangle_torus(true), commuting({"a", "b", "c"})},
      {"S", "T", "bi"});
  return t;
}

std::vector<MonomialRelation> gl1_sf_relations() {
  std::vector<MonomialRelation> out;
  for (int block = 0; block < 2; ++block) {
    Vec v(9, 0);
    for (int k = 0; k < 3; ++k)
      v[3 * block + k] = 1;
    out.push_back({v, Scalar(1), Side::Central});
  }
  for (int k = 0; k < 3; ++k) {
    auto [x, y] = corner_slots(k);
    Vec v(9, 0);
    v[k] += 1;     // S: x -> y
    v[3 + k] -= 1; // T: y -> x
    v[6 + x] -= 1;
    v[6 + y] += 1;
    out.push_back({v, Scalar(1), Side::Right});
  }
  return out;
}

TorusPtr ev_sf_torus() {
  static const TorusPtr t =
      QuantumTorus::tensor({sf_local_torus(), gl1_sf_torus()}, {"sf", "gl1"});
  return t;
}

namespace {

const Reducer &gl1_reducer() {
  static const Reducer r = [] {
    auto e = ev_sf_torus();
    std::vector<MonomialRelation> rels;
    for (const auto &g : gl1_sf_relations()) {
      Vec v(6, 0);
      v.insert(v.end(), g.vector.begin(), g.vector.end());
      rels.push_back({v, g.scalar, g.side});
    }
    // eliminate biangle coordinates first, then T, keep S
    std::vector<int> prio = {14, 13, 12, 11, 10, 9, 8, 7, 6};
    auto kept = Reducer::independent_subset(e, rels, prio).first;
    return Reducer(e, kept, prio);
  }();
  return r;
}

} // namespace

TorusElem reduce_gl1_sf(const TorusElem &e) { return gl1_reducer().reduce(e).reduce_cb(); }

Vec sf_flux(const Vec &g) {
  if (g.size() != 9)
    throw RankMismatch("gl1 vector of a face suspension has 9 coordinates");
  Vec f(6, 0);
  for (int block = 0; block < 2; ++block)
    for (int k = 0; k < 3; ++k) {
      auto [x, y] = corner_slots(k);
      int e = g[3 * block + k];
      f[3 * block + x] -= e;
      f[3 * block + y] += e;
    }
  for (int k = 0; k < 3; ++k) {
    f[k] -= g[6 + k];
    f[3 + k] += g[6 + k];
  }
  return f;
}

// ------------------------------------------------------------- UV-IR map

Scalar sign_sf(const std::vector<Token3D> &word) {
  struct Pt {
    int side;
    BoundaryPoint p;
  };
  std::vector<Pt> pts;
  for (int h = 0; h < static_cast<int>(word.size()); ++h) {
    const auto &t = word[h];
    check_fixed(t);
    int s0 = t.states[0].value, s1 = t.states[1].value;
    if (t.biangle) {
      pts.push_back({t.gen, {t.gen, t.forward, s0, h}});
      pts.push_back({3 + t.gen, {t.gen, !t.forward, s1, h}});
    } else {
      auto [e1, e2] = corner_slots(t.gen);
      int off = 3 * (t.block - 1);
      pts.push_back({off + e1, {e1, t.forward, s0, h}});
      pts.push_back({off + e2, {e2, !t.forward, s1, h}});
    }
  }
  Rat b = 0;
  for (const auto &u : pts)
    for (const auto &l : pts)
      if (u.side == l.side && u.p.height < l.p.height)
        b += b_pair_value(u.p, l.p);
  return sign_of(b);
}

namespace {

struct Image {
  Vec v;
  Scalar s;
};

// ->x y* on the hexagon of an abstract triangle, with its angle weight
Scalar weight_xy_star(int k, const std::array<AngleForm, 3> &th) {
  auto [x, y] = corner_slots(k);
  return Scalar::q(Rat(-1, 2)) * Scalar::q_angle(th[x] + th[y], Rat(1, 4));
}

Image pure_image(int k, bool fwd, int eps, const std::array<AngleForm, 3> &th) {
  Scalar w = weight_xy_star(k, th);
  int sheet = (eps > 0) == fwd ? 2 : 1;
  Scalar s = sheet == 2 ? w : w.inverse();
  Vec v = unit_vec(6, hex_gen(k, sheet), fwd ? 1 : -1);
  return {v, fwd ? s : s.inverse()};
}

// abstract triangle token; nullopt on the bad arc
std::optional<Image> triangle_image(int k, bool fwd, int mu, int nu,
                                    const std::array<AngleForm, 3> &th) {
  if (is_bad_arc(mu, nu))
    return std::nullopt;
  if (mu == nu)
    return pure_image(k, fwd, mu, th);
  auto a = pure_image((k + 1) % 3, !fwd, 1, th);
  auto b = pure_image((k + 2) % 3, !fwd, -1, th);
  return Image{vadd(a.v, b.v), a.s * b.s};
}

std::optional<SfAngles> require(const std::optional<SfAngles> &a) {
  if (!a)
    throw NoAngles("the UV-IR map of a face suspension needs an angle structure");
  return a;
}

} // namespace

TorusElem f_sf_token(const Token3D &tok, const std::optional<SfAngles> &angles) {
  require(angles);
  check_fixed(tok);
  auto d = sf_double_cover_torus();
  int mu = tok.states[0].value, nu = tok.states[1].value;
  if (tok.biangle) {
    if (mu != nu)
      return TorusElem(d);
    int k = tok.gen;
    Scalar sp = Scalar::q_angle(angles->theta[k] + angles->theta[3 + k], Rat(1, 4));
    bool p = (mu > 0) == tok.forward;
    Scalar s = p ? sp : sp.inverse();
    return TorusElem::monomial(
        d, unit_vec(18, p ? bigon_p(k) : bigon_m(k), tok.forward ? 1 : -1),
        tok.forward ? s : s.inverse());
  }
  std::optional<Image> img;
  if (tok.block == 1)
    img = triangle_image(tok.gen, tok.forward, mu, nu, block_angles(*angles, 1));
  else
    img = triangle_image(mirror(tok.gen), !tok.forward, nu, mu, block_angles(*angles, 2));
  if (!img)
    return TorusElem(d);
  Vec v(18, 0);
  std::copy(img->v.begin(), img->v.end(), v.begin() + 6 * (tok.block - 1));
  return TorusElem::monomial(d, v, img->s);
}

TorusElem f_sf_word(const std::vector<Token3D> &word, const std::optional<SfAngles> &angles) {
  require(angles);
  auto r = TorusElem::one(sf_double_cover_torus());
  for (const auto &tok : word) {
    r *= f_sf_token(tok, angles);
    if (r.is_zero())
      return r;
  }
  return r * sign_sf(word);
}

TorusElem f_sf(const Suspension3D &s, const std::optional<SfAngles> &angles) {
  return f_sf_word(s.left, angles) * f_sf_word(s.right, angles);
}

namespace {

struct EvMaps {
  TorusHom left, right;
};

EvMaps ev_maps(const SfAngles &angles, const Scalar &ct, const Scalar &cb) {
  auto e = ev_sf_torus();
  Scalar c = Scalar::q(Rat(1, 2)) * ct;
  // hexagon part: S then T, each the 2d evaluation with angle weights
  std::vector<TorusElem> hex(12);
  for (int block = 1; block <= 2; ++block) {
    auto th = block_angles(angles, block);
    for (int k = 0; k < 3; ++k) {
      auto [x, y] = corner_slots(k);
      Vec g(15, 0);
      if (block == 1) {
        g[x] = g[y] = 1;
        g[6 + k] = 1;
      } else {
        g[3 + mirror(x)] = g[3 + mirror(y)] = 1;
        g[9 + mirror(k)] = -1;
      }
      Scalar w = Scalar::q_angle(th[x] + th[y], Rat(-1, 4));
      Vec inv = g;
      for (int i = 0; i < 6; ++i)
        inv[i] = -inv[i];
      int off = 6 * (block - 1);
      hex[off + hex_gen(k, 2)] = TorusElem::monomial(e, g, c * w);
      hex[off + hex_gen(k, 1)] = TorusElem::monomial(e, inv, (c * w).inverse());
    }
  }
  auto hex_src = QuantumTorus::tensor({hexagon_torus(), hexagon_torus()}, {"S", "T"});
  std::vector<TorusElem> bi(6);
  for (int k = 0; k < 3; ++k) {
    Vec g(15, 0);
    g[k] = g[3 + k] = 1;
    g[12 + k] = 1;
    Vec inv = g;
    inv[k] = inv[3 + k] = -1;
    Scalar w = cb * Scalar::q_angle(angles.theta[k] + angles.theta[3 + k], Rat(-1, 4));
    bi[2 * k] = TorusElem::monomial(e, g, w);
    bi[2 * k + 1] = TorusElem::monomial(e, inv, w.inverse());
  }
  return {TorusHom(hex_src, e, hex), TorusHom(bigon_double_torus(), e, bi)};
}

} // namespace

TorusElem ev_sf(const TorusElem &h, const SfAngles &angles, const Scalar &ct,
                const Scalar &cb) {
  check_constants(ct, cb);
  auto d = sf_double_cover_torus();
  if (!h.torus() || !h.torus()->same_as(*d))
    throw TorusMismatch("element is not in the face-suspension double cover");
  auto maps = ev_maps(angles, ct, cb);
  TorusElem r(ev_sf_torus());
  for (const auto &[g, c] : h.terms()) {
    Vec l(g.begin(), g.begin() + kBigon), rt(g.begin() + kBigon, g.end());
    r += maps.left.image_of(l) * maps.right.image_of(rt) * c;
  }
  return r;
}

TorusElem pi_sf(const Suspension3D &s, const Scalar &ct, const Scalar &cb) {
  check_constants(ct, cb);
  auto e = ev_sf_torus();
  auto r = TorusElem::one(e);
  for (const auto *word : {&s.left, &s.right}) {
    for (const auto &tok : *word) {
      check_fixed(tok);
      auto w = sf_token_weight(tok, tok.states[0].value, tok.states[1].value, ct, cb);
      if (w.is_zero())
        return TorusElem(e);
      Vec g(15, 0);
      int idx = tok.biangle ? 12 + tok.gen : 6 + 3 * (tok.block - 1) + tok.gen;
      g[idx] = tok.forward ? 1 : -1;
      r *= w.embed(e, 0) * TorusElem::monomial(e, g);
    }
    r = r * sign_sf(*word);
  }
  return r;
}

// --------------------------------------------------------------- gluing

TorusPtr glued_torus_3d(const Mfld3Tri &t) {
  std::vector<std::string> names;
  for (const auto &tet : t.tets())
    for (int e = 0; e < 6; ++e) {
      auto [u, v] = edge_vertices(e);
      names.push_back("w(" + tet.id + "." + tet.v[u] + tet.v[v] + ")");
    }
  return QuantumTorus::tensor({shape_torus(t), commuting(names)});
}

namespace {

struct Partial {
  Vec bare, flux;
  Scalar s;
};

} // namespace

TorusElem glue_3d(const Mfld3Tri &t, const std::vector<std::pair<int, TorusElem>> &parts) {
  const int nf = static_cast<int>(t.faces().size());
  const int nt = static_cast<int>(t.tets().size());
  auto e = ev_sf_torus();
  std::vector<Partial> acc = {{Vec(6 * nf, 0), Vec(6 * nf, 0), Scalar(1)}};
  std::set<int> seen;
  for (const auto &[f, elem] : parts) {
    if (f < 0 || f >= nf || !seen.insert(f).second)
      throw InvalidPresentation("face index " + std::to_string(f) + " missing or repeated");
    if (!elem.torus() || !elem.torus()->same_as(*e))
      throw TorusMismatch("glue expects evaluated face-suspension elements");
    auto red = reduce_gl1_sf(elem);
    std::vector<Partial> next;
    for (const auto &p : acc)
      for (const auto &[g, c] : red.terms()) {
        Partial q = p;
        auto flux = sf_flux(Vec(g.begin() + 6, g.end()));
        for (int i = 0; i < 6; ++i) {
          q.bare[6 * f + i] = g[i];
          q.flux[6 * f + i] = flux[i];
        }
        q.s = p.s * c;
        next.push_back(std::move(q));
      }
    acc = std::move(next);
  }
  auto out_t = glued_torus_3d(t);
  TorusElem out(out_t);
  for (const auto &p : acc) {
    Vec web(6 * nt, 0);
    for (int tet = 0; tet < nt; ++tet)
      for (int edge = 0; edge < 6; ++edge) {
        auto bc = t.bare_cones({tet, edge});
        if (bc.empty())
          continue;
        int sum = 0;
        for (int b : bc)
          sum += p.flux[b];
        if (bc.size() == 2 && sum != 0)
          throw DegreeMismatch("gl1 flux does not cancel at edge cone " + out_t->name(3 * nt + 6 * tet + edge));
        web[6 * tet + edge] = p.flux[bc[0]];
      }
    auto shape = t.to_shape(p.bare);
    if (!shape)
      throw InvalidPresentation("glued trace is not a product of edge cones");
    Vec v = *shape;
    v.insert(v.end(), web.begin(), web.end());
    out.add_term(v, p.s);
  }
  return out;
}

TorusElem gl1_glue(const Mfld3Tri &t, const std::vector<std::pair<int, TorusElem>> &parts) {
  auto g = gl1_sf_torus();
  std::vector<std::pair<int, TorusElem>> lifted;
  for (const auto &[f, elem] : parts) {
    if (!elem.torus() || !elem.torus()->same_as(*g))
      throw TorusMismatch("gl1_glue expects gl1 face-suspension elements");
    lifted.push_back({f, elem.embed(ev_sf_torus(), 6)});
  }
  return glue_3d(t, lifted);
}

// ---------------------------------------------------------- compatibility

namespace {

Suspension3D fixed(const Suspension3D &s, const std::map<std::string, int> &st) {
  Suspension3D r = s;
  for (auto *word : {&r.left, &r.right})
    for (auto &tok : *word)
      for (auto &e : tok.states)
        e = EndState{e.resolve(st), "", 1};
  return r;
}

std::string state_label(const std::map<std::string, int> &st) {
  std::string out;
  for (const auto &[v, x] : st)
    out += (out.empty() ? "" : " ") + v + (x > 0 ? "=+" : "=-");
  return out.empty() ? "empty" : out;
}

// shape part reduced in the SQGM, web part kept
TorusElem reduce_glued(const SQGM &g, const TorusElem &e) {
  const int n = g.torus()->rank();
  TorusElem out(e.torus());
  for (const auto &[v, c] : e.terms()) {
    auto red = g.reduce(TorusElem::monomial(g.torus(), Vec(v.begin(), v.begin() + n), c));
    for (const auto &[h, d] : red.terms()) {
      Vec w = h;
      w.insert(w.end(), v.begin() + n, v.end());
      out.add_term(w, d);
    }
  }
  return out;
}

struct StateImages {
  std::vector<TorusElem> uv, pi; // per suspension, gl1-reduced
};

StateImages state_images(const Mfld3Tri &t, const SplitPresentation3D &p,
                         const std::map<std::string, int> &st, const Scalar &ct,
                         const Scalar &cb) {
  StateImages r;
  for (const auto &s : p.suspensions) {
    auto fs = fixed(s, st);
    auto a = sf_angles(t, s.face);
    r.uv.push_back(reduce_gl1_sf(ev_sf(f_sf(fs, a), a, ct, cb)));
    r.pi.push_back(reduce_gl1_sf(pi_sf(fs, ct, cb)));
  }
  return r;
}

TorusElem glue_state(const Mfld3Tri &t, const SplitPresentation3D &p,
                     const std::vector<TorusElem> &parts, const Scalar &pref) {
  std::vector<std::pair<int, TorusElem>> in;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].is_zero())
      return TorusElem(glued_torus_3d(t));
    in.push_back({t.face_index(p.suspensions[i].face), parts[i]});
  }
  return glue_3d(t, in) * pref;
}

std::string render_glued(const SQGM &g, const TorusElem &e) {
  return reduce_glued(g, e).str();
}

} // namespace

Report compat_check_3d(const Mfld3Tri &t, const SplitPresentation3D &p, const Scalar &ct,
                       const Scalar &cb) {
  validate(t, p);
  check_constants(ct, cb);
  SQGM g(t);
  auto all = assignments(p.variables());
  const bool per_state = all.size() <= 16;
  std::vector<CheckRecord> per_susp;
  std::vector<bool> failed(p.suspensions.size(), false);
  for (const auto &s : p.suspensions)
    per_susp.push_back({"suspension " + s.face, "", "", true, ""});

  auto out_t = glued_torus_3d(t);
  TorusElem lhs_total(out_t), rhs_total(out_t);
  Report rep{"compat_3d", {}};
  std::vector<CheckRecord> states;
  for (const auto &st : all) {
    auto im = state_images(t, p, st, ct, cb);
    for (std::size_t i = 0; i < im.uv.size(); ++i) {
      if (failed[i])
        continue;
      auto rec = compare(per_susp[i].name, im.uv[i], im.pi[i]);
      if (!rec.equal) {
        rec.name += " (" + state_label(st) + ")";
        per_susp[i] = rec;
        failed[i] = true;
      }
    }
    Scalar pref = p.prefactor_at(st) * p.coefficient;
    auto lhs = glue_state(t, p, im.uv, pref);
    auto rhs = glue_state(t, p, im.pi, pref);
    lhs_total += lhs;
    rhs_total += rhs;
    if (per_state) {
      auto rec = compare("state " + state_label(st), lhs, rhs);
      rec.lhs = render_glued(g, lhs);
      rec.rhs = render_glued(g, rhs);
      states.push_back(rec);
    }
  }
  for (std::size_t i = 0; i < per_susp.size(); ++i) {
    if (!failed[i])
      per_susp[i].lhs = per_susp[i].rhs = std::to_string(all.size()) + " assignments";
    rep.add(per_susp[i]);
  }
  for (auto &r : states)
    rep.add(r);
  auto total = compare("glued total", lhs_total, rhs_total);
  total.lhs = render_glued(g, lhs_total);
  total.rhs = render_glued(g, rhs_total);
  rep.add(total);
  rep.add(compare("angle-free total", Scalar(lhs_total.has_angles() || rhs_total.has_angles()),
                  Scalar(0)));
  return rep;
}

namespace {

// glued web of the strands themselves, with its canonical scalar
std::pair<Vec, Scalar> own_web(const Mfld3Tri &t, const SplitPresentation3D &p) {
  auto gt = gl1_sf_torus();
  std::vector<std::pair<int, TorusElem>> parts;
  for (const auto &s : p.suspensions) {
    auto x = TorusElem::one(gt);
    for (const auto *word : {&s.left, &s.right})
      for (const auto &tok : *word) {
        int idx = tok.biangle ? 6 + tok.gen : 3 * (tok.block - 1) + tok.gen;
        x *= TorusElem::monomial(gt, unit_vec(9, idx, tok.forward ? 1 : -1));
      }
    parts.push_back({t.face_index(s.face), x});
  }
  auto glued = gl1_glue(t, parts);
  const auto &[v, c] = *glued.terms().begin();
  int n = 3 * static_cast<int>(t.tets().size());
  return {Vec(v.begin() + n, v.end()), c};
}

} // namespace

Vec presentation_web(const Mfld3Tri &t, const SplitPresentation3D &p) {
  validate(t, p);
  return own_web(t, p).first;
}

TorusElem recover_trace(const Mfld3Tri &t, const SplitPresentation3D &p,
                        const std::optional<Vec> &ref, const Scalar &ct, const Scalar &cb) {
  validate(t, p);
  check_constants(ct, cb);
  SQGM g(t);
  auto [web, scale] = own_web(t, p);
  if (ref) {
    if (ref->size() != web.size())
      throw RankMismatch("reference web has " + std::to_string(ref->size()) +
                         " coordinates, expected " + std::to_string(web.size()));
    if (*ref != web) {
      web = *ref;
      scale = 1;
    }
  }
  auto out_t = glued_torus_3d(t);
  TorusElem total(out_t);
  for (const auto &st : assignments(p.variables())) {
    auto im = state_images(t, p, st, ct, cb);
    total += glue_state(t, p, im.uv, p.prefactor_at(st) * p.coefficient);
  }
  const int n = g.torus()->rank();
  TorusElem r(g.torus());
  for (const auto &[v, c] : total.terms())
    if (Vec(v.begin() + n, v.end()) == web)
      r.add_term(Vec(v.begin(), v.begin() + n), c * scale.inverse());
  return g.reduce(r);
}

Report gl1_detour_check() {
  auto gt = gl1_triangle_torus();
  Report rep{"gl1 detour", {}};
  Scalar half = Scalar::zeta() * Scalar::A(Rat(1, 2));
  for (int k = 0; k < 3; ++k) {
    auto lhs = TorusElem::monomial(gt, unit_vec(3, k)) *
               TorusElem::monomial(gt, unit_vec(3, (k + 1) % 3));
    auto rhs = TorusElem::monomial(gt, unit_vec(3, (k + 2) % 3, -1), half);
    auto red = [](const TorusElem &e) { return reduce_mod(e, {gl1_central()}); };
    rep.add(compare(corner_name(k) + " then " + corner_name((k + 1) % 3), red(lhs), red(rhs)));
  }
  return rep;
}

// ------------------------------------------------------------ cone point

TorusPtr cone_torus() {
  static const TorusPtr t = [] {
    std::vector<std::vector<int>> m(3, std::vector<int>(3, 0)), s = m;
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3;
      m[i][j] = 4;
      m[j][i] = -4;
      s[i][j] = 2;
      s[j][i] = -2;
    }
    return QuantumTorus::make({"x", "x'", "x''"}, m, s);
  }();
  return t;
}

MonomialRelation cone_central() { return {Vec(3, 1), Scalar(-1), Side::Central}; }

Report cone_3term_check(const Mfld3Tri &before, const std::string &face,
                        const std::optional<AngleForm> &free_angle) {
  PachnerResult res;
  try {
    res = pachner_2_3(before, face, free_angle);
  } catch (const UnknownId &e) {
    throw NotAPachnerPair(e.what());
  } catch (const SelfAdjacentFace &e) {
    throw NotAPachnerPair(e.what());
  }
  Report rep{"cone " + face, {}};
  const auto &after = res.after;
  const auto &a = res.apex_top, &e = res.apex_bottom;
  const auto &[b, c, d] = res.face_vertices;

  // angle structures
  for (const auto &tid : res.fresh) {
    const auto &tet = after.tets()[after.tet_index(tid)];
    auto sum = (tet.angle[0] + tet.angle[1] + tet.angle[2] - AngleForm(1)).eliminated();
    rep.add(compare("angle sum " + tid, Scalar::q_angle(sum), Scalar(1)));
  }
  {
    AngleForm sum;
    for (const auto &tid : res.fresh) {
      const auto &tet = after.tets()[after.tet_index(tid)];
      sum = sum + tet.angle[edge_type(local_edge(tet.vertex(a), tet.vertex(e)))];
    }
    rep.add(compare("angle sum around " + a + e, Scalar::q_angle(sum - AngleForm(2)), Scalar(1)));
  }

  // sign: one meridian before, one per new face through a and e after
  int meridians = 0;
  for (const auto &f : after.faces()) {
    const auto &tet = after.tets()[f.top.tet];
    std::set<std::string> vs;
    for (int i = 0; i < 4; ++i)
      if (i != f.top.opp)
        vs.insert(tet.v[i]);
    if (vs.count(a) && vs.count(e))
      ++meridians;
  }
  rep.add(compare("sign relation", Scalar(-1).pow(meridians), Scalar(-1)));

  // 3-term transport over the formal diagrams D1..D6
  const auto &top = before.tets()[before.tet_index(res.top)];
  const auto &bot = before.tets()[before.tet_index(res.bottom)];
  auto ang = [](const Tet &t, const std::string &u, const std::string &v) {
    return t.angle[edge_type(local_edge(t.vertex(u), t.vertex(v)))];
  };
  AngleForm th = ang(top, a, b), thp = ang(top, a, c), thpp = ang(top, a, d);
  // bottom tetrahedron, through the face gluing
  const auto &fs = before.faces()[before.face_index(face)];
  auto bang = [&](const std::string &u) {
    int lu = fs.map[top.vertex(u)];
    return bot.angle[edge_type(local_edge(fs.bottom.opp, lu))];
  };
  AngleForm et = bang(b), etp = bang(c), etpp = bang(d);
  AngleForm z = res.free_angle, pi(1);
  auto dt = commuting({"D1", "D2", "D3", "D4", "D5", "D6"});
  auto D = [&](int i) { return TorusElem::monomial(dt, unit_vec(6, i - 1)); };
  auto Q = [](const AngleForm &f) { return Scalar::q_angle(f); };
  auto lhs = (D(3) * Q(th - z) + D(4) * Q(-thp - etp)) * Q(z) +
             (D(5) * Q(th + et) + D(6) * Q(-(z + etpp - th))) * Q(-(pi - z - thpp - etpp));
  auto rhs = D(3) * Q(th) + D(6) * Q(-thp) +
             (D(4) + D(5) * Scalar::q()) * Q(z - thp - etp);
  rep.add(compare("3-term expansion", lhs, rhs));
  // framing: D5 = -q^-1 D4
  TorusElem framed(dt);
  for (const auto &[v, s] : rhs.terms()) {
    if (v[4])
      framed.add_term(unit_vec(6, 3), -s * Scalar::q(-1));
    else
      framed.add_term(v, s);
  }
  rep.add(compare("3-term transport", framed, D(3) * Q(th) + D(6) * Q(-thp)));

  // cone torus
  auto ct = cone_torus();
  auto x = [&](int i, int p = 1) { return TorusElem::monomial(ct, unit_vec(3, i, p)); };
  auto one = TorusElem::one(ct);
  for (int i = 0; i < 3; ++i)
    rep.add(compare("cone central " + ct->name(i),
                    Scalar(ct->commutes(Vec(3, 1), unit_vec(3, i)) ? 1 : 0), Scalar(1)));
  auto weyl = TorusElem::monomial(ct, Vec(3, 1));
  rep.add(compare("weyl x x' x''", x(0) * x(1) * x(2) * Scalar::q(-1), weyl));
  rep.add(compare("weyl x' x x''", x(1) * x(0) * x(2) * Scalar::q(), weyl));
  for (int i = 0; i < 3; ++i) {
    auto cyc = x(i) * x((i + 1) % 3) * x((i + 2) % 3);
    rep.add(compare("cycle " + ct->name(i), reduce_mod(cyc, {cone_central()}),
                    TorusElem::constant(ct, -Scalar::q())));
  }
  auto i1 = x(2) - one + x(0, -1);
  auto i2 = x(0) - one + x(1, -1);
  auto ideal = x(1) * x(0) * i1 * Scalar::q() + x(1) * i2 * Scalar::q();
  rep.add(compare("module identity", weyl + one * Scalar::q(), ideal));
  rep.add(compare("cyclic vector value", weyl - ideal, TorusElem::constant(ct, -Scalar::q())));
  return rep;
}

} // namespace skeintrace
