#include "skeintrace/uvir2d.hpp"
#include "skeintrace/errors.hpp"

#include <set>
#include <sstream>

namespace skeintrace {

// ------------------------------------------------------------------ tori

namespace {

TorusPtr make_hexagon(bool reversed) {
  std::vector<std::string> names = {"alpha1", "beta2", "gamma1", "alpha2", "beta1", "gamma2"};
  std::vector<std::vector<int>> m(6, std::vector<int>(6, 0)), s = m;
  int sg = reversed ? -1 : 1;
  auto set = [&](int i, int j, int mm, int ss) {
    m[i][j] = sg * mm;
    m[j][i] = -sg * mm;
    s[i][j] = sg * ss;
    s[j][i] = -sg * ss;
  };
  for (int i = 0; i < 5; ++i)
    set(i, i + 1, 2, 1);
  set(5, 0, 2, 1);
  // alpha1 gamma1, gamma1 beta1, beta1 alpha1
  set(0, 2, 0, 1);
  set(2, 4, 0, 1);
  set(4, 0, 0, 1);
  // beta2 alpha2, alpha2 gamma2, gamma2 beta2
  set(1, 3, 0, -1);
  set(3, 5, 0, -1);
  set(5, 1, 0, -1);
  auto t = QuantumTorus::make(names, m, s);
  Vec all(6, 1);
  for (int i = 0; i < 6; ++i)
    if (!t->commutes(all, unit_vec(6, i)))
      throw ConstraintViolation("hexagon monomial is not central");
  return t;
}

} // namespace

TorusPtr hexagon_torus(bool reversed) {
  static const TorusPtr plain = make_hexagon(false), mirrored = make_hexagon(true);
  return reversed ? mirrored : plain;
}

MonomialRelation hexagon_central() { return {Vec(6, 1), Scalar(-1), Side::Central}; }

int hex_gen(int corner, int sheet) {
  static const int table[3][2] = {{0, 3}, {4, 1}, {2, 5}};
  if (corner < 0 || corner > 2 || (sheet != 1 && sheet != 2))
    throw Malformed("no hexagon generator for corner " + std::to_string(corner) +
                    " sheet " + std::to_string(sheet));
  return table[corner][sheet - 1];
}

TorusPtr gl1_triangle_torus(bool reversed) {
  int sg = reversed ? -1 : 1;
  std::vector<std::vector<int>> m(3, std::vector<int>(3, 0));
  for (int i = 0; i < 3; ++i) {
    m[i][(i + 1) % 3] = sg;
    m[(i + 1) % 3][i] = -sg;
  }
  auto t = QuantumTorus::make({"alpha", "beta", "gamma"}, m, m);
  for (int i = 0; i < 3; ++i)
    if (!t->commutes(Vec(3, 1), unit_vec(3, i)))
      throw ConstraintViolation("gl1 triangle monomial is not central");
  return t;
}

MonomialRelation gl1_central() { return {Vec(3, 1), Scalar(1), Side::Central}; }

TorusPtr ev_target_torus() {
  static const TorusPtr t =
      QuantumTorus::tensor({triangle_torus(), gl1_triangle_torus()}, {"T", "gl1"});
  return t;
}

// ----------------------------------------------------------- stated words

Strand2D token(int corner, bool forward, int mu, int nu) {
  Strand2D s;
  s.corner = corner;
  s.forward = forward;
  s.states = {EndState{mu, ""}, EndState{nu, ""}};
  return s;
}

StatedWord StatedWord::parse(const std::string &text) {
  StatedWord w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 5 || (tok.compare(0, 2, "->") != 0 && tok.compare(0, 2, "<-") != 0))
      throw ParseError("bad token '" + tok + "'");
    bool fwd = tok[1] == '>';
    auto st = [&](char c) {
      if (c == '+')
        return 1;
      if (c == '-')
        return -1;
      throw ParseError("bad state in '" + tok + "'");
    };
    int mu = st(tok[tok.size() - 2]), nu = st(tok.back());
    int corner;
    try {
      corner = corner_from(tok.substr(2, tok.size() - 4));
    } catch (const Malformed &e) {
      throw ParseError(e.what());
    }
    w.tokens.push_back(token(corner, fwd, mu, nu));
  }
  return w;
}

std::string StatedWord::str() const {
  std::string out;
  for (const auto &t : tokens) {
    if (!out.empty())
      out += ' ';
    out += t.forward ? "->" : "<-";
    out += corner_name(t.corner);
    for (const auto &e : t.states)
      out += e.fixed() ? (e.value > 0 ? "+" : "-") : "{" + std::string(e.sign < 0 ? "-" : "") + e.var + "}";
  }
  return out;
}

StatedWord StatedWord::operator*(const StatedWord &o) const {
  StatedWord r = *this;
  r.tokens.insert(r.tokens.end(), o.tokens.begin(), o.tokens.end());
  return r;
}

bool StatedWord::fixed() const {
  for (const auto &t : tokens)
    for (const auto &e : t.states)
      if (!e.fixed())
        return false;
  return true;
}

std::vector<BoundaryPoint> boundary_points(const StatedWord &w) {
  if (!w.fixed())
    throw UnresolvedState("word has state variables: " + w.str());
  std::vector<BoundaryPoint> pts;
  for (int h = 0; h < static_cast<int>(w.tokens.size()); ++h) {
    const auto &t = w.tokens[h];
    auto [e1, e2] = corner_slots(t.corner);
    pts.push_back({e1, t.forward, t.states[0].value, h});
    pts.push_back({e2, !t.forward, t.states[1].value, h});
  }
  return pts;
}

Rat b_pair_value(const BoundaryPoint &upper, const BoundaryPoint &lower) {
  // X = {out+, in-}, Y = {in+, out-}
  auto in_x = [](const BoundaryPoint &p) { return p.out == (p.state > 0); };
  if (in_x(upper) == in_x(lower))
    return 0;
  // the value is +1/2 when the pair is (out+,in+), (in-,out-), (in+,in-), (out-,out+)
  bool positive = upper.out == (upper.state > 0) ? upper.out != lower.out
                                                 : upper.out == lower.out;
  return positive ? Rat(1, 2) : Rat(-1, 2);
}

namespace {

Rat mod2(Rat r) {
  while (r < 0)
    r += 2;
  while (r >= 2)
    r -= 2;
  return r;
}

} // namespace

Rat b_of(const StatedWord &w) {
  auto pts = boundary_points(w);
  Rat b = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (pts[i].slot == pts[j].slot && pts[i].height < pts[j].height)
        b += b_pair_value(pts[i], pts[j]);
  return mod2(b);
}

Rat b_of(const StatedWord &w1, const StatedWord &w2) {
  return mod2(b_of(w1 * w2) - b_of(w1) - b_of(w2));
}

Scalar sign_of(const Rat &b) {
  Rat twice = mod2(b) * 2;
  if (twice.denominator() != 1)
    throw Malformed("sign exponent is not a half integer");
  return Scalar::zeta().pow(static_cast<int>(twice.numerator()));
}

TorusElem PiImage::traced(const Scalar &ct) const {
  auto t = ev_target_torus();
  TorusElem r = TorusElem::constant(t, sign);
  for (std::size_t i = 0; i < sl2.size(); ++i) {
    const auto &[k, st] = sl2[i];
    r *= corner_weight(k, st[0], st[1], ct).embed(t, 0) *
         TorusElem::monomial(t, unit_vec(6, 3 + gl1[i].first, gl1[i].second));
  }
  return r;
}

PiImage pi_map(const StatedWord &w) {
  PiImage p;
  p.sign = sign_of(b_of(w));
  for (const auto &t : w.tokens) {
    p.sl2.push_back({t.corner, {t.states[0].value, t.states[1].value}});
    p.gl1.push_back({t.corner, t.forward ? 1 : -1});
  }
  return p;
}

std::pair<StatedWord, Scalar> twisted_mul(const StatedWord &w1, const StatedWord &w2) {
  return {w1 * w2, sign_of(-b_of(w1, w2))};
}

// ------------------------------------------------------------- UV-IR map

namespace {

TorusElem f_fixed(int corner, bool forward, int mu, int nu) {
  auto h = hexagon_torus();
  if (is_bad_arc(mu, nu))
    return TorusElem(h);
  auto gen = [&](int k, int sheet, int p) {
    return unit_vec(6, hex_gen(k, sheet), p);
  };
  auto pure = [&](int k, bool fwd, int eps) {
    if (fwd)
      return eps < 0 ? gen(k, 1, 1) : gen(k, 2, 1);
    return eps > 0 ? gen(k, 1, -1) : gen(k, 2, -1);
  };
  if (mu == nu)
    return TorusElem::monomial(h, pure(corner, forward, mu));
  // (-,+): the corner composed through the other two sides
  int k1 = (corner + 1) % 3, k2 = (corner + 2) % 3;
  Vec v = vadd(pure(k1, !forward, 1), pure(k2, !forward, -1));
  return TorusElem::monomial(h, v);
}

} // namespace

TorusElem f_token(const Strand2D &t) {
  if (!t.states[0].fixed() || !t.states[1].fixed())
    throw UnresolvedState("token has state variables");
  return f_fixed(t.corner, t.forward, t.states[0].value, t.states[1].value);
}

TorusElem f_triangle(const StatedWord &w) {
  auto h = hexagon_torus();
  TorusElem r = TorusElem::one(h);
  for (const auto &t : w.tokens) {
    r *= f_token(t);
    if (r.is_zero())
      return r;
  }
  return r * sign_of(b_of(w));
}

TorusHom ev_triangle_hom(const Scalar &ct) {
  auto t = ev_target_torus();
  std::vector<TorusElem> images(6);
  for (int k = 0; k < 3; ++k) {
    auto [e1, e2] = corner_slots(k);
    Vec g(6, 0);
    g[e1] = 1;
    g[e2] = 1;
    g[3 + k] = 1;
    Vec inv = g;
    inv[e1] = inv[e2] = -1;
    images[hex_gen(k, 1)] = TorusElem::monomial(t, inv, ct.inverse());
    images[hex_gen(k, 2)] = TorusElem::monomial(t, g, ct);
  }
  return TorusHom(hexagon_torus(), t, images);
}

TorusElem ev_triangle(const TorusElem &h, const Scalar &ct) { return ev_triangle_hom(ct)(h); }

TorusElem reduce_gl1(const TorusElem &e) {
  auto rel = gl1_central();
  Vec v(3, 0);
  v.insert(v.end(), rel.vector.begin(), rel.vector.end());
  return reduce_mod(e, {{v, rel.scalar, Side::Central}});
}

// ------------------------------------------------------- glued surfaces

TorusPtr hex_cover_torus(const SurfaceTri &s) {
  std::vector<TorusPtr> parts;
  std::vector<std::string> ids;
  for (const auto &t : s.triangles()) {
    parts.push_back(hexagon_torus());
    ids.push_back(t.id);
  }
  return QuantumTorus::tensor(parts, ids);
}

TorusPtr ev_cover_torus(const SurfaceTri &s) {
  std::vector<TorusPtr> parts;
  std::vector<std::string> ids;
  for (const auto &t : s.triangles()) {
    parts.push_back(ev_target_torus());
    ids.push_back(t.id);
  }
  return QuantumTorus::tensor(parts, ids);
}

TorusHom ev_cover_hom(const SurfaceTri &s, const Scalar &ct) {
  auto src = hex_cover_torus(s), dst = ev_cover_torus(s);
  auto local = ev_triangle_hom(ct);
  std::vector<TorusElem> images;
  for (std::size_t t = 0; t < s.triangles().size(); ++t)
    for (const auto &img : local.images())
      images.push_back(img.embed(dst, 6 * static_cast<int>(t)));
  return TorusHom(src, dst, images, false);
}

TorusPtr glued_torus(const SurfaceTri &s, const std::vector<std::string> &web_edges) {
  auto n = web_edges.size();
  std::vector<std::vector<int>> zero(n, std::vector<int>(n, 0));
  auto web = QuantumTorus::make(web_edges, zero, zero);
  return QuantumTorus::tensor({s.sqts_torus(true), web}, {"tr", "web"});
}

TorusElem glue_2d(const SurfaceTri &s, const TorusElem &e,
                  const std::vector<std::string> &web_edges) {
  auto cover = ev_cover_torus(s);
  if (!e.torus() || !e.torus()->same_as(*cover))
    throw TorusMismatch("element is not in the evaluated cover of this triangulation");
  auto out_t = glued_torus(s, web_edges);
  auto bare_t = s.bare_torus();
  const int n = static_cast<int>(s.triangles().size());
  const int r = s.sqts_torus(true)->rank();
  TorusElem out(out_t);
  for (const auto &[g, c] : e.terms()) {
    Vec bare(3 * n, 0), flux(3 * n, 0);
    for (int t = 0; t < n; ++t) {
      int p = g[6 * t + 3], q = g[6 * t + 4], rr = g[6 * t + 5];
      for (int j = 0; j < 3; ++j)
        bare[3 * t + j] = g[6 * t + j];
      flux[3 * t + 0] = q - rr;
      flux[3 * t + 1] = rr - p;
      flux[3 * t + 2] = p - q;
    }
    for (const auto &edge : s.edges()) {
      const auto &sl = s.slots(edge);
      if (sl.size() == 2 &&
          flux[3 * sl[0].tri + sl[0].slot] + flux[3 * sl[1].tri + sl[1].slot] != 0)
        throw DegreeMismatch("gl1 flux does not match across edge " + edge);
    }
    auto pushed = push_to_edges(s, TorusElem::monomial(bare_t, bare));
    const auto &[h, hc] = *pushed.terms().begin();
    Vec v = h;
    v.resize(r + web_edges.size(), 0);
    for (std::size_t i = 0; i < web_edges.size(); ++i) {
      const auto &sl = s.slots(web_edges[i]);
      v[r + i] = flux[3 * sl[0].tri + sl[0].slot];
    }
    out.add_term(v, c * hc);
  }
  return out;
}

Report compat_check_word(const StatedWord &w, const Scalar &ct) {
  Report rep{"compat " + w.str(), {}};
  auto lhs = reduce_gl1(ev_triangle(f_triangle(w), ct));
  auto rhs = reduce_gl1(pi_map(w).traced(ct));
  rep.add(compare("triangle", lhs, rhs));
  return rep;
}

Report compat_check_2d(const SurfaceTri &s, const SplitPresentation2D &p, const Scalar &ct) {
  validate(s, p);
  auto vars = p.variables();
  if (vars.size() > 20)
    throw InvalidPresentation("too many state variables");
  const int n = static_cast<int>(s.triangles().size());
  auto hex_t = hex_cover_torus(s);
  auto ev_t = ev_cover_torus(s);
  auto ev = ev_cover_hom(s, ct);
  auto edges = s.edges();
  auto out_t = glued_torus(s, edges);
  TorusElem lhs_total(out_t), rhs_total(out_t);
  std::vector<CheckRecord> per_tri(n);
  std::vector<bool> failed(n, false);
  for (int t = 0; t < n; ++t)
    per_tri[t] = {"triangle " + s.triangles()[t].id, "", "", true, ""};

  const long long total = 1LL << vars.size();
  for (long long bits = 0; bits < total; ++bits) {
    std::map<std::string, int> st;
    for (std::size_t i = 0; i < vars.size(); ++i)
      st[vars[i]] = (bits >> i) & 1 ? -1 : 1;
    std::vector<StatedWord> words(n);
    for (const auto &strand : p.strands) {
      Strand2D r = strand;
      for (auto &e : r.states)
        if (!e.fixed())
          e = EndState{e.resolve(st), ""};
      words[s.triangle_index(strand.tri)].tokens.push_back(r);
    }
    TorusElem lhs = TorusElem::one(hex_t), rhs = TorusElem::one(ev_t);
    for (int t = 0; t < n; ++t) {
      auto f = f_triangle(words[t]);
      auto pi = pi_map(words[t]).traced(ct);
      if (!failed[t]) {
        auto rec = compare(per_tri[t].name, reduce_gl1(ev_triangle(f, ct)), reduce_gl1(pi));
        if (!rec.equal) {
          rec.name += " (" + words[t].str() + ")";
          per_tri[t] = rec;
          failed[t] = true;
        }
      }
      lhs *= f.embed(hex_t, 6 * t);
      rhs *= pi.embed(ev_t, 6 * t);
    }
    Scalar pref = p.prefactor_at(st) * p.coefficient;
    lhs_total += glue_2d(s, ev(lhs), edges) * pref;
    rhs_total += glue_2d(s, rhs, edges) * pref;
  }
  Report rep{"compat_2d", {}};
  for (auto &r : per_tri) {
    if (!failed[&r - per_tri.data()])
      r.lhs = r.rhs = std::to_string(total) + " assignments";
    rep.add(r);
  }
  rep.add(compare("glued", lhs_total, rhs_total));
  return rep;
}

// -------------------------------------------------------- flip of an edge

namespace {

// position of a lift on the hexagon a, b*, c, a*, b, c*
int hex_position(int slot, bool star) {
  static const int table[3][2] = {{0, 3}, {4, 1}, {2, 5}};
  return table[slot][star ? 1 : 0];
}

// generator joining position i to i+1
int hex_step(int i) { return (i + 5) % 6; }

int slot_of(const Triangle &t, const std::string &edge) {
  for (int k = 0; k < 3; ++k)
    if (t.edges[k] == edge)
      return k;
  throw UnknownId("edge '" + edge + "' is not a side of triangle " + t.id);
}

} // namespace

Vec lift_vector(const SurfaceTri &s, const LiftStep &step) {
  const auto &t = s.triangles().at(step.tri);
  int p = hex_position(slot_of(t, step.from), step.from_star);
  int q = hex_position(slot_of(t, step.to), step.to_star);
  Vec v(6 * s.triangles().size(), 0);
  int off = 6 * step.tri;
  switch ((q - p + 6) % 6) {
  case 1:
    v[off + hex_step(p)] = 1;
    break;
  case 5:
    v[off + hex_step(q)] = -1;
    break;
  case 2:
    v[off + hex_step(p)] = 1;
    v[off + hex_step((p + 1) % 6)] = 1;
    break;
  case 4:
    v[off + hex_step(q)] = -1;
    v[off + hex_step((q + 1) % 6)] = -1;
    break;
  default:
    throw Malformed("no arc between lifts of the same side");
  }
  return v;
}

TorusElem lift_path(const SurfaceTri &s, const std::vector<LiftStep> &steps) {
  auto t = hex_cover_torus(s);
  Vec v(t->rank(), 0);
  for (const auto &st : steps)
    v = vadd(v, lift_vector(s, st));
  return TorusElem::monomial(t, v);
}

QuadCover quad_cover(const SurfaceTri &s, const std::string &edge) {
  QuadCover qc{s, s.flip(edge), edge, "", {}, nullptr, {}, {}};
  const auto &sl = s.slots(edge);
  const int t1 = sl[0].tri, t2 = sl[1].tri;
  const auto &a = s.triangles()[t1];
  const auto &b = s.triangles()[t2];
  qc.outer = {a.edges[(sl[0].slot + 1) % 3], a.edges[(sl[0].slot + 2) % 3],
              b.edges[(sl[1].slot + 1) % 3], b.edges[(sl[1].slot + 2) % 3]};
  std::set<std::string> distinct(qc.outer.begin(), qc.outer.end());
  distinct.insert(edge);
  if (distinct.size() != 5)
    throw OutOfDomain("the quadrilateral around '" + edge + "' has repeated edges");
  qc.fresh = qc.after.triangles()[t1].edges[1];
  const auto &[y, z, v, w] = qc.outer;
  const auto &x = edge;
  const auto &xp = qc.fresh;
  const auto &before = qc.before;
  const auto &after = qc.after;

  std::vector<std::string> names;
  auto corner = [&](const std::string &from, const std::string &to, int sheet) {
    bool st = sheet == 2;
    names.push_back(from + ">" + to + "." + std::to_string(sheet));
    // in tau
    std::vector<LiftStep> pb, pa;
    if (from == y)
      pb = {{t1, y, st, z, !st}};
    else if (from == z)
      pb = {{t1, z, st, x, !st}, {t2, x, st, v, !st}};
    else if (from == v)
      pb = {{t2, v, st, w, !st}};
    else
      pb = {{t2, w, st, x, !st}, {t1, x, st, y, !st}};
    // in tau'
    if (from == y)
      pa = {{t1, y, st, xp, !st}, {t2, xp, st, z, !st}};
    else if (from == z)
      pa = {{t2, z, st, v, !st}};
    else if (from == v)
      pa = {{t2, v, st, xp, !st}, {t1, xp, st, w, !st}};
    else
      pa = {{t1, w, st, y, !st}};
    qc.before_images.push_back(lift_path(before, pb));
    qc.after_images.push_back(lift_path(after, pa));
  };
  for (auto [f, t] : {std::pair{y, z}, {z, v}, {v, w}, {w, y}})
    for (int sheet = 1; sheet <= 2; ++sheet)
      corner(f, t, sheet);
  names.push_back(w + ">" + z + ".1");
  qc.before_images.push_back(lift_path(before, {{t2, w, false, x, true}, {t1, x, false, z, true}}));
  auto straight = lift_path(after, {{t1, w, false, xp, true}, {t2, xp, false, z, true}});
  auto detour = lift_path(after, {{t1, w, false, xp, false}, {t2, xp, true, z, true}});
  qc.after_images.push_back(straight + detour);

  // forms pulled back from the cover of tau
  auto hex = hex_cover_torus(before);
  const int k = static_cast<int>(names.size());
  std::vector<std::vector<int>> m(k, std::vector<int>(k, 0)), sf = m;
  std::vector<Vec> vecs;
  for (const auto &img : qc.before_images)
    vecs.push_back(img.terms().begin()->first);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      m[i][j] = static_cast<int>(hex->form_m(vecs[i], vecs[j]));
      sf[i][j] = static_cast<int>(hex->form_s(vecs[i], vecs[j]));
    }
  qc.gens = QuantumTorus::make(names, m, sf);
  return qc;
}

namespace {

void check_domain(const QuadCover &qc, const TorusElem &g) {
  if (!g.torus() || !g.torus()->same_as(*qc.gens))
    throw OutOfDomain("element is not in the quadrilateral generator torus");
}

} // namespace

TorusElem quad_embed(const QuadCover &qc, const TorusElem &g) {
  check_domain(qc, g);
  return TorusHom(qc.gens, hex_cover_torus(qc.before), qc.before_images, false)(g);
}

TorusElem psi_flip(const QuadCover &qc, const TorusElem &g) {
  check_domain(qc, g);
  const int lon = qc.gens->rank() - 1;
  for (const auto &[v, c] : g.terms())
    if (v[lon] < 0)
      throw OutOfDomain("negative power of the longitude");
  return TorusHom(qc.gens, hex_cover_torus(qc.after), qc.after_images)(g);
}

Report naturality_check_2d(const SurfaceTri &s, const std::string &edge, const Scalar &ct) {
  s.flip(edge);
  // work in the quadrilateral itself; its sides become boundary edges
  const auto &sl = s.slots(edge);
  auto qc = quad_cover(SurfaceTri::build({s.triangles()[sl[0].tri], s.triangles()[sl[1].tri]}),
                       edge);
  std::vector<std::string> web(qc.outer.begin(), qc.outer.end());
  auto ev_b = ev_cover_hom(qc.before, ct);
  auto ev_a = ev_cover_hom(qc.after, ct);
  auto out_t = glued_torus(qc.after, web);
  auto sq_b = qc.before.sqts_torus(true);
  const int rb = sq_b->rank(), ra = qc.after.sqts_torus(true)->rank();

  auto theta = [&](const TorusElem &glued) {
    TorusElem r(out_t);
    for (const auto &[g, c] : glued.terms()) {
      Vec e(g.begin(), g.begin() + rb);
      auto img = flip_even(qc.before, edge, TorusElem::monomial(sq_b, e, c), ct);
      for (const auto &[h, d] : img.terms()) {
        Vec v = h;
        v.resize(ra, 0);
        v.insert(v.end(), g.begin() + rb, g.end());
        r.add_term(v, d);
      }
    }
    return r;
  };

  Report rep{"naturality_2d " + edge, {}};
  auto check = [&](const std::string &name, const TorusElem &g) {
    auto lhs = glue_2d(qc.after, ev_a(psi_flip(qc, g)), web);
    auto rhs = theta(glue_2d(qc.before, ev_b(quad_embed(qc, g)), web));
    rep.add(compare(name, lhs, rhs));
  };
  check("identity", TorusElem::one(qc.gens));
  for (int i = 0; i < qc.gens->rank(); ++i)
    check(qc.gens->name(i), TorusElem::monomial(qc.gens, unit_vec(qc.gens->rank(), i)));
  return rep;
}

} // namespace skeintrace
