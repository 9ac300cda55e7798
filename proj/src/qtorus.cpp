#include "skeintrace/qtorus.hpp"
#include "skeintrace/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace skeintrace {

Vec vadd(const Vec &a, const Vec &b) {
  if (a.size() != b.size())
    throw RankMismatch("vector sizes differ");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] + b[i];
  return r;
}

Vec vsub(const Vec &a, const Vec &b) { return vadd(a, vscale(b, -1)); }

Vec vscale(const Vec &a, int k) {
  Vec r(a);
  for (auto &x : r)
    x *= k;
  return r;
}

Vec unit_vec(int n, int i, int k) {
  Vec r(n, 0);
  r.at(i) = k;
  return r;
}

bool is_zero_vec(const Vec &a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

namespace {
int mod4(long long v) { return static_cast<int>(((v % 4) + 4) % 4); }

Scalar omega_scalar(long long s, long long m) {
  ScalarKey k;
  int r = mod4(s);
  k.z = r % 2;
  k.a4 = static_cast<int>(2 * m);
  return Scalar::from_key(k, r >= 2 ? -1 : 1);
}
} // namespace

// ---- QuantumTorus

TorusPtr QuantumTorus::make(std::vector<std::string> names,
                            std::vector<std::vector<int>> m,
                            std::vector<std::vector<int>> s) {
  auto n = names.size();
  if (m.size() != n || s.size() != n)
    throw RankMismatch("form size does not match generator count");
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n || s[i].size() != n)
      throw RankMismatch("form is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] != -m[j][i])
        throw Malformed("A-form not antisymmetric at " + names[i] + "," +
                        names[j]);
      if (mod4(s[i][j] + s[j][i]) != 0)
        throw Malformed("sign form not antisymmetric at " + names[i] + "," +
                        names[j]);
    }
    s[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      s[i][j] = mod4(s[i][j]);
  }
  auto t = std::make_shared<QuantumTorus>();
  t->names_ = std::move(names);
  t->m_ = std::move(m);
  t->s_ = std::move(s);
  return t;
}

TorusPtr QuantumTorus::tensor(const std::vector<TorusPtr> &parts,
                              const std::vector<std::string> &prefixes) {
  std::vector<std::string> names;
  int n = 0;
  for (const auto &p : parts)
    n += p->rank();
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0)), s = m;
  int off = 0;
  for (std::size_t b = 0; b < parts.size(); ++b) {
    const auto &p = *parts[b];
    for (int i = 0; i < p.rank(); ++i) {
      names.push_back(prefixes.empty() ? p.name(i)
                                       : prefixes.at(b) + "." + p.name(i));
      for (int j = 0; j < p.rank(); ++j) {
        m[off + i][off + j] = p.m(i, j);
        s[off + i][off + j] = p.s(i, j);
      }
    }
    off += p.rank();
  }
  return make(std::move(names), std::move(m), std::move(s));
}

int QuantumTorus::index(const std::string &name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end())
    throw UnknownId("generator '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

long long QuantumTorus::form_m(const Vec &g, const Vec &h) const {
  if (static_cast<int>(g.size()) != rank() || static_cast<int>(h.size()) != rank())
    throw RankMismatch("exponent vector rank");
  long long r = 0;
  for (int i = 0; i < rank(); ++i)
    if (g[i])
      for (int j = 0; j < rank(); ++j)
        if (h[j] && m_[i][j])
          r += static_cast<long long>(g[i]) * m_[i][j] * h[j];
  return r;
}

long long QuantumTorus::form_s(const Vec &g, const Vec &h) const {
  if (static_cast<int>(g.size()) != rank() || static_cast<int>(h.size()) != rank())
    throw RankMismatch("exponent vector rank");
  long long r = 0;
  for (int i = 0; i < rank(); ++i)
    if (g[i])
      for (int j = 0; j < rank(); ++j)
        if (h[j] && s_[i][j])
          r += static_cast<long long>(g[i]) * s_[i][j] * h[j];
  return r;
}

Scalar QuantumTorus::omega(const Vec &g, const Vec &h) const {
  return omega_scalar(form_s(g, h), form_m(g, h));
}

Scalar QuantumTorus::commutation(const Vec &g, const Vec &h) const {
  return omega_scalar(2 * form_s(g, h), 2 * form_m(g, h));
}

bool QuantumTorus::commutes(const Vec &g, const Vec &h) const {
  return form_m(g, h) == 0 && mod4(2 * form_s(g, h)) == 0;
}

bool QuantumTorus::same_as(const QuantumTorus &o) const {
  return names_ == o.names_ && m_ == o.m_ && s_ == o.s_;
}

std::string QuantumTorus::str() const {
  std::string out = "torus(" + std::to_string(rank()) + ")";
  for (int i = 0; i < rank(); ++i)
    for (int j = i + 1; j < rank(); ++j)
      if (m_[i][j] || s_[i][j])
        out += " " + names_[i] + "," + names_[j] + ":" +
               std::to_string(m_[i][j]) + "/" + std::to_string(s_[i][j]);
  return out;
}

// ---- TorusElem

void TorusElem::check_same(const TorusElem &o) const {
  if (!t_ || !o.t_)
    throw TorusMismatch("element without torus");
  if (t_ != o.t_ && !t_->same_as(*o.t_))
    throw TorusMismatch("elements live in different tori");
}

void TorusElem::add_term(const Vec &g, const Scalar &s) {
  if (static_cast<int>(g.size()) != t_->rank())
    throw RankMismatch("exponent vector has size " + std::to_string(g.size()) +
                       ", torus rank " + std::to_string(t_->rank()));
  if (s.is_zero())
    return;
  auto [it, fresh] = terms_.try_emplace(g, s);
  if (!fresh) {
    it->second += s;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

TorusElem TorusElem::monomial(TorusPtr t, const Vec &g, const Scalar &s) {
  TorusElem e(std::move(t));
  e.add_term(g, s);
  return e;
}

TorusElem TorusElem::constant(TorusPtr t, const Scalar &s) {
  int n = t->rank();
  return monomial(std::move(t), Vec(n, 0), s);
}

TorusElem TorusElem::gen(TorusPtr t, const std::string &name, int power) {
  int i = t->index(name);
  int n = t->rank();
  return monomial(std::move(t), unit_vec(n, i, power));
}

TorusElem TorusElem::weyl(TorusPtr t, const std::vector<Vec> &gs) {
  Vec sum(t->rank(), 0);
  for (const auto &g : gs)
    sum = vadd(sum, g);
  return monomial(std::move(t), sum);
}

Scalar TorusElem::coeff(const Vec &g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Scalar() : it->second;
}

TorusElem TorusElem::operator+(const TorusElem &o) const {
  check_same(o);
  TorusElem r = *this;
  for (const auto &[g, s] : o.terms_)
    r.add_term(g, s);
  return r;
}

TorusElem TorusElem::operator-() const { return *this * Scalar(-1); }

TorusElem TorusElem::operator-(const TorusElem &o) const { return *this + (-o); }

TorusElem TorusElem::operator*(const TorusElem &o) const {
  check_same(o);
  TorusElem r(t_);
  for (const auto &[g, a] : terms_)
    for (const auto &[h, b] : o.terms_)
      r.add_term(vadd(g, h), a * b * t_->omega(g, h));
  return r;
}

TorusElem TorusElem::operator*(const Scalar &s) const {
  TorusElem r(t_);
  for (const auto &[g, a] : terms_)
    r.add_term(g, a * s);
  return r;
}

bool TorusElem::operator==(const TorusElem &o) const {
  check_same(o);
  return terms_ == o.terms_;
}

TorusElem TorusElem::pow(int n) const {
  if (n < 0) {
    if (!is_monomial())
      throw NotInvertible("power of a non-monomial torus element");
    const auto &[g, s] = *terms_.begin();
    return monomial(t_, vscale(g, -1), s.inverse()).pow(-n);
  }
  TorusElem r = one(t_), b = *this;
  while (n) {
    if (n & 1)
      r = r * b;
    n >>= 1;
    if (n)
      b = b * b;
  }
  return r;
}

TorusElem TorusElem::map_scalars(Scalar (*f)(const Scalar &)) const {
  TorusElem r(t_);
  for (const auto &[g, s] : terms_)
    r.add_term(g, f(s));
  return r;
}

TorusElem TorusElem::reduce_cb() const {
  TorusElem r(t_);
  for (const auto &[g, s] : terms_)
    r.add_term(g, s.reduce_cb());
  return r;
}

TorusElem TorusElem::substitute_constants(const Scalar &ct,
                                          const Scalar &cb) const {
  TorusElem r(t_);
  for (const auto &[g, s] : terms_)
    r.add_term(g, s.substitute_constants(ct, cb));
  return r;
}

bool TorusElem::has_angles() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const auto &t) { return t.second.has_angles(); });
}

TorusElem TorusElem::embed(TorusPtr big, int offset) const {
  TorusElem r(big);
  for (const auto &[g, s] : terms_) {
    Vec h(big->rank(), 0);
    for (std::size_t i = 0; i < g.size(); ++i)
      h.at(offset + i) = g[i];
    r.add_term(h, s);
  }
  return r;
}

std::string monomial_str(const QuantumTorus &t, const Vec &g) {
  std::string inner;
  for (int i = 0; i < t.rank(); ++i) {
    if (!g[i])
      continue;
    if (!inner.empty())
      inner += " ";
    inner += t.name(i);
    if (g[i] != 1)
      inner += "^" + std::to_string(g[i]);
  }
  return inner.empty() ? "1" : "[" + inner + "]";
}

std::string TorusElem::str() const {
  if (terms_.empty())
    return "0";
  std::string out;
  for (const auto &[g, s] : terms_) {
    std::string coef = s.str();
    bool unit = is_zero_vec(g);
    std::string piece;
    if (unit)
      piece = s.is_monomial() ? coef : "(" + coef + ")";
    else if (coef == "1")
      piece = monomial_str(*t_, g);
    else if (coef == "-1")
      piece = "-" + monomial_str(*t_, g);
    else if (s.is_monomial())
      piece = coef + "*" + monomial_str(*t_, g);
    else
      piece = "(" + coef + ")*" + monomial_str(*t_, g);
    if (out.empty())
      out = piece;
    else if (piece[0] == '-')
      out += " - " + piece.substr(1);
    else
      out += " + " + piece;
  }
  return out;
}

// ---- TorusHom

TorusHom::TorusHom(TorusPtr src, TorusPtr dst, std::vector<TorusElem> images,
                   bool verify)
    : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != src_->rank())
    throw RankMismatch("one image per source generator");
  for (auto &img : images_)
    if (img.torus() != dst_ && !img.torus()->same_as(*dst_))
      throw TorusMismatch("image outside the target torus");
  if (!verify)
    return;
  int n = src_->rank();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto c = src_->commutation(unit_vec(n, i), unit_vec(n, j));
      if (images_[i] * images_[j] != images_[j] * images_[i] * c)
        throw ConstraintViolation("images of " + src_->name(i) + " and " +
                                  src_->name(j) +
                                  " break the commutation relation");
    }
}

TorusElem TorusHom::image_of(const Vec &g) const {
  int n = src_->rank();
  TorusElem r = TorusElem::one(dst_);
  Vec prefix(n, 0);
  long long s = 0, m = 0;
  for (int i = 0; i < n; ++i) {
    if (!g[i])
      continue;
    Vec piece = unit_vec(n, i, g[i]);
    s += src_->form_s(prefix, piece);
    m += src_->form_m(prefix, piece);
    prefix = vadd(prefix, piece);
    r = r * images_[i].pow(g[i]);
  }
  return r * omega_scalar(-s, -m);
}

TorusElem TorusHom::operator()(const TorusElem &e) const {
  if (e.torus() != src_ && !e.torus()->same_as(*src_))
    throw TorusMismatch("argument outside the source torus");
  TorusElem r(dst_);
  for (const auto &[g, s] : e.terms())
    r += image_of(g) * s;
  return r;
}

// ---- relations

std::string side_str(Side s) {
  switch (s) {
  case Side::Central:
    return "central";
  case Side::Right:
    return "right";
  case Side::Left:
    return "left";
  }
  return "?";
}

namespace {

Side merge_side(Side a, Side b) {
  if (a == Side::Central)
    return b;
  if (b == Side::Central || a == b)
    return a;
  throw NonCommutingRelations("combination mixes left and right relations");
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

} // namespace

Reducer::Reducer(TorusPtr t, std::vector<MonomialRelation> rels,
                 std::vector<int> priority)
    : t_(std::move(t)), rels_(std::move(rels)) {
  int n = t_->rank();
  if (priority.empty())
    for (int i = n - 1; i >= 0; --i)
      priority.push_back(i);
  for (std::size_t i = 0; i < rels_.size(); ++i) {
    const auto &r = rels_[i];
    if (static_cast<int>(r.vector.size()) != n)
      throw RankMismatch("relation vector rank");
    if (!r.scalar.is_unit_monomial())
      throw NotInvertible("relation scalar must be a unit monomial");
    if (r.side == Side::Central)
      for (int j = 0; j < n; ++j)
        if (!t_->commutes(r.vector, unit_vec(n, j)))
          throw NonCommutingRelations("relation " + monomial_str(*t_, r.vector) +
                                      " is declared central but is not");
    for (std::size_t j = 0; j < i; ++j)
      if (!t_->commutes(r.vector, rels_[j].vector))
        throw NonCommutingRelations("relations " + monomial_str(*t_, r.vector) +
                                    " and " +
                                    monomial_str(*t_, rels_[j].vector) +
                                    " do not commute");
  }

  struct Work {
    Vec v;
    Scalar s;
    Side side;
  };
  std::vector<Work> work;
  for (const auto &r : rels_)
    work.push_back({r.vector, r.scalar, r.side});

  // w := w - k*p, tracking x_w == s
  auto combine = [&](Work &w, const Work &p, int k) {
    Vec kp = vscale(p.v, -k);
    w.s = w.s * p.s.pow(-k) * t_->omega(w.v, kp).inverse();
    w.side = merge_side(w.side, p.side);
    w.v = vadd(w.v, kp);
  };

  std::size_t done = 0;
  for (int col : priority) {
    while (true) {
      std::size_t best = work.size();
      int nonzero = 0;
      for (std::size_t i = done; i < work.size(); ++i)
        if (work[i].v[col]) {
          ++nonzero;
          if (best == work.size() ||
              std::abs(work[i].v[col]) < std::abs(work[best].v[col]))
            best = i;
        }
      if (nonzero == 0)
        break;
      if (nonzero == 1) {
        std::swap(work[done], work[best]);
        auto &p = work[done];
        if (p.v[col] < 0) {
          p.v = vscale(p.v, -1);
          p.s = p.s.inverse();
        }
        rows_.push_back({p.v, col, p.s, p.side});
        ++done;
        break;
      }
      for (std::size_t i = done; i < work.size(); ++i)
        if (i != best && work[i].v[col])
          combine(work[i], work[best], work[i].v[col] / work[best].v[col]);
    }
  }
  if (done != work.size())
    throw DependentRelations("relation vectors are linearly dependent");
}

std::pair<Scalar, Vec> Reducer::reduce_monomial(const Vec &g0) const {
  Vec g = g0;
  Scalar s(1);
  for (const auto &row : rows_) {
    int p = row.v[row.col];
    auto k = floor_div(g[row.col], p);
    if (!k)
      continue;
    Vec big_r = vscale(row.v, static_cast<int>(k));
    Vec rest = vsub(g, big_r);
    Scalar w = row.side == Side::Left ? t_->omega(big_r, rest)
                                      : t_->omega(rest, big_r);
    s = s * w.inverse() * row.s.pow(static_cast<int>(k));
    g = rest;
  }
  return {s, g};
}

TorusElem Reducer::reduce(const TorusElem &e) const {
  if (e.torus() != t_ && !e.torus()->same_as(*t_))
    throw TorusMismatch("element outside the reducer's torus");
  TorusElem r(t_);
  for (const auto &[g, c] : e.terms()) {
    auto [s, h] = reduce_monomial(g);
    r.add_term(h, c * s);
  }
  return r;
}

std::pair<std::vector<MonomialRelation>, std::vector<int>>
Reducer::independent_subset(TorusPtr t, const std::vector<MonomialRelation> &rels,
                            const std::vector<int> &priority) {
  std::vector<MonomialRelation> kept;
  std::vector<int> dropped;
  for (std::size_t i = 0; i < rels.size(); ++i) {
    auto trial = kept;
    trial.push_back(rels[i]);
    try {
      Reducer probe(t, trial, priority);
      kept = std::move(trial);
    } catch (const DependentRelations &) {
      Reducer base(t, kept, priority);
      auto [s, rest] = base.reduce_monomial(rels[i].vector);
      if (!is_zero_vec(rest))
        throw DependentRelations("relation " + monomial_str(*t, rels[i].vector) +
                                 " is only rationally dependent");
      if (!(s.reduce_cb() == rels[i].scalar.reduce_cb()))
        throw DependentRelations("relation " + monomial_str(*t, rels[i].vector) +
                                 " is inconsistent: reduces to " + s.str() +
                                 ", declared " + rels[i].scalar.str());
      dropped.push_back(static_cast<int>(i));
    }
  }
  return {kept, dropped};
}

TorusElem reduce_mod(const TorusElem &e,
                     const std::vector<MonomialRelation> &rels,
                     const std::vector<int> &priority) {
  return Reducer(e.torus(), rels, priority).reduce(e);
}

} // namespace skeintrace
