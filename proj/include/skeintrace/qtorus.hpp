#pragma once

#include "skeintrace/scalar.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace skeintrace {

using Vec = std::vector<int>;

Vec vadd(const Vec &a, const Vec &b);
Vec vsub(const Vec &a, const Vec &b);
Vec vscale(const Vec &a, int k);
Vec unit_vec(int n, int i, int k = 1);
bool is_zero_vec(const Vec &a);

class QuantumTorus;
using TorusPtr = std::shared_ptr<const QuantumTorus>;

// Lattice Z^n with commutation x_g x_h = c(g,h) x_h x_g where
// c(g,h) = (-1)^(g S h) A^(g M h).  Monomials x_g are Weyl symbols and
// x_g x_h = omega(g,h) x_(g+h), omega(g,h) = zeta^(g S h) A^(g M h / 2).
// S is kept modulo 4 so that omega is a well defined square root of c.
class QuantumTorus {
public:
  static TorusPtr make(std::vector<std::string> names,
                       std::vector<std::vector<int>> m,
                       std::vector<std::vector<int>> s);
  // block diagonal; names are prefixed "<prefix>." when prefixes are given
  static TorusPtr tensor(const std::vector<TorusPtr> &parts,
                         const std::vector<std::string> &prefixes = {});

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string> &names() const { return names_; }
  const std::string &name(int i) const { return names_.at(i); }
  int index(const std::string &name) const;
  int m(int i, int j) const { return m_[i][j]; }
  int s(int i, int j) const { return s_[i][j]; }

  // g^T M h and g^T S h
  long long form_m(const Vec &g, const Vec &h) const;
  long long form_s(const Vec &g, const Vec &h) const;
  Scalar omega(const Vec &g, const Vec &h) const;
  Scalar commutation(const Vec &g, const Vec &h) const;
  bool commutes(const Vec &g, const Vec &h) const;
  bool same_as(const QuantumTorus &o) const;
  std::string str() const;

private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> m_, s_;
};

class TorusElem {
public:
  TorusElem() = default;
  explicit TorusElem(TorusPtr t) : t_(std::move(t)) {}

  static TorusElem monomial(TorusPtr t, const Vec &g, const Scalar &s = 1);
  static TorusElem one(TorusPtr t) { return constant(std::move(t), 1); }
  static TorusElem constant(TorusPtr t, const Scalar &s);
  static TorusElem gen(TorusPtr t, const std::string &name, int power = 1);
  static TorusElem weyl(TorusPtr t, const std::vector<Vec> &gs);

  const TorusPtr &torus() const { return t_; }
  const std::map<Vec, Scalar> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  Scalar coeff(const Vec &g) const;

  TorusElem operator+(const TorusElem &o) const;
  TorusElem operator-(const TorusElem &o) const;
  TorusElem operator-() const;
  TorusElem operator*(const TorusElem &o) const;
  TorusElem operator*(const Scalar &s) const;
  TorusElem &operator+=(const TorusElem &o) { return *this = *this + o; }
  TorusElem &operator*=(const TorusElem &o) { return *this = *this * o; }
  bool operator==(const TorusElem &o) const;
  bool operator!=(const TorusElem &o) const { return !(*this == o); }

  TorusElem pow(int n) const;
  TorusElem map_scalars(Scalar (*f)(const Scalar &)) const;
  TorusElem reduce_cb() const;
  TorusElem substitute_constants(const Scalar &ct, const Scalar &cb) const;
  bool has_angles() const;
  // copy into a larger torus, placing coordinates at the given offset
  TorusElem embed(TorusPtr big, int offset) const;
  std::string str() const;

  void add_term(const Vec &g, const Scalar &s);

private:
  TorusPtr t_;
  std::map<Vec, Scalar> terms_;
  void check_same(const TorusElem &o) const;
};

std::string monomial_str(const QuantumTorus &t, const Vec &g);

// Algebra map fixed by generator images.  Source monomials are decomposed
// as x_g = kappa(g) * prod_i x_(e_i)^(g_i) in index order.
class TorusHom {
public:
  TorusHom(TorusPtr src, TorusPtr dst, std::vector<TorusElem> images,
           bool verify = true);
  TorusElem operator()(const TorusElem &e) const;
  TorusElem image_of(const Vec &g) const;
  const TorusPtr &src() const { return src_; }
  const TorusPtr &dst() const { return dst_; }
  const std::vector<TorusElem> &images() const { return images_; }

private:
  TorusPtr src_, dst_;
  std::vector<TorusElem> images_;
};

enum class Side { Central, Right, Left };
std::string side_str(Side s);

struct MonomialRelation {
  Vec vector;
  Scalar scalar;
  Side side = Side::Central;
};

// Canonical coset representatives modulo a lattice of monomial relations.
// Pivot columns are chosen in the order given by `priority` (default:
// last generator first); each pivot coordinate is reduced into [0, p).
class Reducer {
public:
  Reducer(TorusPtr t, std::vector<MonomialRelation> rels,
          std::vector<int> priority = {});

  TorusElem reduce(const TorusElem &e) const;
  // scalar s and representative r with x_g == s x_r
  std::pair<Scalar, Vec> reduce_monomial(const Vec &g) const;
  const TorusPtr &torus() const { return t_; }
  const std::vector<MonomialRelation> &relations() const { return rels_; }
  struct Row {
    Vec v;
    int col;
    Scalar s;
    Side side;
  };
  const std::vector<Row> &rows() const { return rows_; }

  // Split into a maximal independent subset (greedy, in order) and the
  // indices of dropped relations; each dropped relation is checked to
  // reduce to its own scalar (up to Cb^2 = q Ct^2), else
  // DependentRelations is thrown.
  static std::pair<std::vector<MonomialRelation>, std::vector<int>>
  independent_subset(TorusPtr t, const std::vector<MonomialRelation> &rels,
                     const std::vector<int> &priority = {});

private:
  TorusPtr t_;
  std::vector<MonomialRelation> rels_;
  std::vector<Row> rows_;
};

TorusElem reduce_mod(const TorusElem &e,
                     const std::vector<MonomialRelation> &rels,
                     const std::vector<int> &priority = {});

} // namespace skeintrace
