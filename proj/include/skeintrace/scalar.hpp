#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skeintrace {

using Rat = boost::rational<std::int64_t>;

std::string rat_str(const Rat &r);
Rat parse_rat(const std::string &s);

// Registry of formal angle symbols. A symbol attached to a tetrahedron
// occupies one of the slots 0,1,2 (theta, theta', theta''); slot -1 is free.
struct AngleInfo {
  std::string name;
  std::string tet;
  int slot = -1;
};

int angle_symbol(const std::string &name);
// registers (or looks up) the three slots of a tetrahedron
std::vector<int> tet_angle_symbols(const std::string &tet,
                                   const std::vector<std::string> &names);
std::vector<int> tet_angle_symbols(const std::string &tet);
AngleInfo angle_info(int id);
std::optional<int> find_angle(const std::string &name);

// Linear form sum c_i theta_i / pi plus a constant, in units of pi.
class AngleForm {
public:
  AngleForm() = default;
  explicit AngleForm(Rat c) : constant_(c) {}
  static AngleForm symbol(int id, Rat c = 1);
  static AngleForm named(const std::string &name, Rat c = 1);
  static AngleForm parse(const std::string &s);

  AngleForm operator+(const AngleForm &o) const;
  AngleForm operator-(const AngleForm &o) const;
  AngleForm operator-() const;
  AngleForm operator*(Rat c) const;
  bool operator==(const AngleForm &o) const = default;

  const std::vector<std::pair<int, Rat>> &coeffs() const { return coeffs_; }
  Rat constant() const { return constant_; }
  bool is_constant() const { return coeffs_.empty(); }
  // theta'' -> pi - theta - theta' for every registered tetrahedron
  AngleForm eliminated() const;
  std::string str() const;

private:
  std::vector<std::pair<int, Rat>> coeffs_;
  Rat constant_{0};
};

// One monomial zeta^z A^(a4/4) Ct^ct Cb^cb q^qc q^(angles/pi).
// qc lies in [0,1/2); larger q-exponents are folded into zeta and A.
struct ScalarKey {
  int z = 0;
  int a4 = 0;
  int ct = 0;
  int cb = 0;
  Rat qc{0};
  std::vector<std::pair<int, Rat>> ang;
};
bool operator<(const ScalarKey &a, const ScalarKey &b);
bool operator==(const ScalarKey &a, const ScalarKey &b);

class Scalar {
public:
  Scalar() = default;
  Scalar(std::int64_t n);

  static Scalar zeta();
  static Scalar A(Rat e = 1);
  static Scalar q(Rat e = 1);
  static Scalar Ct(int e = 1);
  static Scalar Cb(int e = 1);
  // q^(c * form / pi), with theta'' eliminated eagerly
  static Scalar q_angle(const AngleForm &form, Rat c = 1);
  static Scalar parse(const std::string &s);

  Scalar operator+(const Scalar &o) const;
  Scalar operator-(const Scalar &o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar &o) const;
  Scalar &operator+=(const Scalar &o) { return *this = *this + o; }
  Scalar &operator-=(const Scalar &o) { return *this = *this - o; }
  Scalar &operator*=(const Scalar &o) { return *this = *this * o; }
  bool operator==(const Scalar &o) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_unit_monomial() const;
  bool has_angles() const;
  bool has_constants() const;
  Scalar inverse() const;
  Scalar pow(int n) const;

  // Cb^2 -> q Ct^2, leaving Cb to the power 0 or 1
  Scalar reduce_cb() const;
  Scalar substitute_constants(const Scalar &ct, const Scalar &cb) const;
  std::string str() const;

  const std::map<ScalarKey, std::int64_t> &terms() const { return terms_; }
  static Scalar from_key(const ScalarKey &k, std::int64_t c);

private:
  std::map<ScalarKey, std::int64_t> terms_;
  void add_term(const ScalarKey &k, std::int64_t c);
};

bool satisfies_constraint(const Scalar &ct, const Scalar &cb);

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

} // namespace skeintrace
