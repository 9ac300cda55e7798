#include "skeintrace/scalar.hpp"
#include "skeintrace/errors.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>

namespace skeintrace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Overflow("integer coefficient addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Overflow("integer coefficient product");
  return r;
}

std::string rat_str(const Rat &r) {
  if (r.denominator() == 1)
    return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rat parse_rat(const std::string &s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos)
      return Rat(std::stoll(s));
    auto d = std::stoll(s.substr(slash + 1));
    if (d == 0)
      throw ParseError("zero denominator in '" + s + "'");
    return Rat(std::stoll(s.substr(0, slash)), d);
  } catch (const std::logic_error &) {
    throw ParseError("bad rational '" + s + "'");
  }
}

namespace {

struct Registry {
  std::mutex mu;
  std::vector<AngleInfo> infos;
  std::map<std::string, int> by_name;
  std::map<std::pair<std::string, int>, int> by_slot;

  int add(const AngleInfo &info) {
    auto it = by_name.find(info.name);
    if (it != by_name.end()) {
      const auto &old = infos[it->second];
      if (old.tet != info.tet || old.slot != info.slot)
        throw ConstraintViolation("angle symbol '" + info.name +
                                  "' already bound elsewhere");
      return it->second;
    }
    if (info.slot >= 0) {
      auto key = std::make_pair(info.tet, info.slot);
      if (by_slot.count(key))
        throw ConstraintViolation("slot " + std::to_string(info.slot) +
                                  " of tetrahedron '" + info.tet +
                                  "' already named");
    }
    int id = static_cast<int>(infos.size());
    infos.push_back(info);
    by_name[info.name] = id;
    if (info.slot >= 0)
      by_slot[{info.tet, info.slot}] = id;
    return id;
  }
};

Registry &registry() {
  static Registry r;
  return r;
}

bool valid_name(const std::string &s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '.' || c == '\'';
  });
}

using Coeffs = std::vector<std::pair<int, Rat>>;

Coeffs merge(const Coeffs &a, const Coeffs &b, Rat sb = 1) {
  Coeffs out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, b[j].second * sb);
      ++j;
    } else {
      Rat c = a[i].second + b[j].second * sb;
      if (c != Rat(0))
        out.emplace_back(a[i].first, c);
      ++i;
      ++j;
    }
  }
  return out;
}

} // namespace

int angle_symbol(const std::string &name) {
  if (!valid_name(name) || name == "pi")
    throw ParseError("bad angle name '" + name + "'");
  auto &r = registry();
  std::lock_guard lock(r.mu);
  auto it = r.by_name.find(name);
  if (it != r.by_name.end())
    return it->second;
  return r.add({name, "", -1});
}

std::vector<int> tet_angle_symbols(const std::string &tet,
                                   const std::vector<std::string> &names) {
  if (names.size() != 3)
    throw Malformed("three angle names per tetrahedron");
  auto &r = registry();
  std::lock_guard lock(r.mu);
  std::vector<int> ids;
  for (int s = 0; s < 3; ++s) {
    auto it = r.by_slot.find({tet, s});
    if (it != r.by_slot.end()) {
      if (r.infos[it->second].name != names[s])
        throw ConstraintViolation("tetrahedron '" + tet +
                                  "' already has angle names");
      ids.push_back(it->second);
    } else {
      if (!valid_name(names[s]))
        throw ParseError("bad angle name '" + names[s] + "'");
      ids.push_back(r.add({names[s], tet, s}));
    }
  }
  return ids;
}

std::vector<int> tet_angle_symbols(const std::string &tet) {
  {
    auto &r = registry();
    std::lock_guard lock(r.mu);
    auto it = r.by_slot.find({tet, 0});
    if (it != r.by_slot.end())
      return {it->second, r.by_slot.at({tet, 1}), r.by_slot.at({tet, 2})};
  }
  return tet_angle_symbols(tet, {"th_" + tet, "thp_" + tet, "thpp_" + tet});
}

AngleInfo angle_info(int id) {
  auto &r = registry();
  std::lock_guard lock(r.mu);
  return r.infos.at(id);
}

std::optional<int> find_angle(const std::string &name) {
  auto &r = registry();
  std::lock_guard lock(r.mu);
  auto it = r.by_name.find(name);
  if (it == r.by_name.end())
    return std::nullopt;
  return it->second;
}

// ---- AngleForm

AngleForm AngleForm::symbol(int id, Rat c) {
  AngleForm f;
  if (c != Rat(0))
    f.coeffs_.emplace_back(id, c);
  return f;
}

AngleForm AngleForm::named(const std::string &name, Rat c) {
  return symbol(angle_symbol(name), c);
}

AngleForm AngleForm::operator+(const AngleForm &o) const {
  AngleForm f;
  f.coeffs_ = merge(coeffs_, o.coeffs_);
  f.constant_ = constant_ + o.constant_;
  return f;
}

AngleForm AngleForm::operator-(const AngleForm &o) const { return *this + (-o); }

AngleForm AngleForm::operator-() const { return *this * Rat(-1); }

AngleForm AngleForm::operator*(Rat c) const {
  AngleForm f;
  if (c == Rat(0))
    return f;
  f.coeffs_ = coeffs_;
  for (auto &[id, v] : f.coeffs_)
    v *= c;
  f.constant_ = constant_ * c;
  return f;
}

AngleForm AngleForm::eliminated() const {
  AngleForm out(constant_);
  for (const auto &[id, c] : coeffs_) {
    auto info = angle_info(id);
    if (info.slot == 2) {
      auto ids = tet_angle_symbols(info.tet);
      out = out + AngleForm(c) - symbol(ids[0], c) - symbol(ids[1], c);
    } else {
      out = out + symbol(id, c);
    }
  }
  return out;
}

std::string AngleForm::str() const {
  std::string s;
  auto piece = [&](Rat c, const std::string &name) {
    bool neg = c < Rat(0);
    Rat a = neg ? -c : c;
    std::string t;
    if (a.numerator() != 1)
      t += std::to_string(a.numerator()) + "*";
    t += name;
    if (a.denominator() != 1)
      t += "/" + std::to_string(a.denominator());
    if (s.empty())
      s = neg ? "-" + t : t;
    else
      s += (neg ? " - " : " + ") + t;
  };
  for (const auto &[id, c] : coeffs_)
    piece(c, angle_info(id).name);
  if (constant_ != Rat(0))
    piece(constant_, "pi");
  return s.empty() ? "0" : s;
}

namespace {

struct Lexer {
  std::string s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
  }
  bool eof() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string &msg) {
    throw ParseError(msg + " at offset " + std::to_string(i) + " in '" + s + "'");
  }
  std::int64_t integer() {
    skip();
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
      ++j;
    if (j == i)
      fail("expected integer");
    try {
      auto v = std::stoll(s.substr(i, j - i));
      i = j;
      return v;
    } catch (const std::out_of_range &) {
      fail("integer out of range");
    }
  }
  Rat rational() {
    bool neg = accept('-');
    Rat r(integer());
    if (peek() == '/') {
      ++i;
      auto d = integer();
      if (d == 0)
        fail("zero denominator");
      r /= d;
    }
    return neg ? -r : r;
  }
  std::string ident() {
    skip();
    std::size_t j = i;
    if (j < s.size() && (std::isalpha(static_cast<unsigned char>(s[j])) || s[j] == '_')) {
      ++j;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                              s[j] == '_' || s[j] == '.' || s[j] == '\''))
        ++j;
    }
    if (j == i)
      fail("expected name");
    auto r = s.substr(i, j - i);
    i = j;
    return r;
  }
};

AngleForm parse_form(Lexer &lx) {
  AngleForm f;
  bool first = true;
  while (true) {
    Rat sign = 1;
    if (lx.accept('-'))
      sign = -1;
    else if (!lx.accept('+') && !first)
      break;
    first = false;
    Rat c = 1;
    if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
      c = lx.rational();
      if (!lx.accept('*')) {
        // bare number: only valid as a multiple of pi written "c*pi"
        lx.fail("constant must be written as c*pi");
      }
    }
    auto name = lx.ident();
    if (lx.accept('/'))
      c /= lx.integer();
    c *= sign;
    if (name == "pi")
      f = f + AngleForm(c);
    else
      f = f + AngleForm::named(name, c);
    if (lx.eof() || (lx.peek() != '+' && lx.peek() != '-'))
      break;
  }
  return f;
}

} // namespace

AngleForm AngleForm::parse(const std::string &s) {
  Lexer lx{s};
  if (lx.eof())
    throw ParseError("empty angle");
  auto f = parse_form(lx);
  if (!lx.eof())
    lx.fail("trailing input");
  return f;
}

// ---- Scalar keys

bool operator<(const ScalarKey &a, const ScalarKey &b) {
  if (a.a4 != b.a4)
    return a.a4 < b.a4;
  if (a.ct != b.ct)
    return a.ct < b.ct;
  if (a.cb != b.cb)
    return a.cb < b.cb;
  if (a.qc != b.qc)
    return a.qc < b.qc;
  if (a.ang != b.ang)
    return a.ang < b.ang;
  return a.z < b.z;
}

bool operator==(const ScalarKey &a, const ScalarKey &b) {
  return a.z == b.z && a.a4 == b.a4 && a.ct == b.ct && a.cb == b.cb &&
         a.qc == b.qc && a.ang == b.ang;
}

namespace {

// product of keys; returns the sign produced by folding zeta^2 = -1
std::pair<ScalarKey, int> mul_key(const ScalarKey &a, const ScalarKey &b) {
  ScalarKey k;
  int sign = 1;
  k.z = a.z + b.z;
  k.a4 = a.a4 + b.a4;
  k.ct = a.ct + b.ct;
  k.cb = a.cb + b.cb;
  k.qc = a.qc + b.qc;
  if (k.qc >= Rat(1, 2)) {
    k.qc -= Rat(1, 2);
    k.z += 1;
    k.a4 += 4;
  }
  if (k.z >= 2) {
    k.z -= 2;
    sign = -sign;
  }
  k.ang = merge(a.ang, b.ang);
  return {k, sign};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

} // namespace

Scalar::Scalar(std::int64_t n) {
  if (n != 0)
    terms_[ScalarKey{}] = n;
}

Scalar Scalar::from_key(const ScalarKey &k, std::int64_t c) {
  Scalar s;
  if (c != 0)
    s.terms_[k] = c;
  return s;
}

void Scalar::add_term(const ScalarKey &k, std::int64_t c) {
  auto [it, fresh] = terms_.try_emplace(k, c);
  if (!fresh) {
    it->second = checked_add(it->second, c);
    if (it->second == 0)
      terms_.erase(it);
  } else if (c == 0) {
    terms_.erase(it);
  }
}

Scalar Scalar::zeta() {
  ScalarKey k;
  k.z = 1;
  return from_key(k, 1);
}

Scalar Scalar::A(Rat e) {
  Rat f = e * 4;
  if (f.denominator() != 1)
    throw ConstraintViolation("A-exponent " + rat_str(e) +
                              " is finer than quarter units");
  ScalarKey k;
  k.a4 = static_cast<int>(f.numerator());
  return from_key(k, 1);
}

Scalar Scalar::q(Rat e) {
  // q^(n/2) = (zeta A)^n, remainder kept as qc in [0,1/2)
  Rat two = e * 2;
  std::int64_t n = floor_div(two.numerator(), two.denominator());
  Rat rest = e - Rat(n, 2);
  int m = static_cast<int>(((n % 4) + 4) % 4);
  ScalarKey k;
  k.a4 = static_cast<int>(4 * n);
  k.z = m % 2;
  k.qc = rest;
  return from_key(k, m >= 2 ? -1 : 1);
}

Scalar Scalar::Ct(int e) {
  ScalarKey k;
  k.ct = e;
  return from_key(k, 1);
}

Scalar Scalar::Cb(int e) {
  ScalarKey k;
  k.cb = e;
  return from_key(k, 1);
}

Scalar Scalar::q_angle(const AngleForm &form, Rat c) {
  auto f = (form * c).eliminated();
  Scalar s = q(f.constant());
  ScalarKey k;
  k.ang = f.coeffs();
  return s * from_key(k, 1);
}

Scalar Scalar::operator+(const Scalar &o) const {
  Scalar r = *this;
  for (const auto &[k, c] : o.terms_)
    r.add_term(k, c);
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r;
  for (const auto &[k, c] : terms_)
    r.terms_[k] = checked_mul(c, -1);
  return r;
}

Scalar Scalar::operator-(const Scalar &o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar &o) const {
  Scalar r;
  for (const auto &[ka, ca] : terms_)
    for (const auto &[kb, cb] : o.terms_) {
      auto [k, sign] = mul_key(ka, kb);
      r.add_term(k, checked_mul(checked_mul(ca, cb), sign));
    }
  return r;
}

bool Scalar::operator==(const Scalar &o) const { return terms_ == o.terms_; }

bool Scalar::is_unit_monomial() const {
  return is_monomial() &&
         (terms_.begin()->second == 1 || terms_.begin()->second == -1);
}

bool Scalar::has_angles() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const auto &t) { return !t.first.ang.empty(); });
}

bool Scalar::has_constants() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto &t) {
    return t.first.ct != 0 || t.first.cb != 0;
  });
}

Scalar Scalar::inverse() const {
  if (!is_unit_monomial())
    throw NotInvertible("'" + str() + "' is not a unit monomial");
  const auto &[k, c] = *terms_.begin();
  Scalar r(c);
  if (k.z)
    r *= -zeta();
  r *= A(Rat(-k.a4, 4)) * Ct(-k.ct) * Cb(-k.cb) * q(-k.qc);
  ScalarKey ka;
  ka.ang = k.ang;
  for (auto &[id, v] : ka.ang)
    v = -v;
  return r * from_key(ka, 1);
}

Scalar Scalar::pow(int n) const {
  if (n < 0)
    return inverse().pow(-n);
  Scalar r(1), b = *this;
  while (n) {
    if (n & 1)
      r *= b;
    n >>= 1;
    if (n)
      b *= b;
  }
  return r;
}

Scalar Scalar::reduce_cb() const {
  Scalar r;
  for (const auto &[k, c] : terms_) {
    ScalarKey base = k;
    int half = static_cast<int>(floor_div(k.cb, 2));
    base.cb = k.cb - 2 * half;
    r += from_key(base, c) * (q() * Ct(2)).pow(half);
  }
  return r;
}

bool satisfies_constraint(const Scalar &ct, const Scalar &cb) {
  return (cb * cb).reduce_cb() == (Scalar::q() * ct * ct).reduce_cb();
}

Scalar Scalar::substitute_constants(const Scalar &ct, const Scalar &cb) const {
  if (!satisfies_constraint(ct, cb))
    throw ConstraintViolation("Cb^2 != q Ct^2 for Ct=" + ct.str() +
                              ", Cb=" + cb.str());
  Scalar r;
  for (const auto &[k, c] : terms_) {
    ScalarKey base = k;
    base.ct = base.cb = 0;
    r += from_key(base, c) * ct.pow(k.ct) * cb.pow(k.cb);
  }
  return r;
}

std::string Scalar::str() const {
  if (terms_.empty())
    return "0";
  auto expo = [](Rat e) {
    if (e.denominator() == 1 && e > Rat(0))
      return std::to_string(e.numerator());
    return "(" + rat_str(e) + ")";
  };
  std::string out;
  for (const auto &[k, c] : terms_) {
    std::vector<std::string> f;
    if (k.z)
      f.push_back("z");
    if (k.a4) {
      Rat e(k.a4, 4);
      f.push_back(e == Rat(1) ? "A" : "A^" + expo(e));
    }
    if (k.ct)
      f.push_back(k.ct == 1 ? "Ct" : "Ct^" + expo(k.ct));
    if (k.cb)
      f.push_back(k.cb == 1 ? "Cb" : "Cb^" + expo(k.cb));
    if (k.qc != Rat(0))
      f.push_back("q^" + expo(k.qc));
    if (!k.ang.empty()) {
      AngleForm af;
      for (const auto &[id, v] : k.ang)
        af = af + AngleForm::symbol(id, v);
      f.push_back("Q[" + af.str() + "]");
    }
    std::int64_t a = c < 0 ? -c : c;
    std::string t;
    if (a != 1 || f.empty())
      t = std::to_string(a);
    for (const auto &p : f)
      t += (t.empty() ? "" : "*") + p;
    if (out.empty())
      out = c < 0 ? "-" + t : t;
    else
      out += (c < 0 ? " - " : " + ") + t;
  }
  return out;
}

namespace {

Rat parse_exponent(Lexer &lx) {
  if (lx.accept('(')) {
    Rat r = lx.rational();
    lx.expect(')');
    return r;
  }
  return lx.rational();
}

Scalar parse_sum(Lexer &lx);

Scalar parse_factor(Lexer &lx) {
  char c = lx.peek();
  if (std::isdigit(static_cast<unsigned char>(c)))
    return Scalar(lx.integer());
  if (lx.accept('(')) {
    Scalar s = parse_sum(lx);
    lx.expect(')');
    if (lx.accept('^')) {
      Rat e = parse_exponent(lx);
      if (e.denominator() != 1)
        lx.fail("fractional power of a sum");
      s = s.pow(static_cast<int>(e.numerator()));
    }
    return s;
  }
  auto name = lx.ident();
  if (name == "Q") {
    lx.expect('[');
    auto f = parse_form(lx);
    lx.expect(']');
    return Scalar::q_angle(f);
  }
  Rat e = 1;
  if (lx.accept('^'))
    e = parse_exponent(lx);
  auto integral = [&]() {
    if (e.denominator() != 1)
      lx.fail("integer exponent required for " + name);
    return static_cast<int>(e.numerator());
  };
  if (name == "z")
    return Scalar::zeta().pow(integral());
  if (name == "A")
    return Scalar::A(e);
  if (name == "q")
    return Scalar::q(e);
  if (name == "Ct")
    return Scalar::Ct(integral());
  if (name == "Cb")
    return Scalar::Cb(integral());
  lx.fail("unknown factor '" + name + "'");
}

Scalar parse_term(Lexer &lx) {
  Scalar s = parse_factor(lx);
  while (lx.accept('*'))
    s *= parse_factor(lx);
  return s;
}

Scalar parse_sum(Lexer &lx) {
  Scalar s;
  bool first = true;
  while (true) {
    bool neg = false;
    if (lx.accept('-'))
      neg = true;
    else if (!lx.accept('+') && !first)
      break;
    first = false;
    Scalar t = parse_term(lx);
    s += neg ? -t : t;
    char c = lx.peek();
    if (c != '+' && c != '-')
      break;
  }
  return s;
}

} // namespace

Scalar Scalar::parse(const std::string &s) {
  Lexer lx{s};
  if (lx.eof())
    throw ParseError("empty scalar");
  Scalar r = parse_sum(lx);
  if (!lx.eof())
    lx.fail("trailing input");
  return r;
}

} // namespace skeintrace
