#include "doctest.h"
#include "skeintrace/errors.hpp"
#include "skeintrace/scalar.hpp"
#include "support.hpp"

using namespace skeintrace;

namespace {
const Scalar q = Scalar::q();
const Scalar A = Scalar::A();
const Scalar z = Scalar::zeta();
} // namespace

TEST_CASE("addition") {
  CHECK((q + (-q)).is_zero());
  CHECK(Scalar::q(Rat(1, 2)) + Scalar::q(Rat(1, 2)) == Scalar(2) * z * A);
  auto ids = tet_angle_symbols("sa");
  auto s = Scalar::q_angle(AngleForm::symbol(ids[0])) +
           Scalar::q_angle(AngleForm::symbol(ids[1], -1));
  CHECK(s.terms().size() == 2);
}

TEST_CASE("multiplication") {
  CHECK(z * z == Scalar(-1));
  CHECK(A * (-A) - A.inverse() * (-A).inverse() == q - q.inverse());
  auto ids = tet_angle_symbols("sm");
  auto prod = Scalar::q_angle(AngleForm::symbol(ids[0])) *
              Scalar::q_angle(AngleForm::symbol(ids[1])) *
              Scalar::q_angle(AngleForm::symbol(ids[2]));
  // exponents th + th' + th'' = pi, checked with plain rationals
  Rat sum = Rat(1) + Rat(1) + Rat(1) - Rat(1) - Rat(1);
  CHECK(sum == Rat(1));
  CHECK(prod == Scalar::q(sum));
}

TEST_CASE("q and zeta") {
  CHECK(q == -(A * A));
  CHECK(Scalar::q(Rat(1, 2)) == z * A);
  CHECK(Scalar::q(Rat(1, 2)) * Scalar::q(Rat(1, 2)) == q);
  CHECK(z.pow(4) == Scalar(1));
  CHECK(Scalar::q(Rat(1, 4)).pow(4) == q);
  CHECK(Scalar::q(Rat(-3, 4)) * Scalar::q(Rat(3, 4)) == Scalar(1));
  CHECK_THROWS_AS(Scalar::A(Rat(1, 8)), ConstraintViolation);
}

TEST_CASE("substitute constants") {
  auto ct0 = Scalar::q(Rat(-1, 2));
  CHECK(Scalar::Ct().substitute_constants(ct0, 1) == z.inverse() * A.inverse());
  CHECK((q.inverse() * Scalar::Ct(-3)).substitute_constants(ct0, 1) ==
        Scalar::q(Rat(1, 2)));
  CHECK(Scalar::Ct().substitute_constants(-ct0, 1) == -(z.inverse() * A.inverse()));
  CHECK_THROWS_AS(Scalar::Ct().substitute_constants(1, 1), ConstraintViolation);
  CHECK(satisfies_constraint(Scalar::Ct(), Scalar::Cb()));
}

TEST_CASE("reduce_cb") {
  CHECK(Scalar::Cb(2).reduce_cb() == q * Scalar::Ct(2));
  CHECK(Scalar::Cb(-3).reduce_cb() ==
        Scalar::Cb() * (q * Scalar::Ct(2)).pow(-2));
}

TEST_CASE("text round trip") {
  auto ids = tet_angle_symbols("tr", {"th1", "thp1", "thpp1"});
  auto s = Scalar(2) * z * Scalar::A(Rat(1, 2)) *
           Scalar::q_angle(AngleForm::symbol(ids[0], Rat(1, 2)));
  CHECK(s.str() == "2*z*A^(1/2)*Q[th1/2]");
  CHECK(Scalar::parse(s.str()) == s);
  CHECK(Scalar::parse("q^(-1/2)") == Scalar::q(Rat(-1, 2)));
  CHECK(Scalar::parse("Q[thpp1]") == Scalar::parse("q*Q[-th1 - thp1]"));
  for (int i = 0; i < 100; ++i) {
    auto r = testsupport::random_scalar(3);
    CHECK(Scalar::parse(r.str()) == r);
  }
  CHECK_THROWS_AS(Scalar::parse("2**A"), ParseError);
  CHECK_THROWS_AS(Scalar::parse("A^"), ParseError);
}

TEST_CASE("ring axioms on random scalars") {
  for (int i = 0; i < 200; ++i) {
    auto a = testsupport::random_scalar(), b = testsupport::random_scalar(),
         c = testsupport::random_scalar();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
  }
}

TEST_CASE("elimination confluence") {
  auto ids = tet_angle_symbols("ec");
  for (int i = 0; i < 50; ++i) {
    Rat c0(testsupport::uniform(-4, 4), 2), c2(testsupport::uniform(-4, 4), 3);
    auto f = AngleForm::symbol(ids[0], c0) + AngleForm::symbol(ids[2], c2);
    auto direct = Scalar::q_angle(f);
    auto split = Scalar::q_angle(AngleForm::symbol(ids[0], c0)) *
                 Scalar::q_angle(AngleForm::symbol(ids[2], c2));
    CHECK(direct == split);
  }
}
