#include "doctest.h"

#include "potentsum/cyclotomic.hpp"
#include "potentsum/floatcomplex.hpp"
#include "potentsum/primefield.hpp"
#include "test_util.hpp"

using namespace potentsum;
using testutil::Rng;

namespace {

// independent long-division oracle for integer polynomials (ascending coeffs)
std::vector<Integer> divide_exactly(std::vector<Integer> num, const std::vector<Integer>& den) {
  int dn = static_cast<int>(num.size()) - 1;
  int dd = static_cast<int>(den.size()) - 1;
  std::vector<Integer> q(dn - dd + 1, Integer(0));
  for (int i = dn; i >= dd; --i) {
    Integer c = num[i] / den[dd];
    q[i - dd] = c;
    for (int j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (const auto& c : num) REQUIRE(c == 0);
  return q;
}

std::vector<Integer> poly_mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> out(a.size() + b.size() - 1, Integer(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Integer>{-1, 1});    // x - 1
  CHECK(cyclotomic_polynomial(2) == std::vector<Integer>{1, 1});     // x + 1
  CHECK(cyclotomic_polynomial(4) == std::vector<Integer>{1, 0, 1});  // x^2 + 1
  CHECK(cyclotomic_polynomial(3) == std::vector<Integer>{1, 1, 1});

  // oracle: (x^6 - 1) / (Phi_1 Phi_2 Phi_3) by independent long division
  std::vector<Integer> x6m1{-1, 0, 0, 0, 0, 0, 1};
  auto denom = poly_mul(poly_mul(cyclotomic_polynomial(1), cyclotomic_polynomial(2)),
                        cyclotomic_polynomial(3));
  CHECK(cyclotomic_polynomial(6) == divide_exactly(x6m1, denom));
  CHECK(cyclotomic_polynomial(6) == std::vector<Integer>{1, -1, 1});  // x^2 - x + 1

  // degree is phi(k)
  CHECK(CycloField::get(12)->degree() == 4);
  CHECK(CycloField::get(5)->degree() == 4);
  CHECK_THROWS_AS(cyclotomic_polynomial(0), Error);
}

TEST_CASE("omega powers") {
  auto f2 = CycloField::get(2);
  CHECK(CycloNum::omega_power(f2, 1) == CycloNum::from_int(f2, -1));

  auto f3 = CycloField::get(3);
  CHECK(CycloNum::omega_power(f3, 3) == CycloNum::one(f3));
  // x^2 mod (x^2 + x + 1) = -1 - x
  CHECK(CycloNum::omega_power(f3, 2).coeffs() == std::vector<Rational>{-1, -1});
  CHECK(CycloNum::omega_power(f3, -1) == CycloNum::omega_power(f3, 2));
}

TEST_CASE("inversion") {
  auto f4 = CycloField::get(4);
  CHECK(CycloNum::one(f4).inv() == CycloNum::one(f4));
  CHECK(CycloNum::omega_power(f4, 1).inv() == CycloNum::omega_power(f4, 3));

  // (1 + zeta)^{-1} = -zeta in Q(zeta_3): frozen from the extended Euclid of
  // (1 + x) and x^2 + x + 1
  auto f3 = CycloField::get(3);
  CycloNum a = CycloNum::one(f3) + CycloNum::omega_power(f3, 1);
  CHECK(a.inv() == -CycloNum::omega_power(f3, 1));
  CHECK_THROWS_AS(CycloNum(f3).inv(), DivisionByZeroError);
}

TEST_CASE("field axioms on random elements") {
  Rng rng(7);
  for (int k : {2, 3, 4, 6, 8, 12}) {
    auto f = CycloField::get(k);
    for (int it = 0; it < 60; ++it) {
      CycloNum a = testutil::random_cyclo(rng, f);
      CycloNum b = testutil::random_cyclo(rng, f);
      CycloNum c = testutil::random_cyclo(rng, f);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) CHECK(a * a.inv() == CycloNum::one(f));
    }
  }
}

TEST_CASE("omega satisfies its defining relations") {
  for (int k : {2, 3, 4, 5, 6, 12}) {
    auto f = CycloField::get(k);
    CycloNum w = CycloNum::omega_power(f, 1);

    // Phi_k(w) = 0
    CycloNum phi_at_w(f);
    CycloNum wp = CycloNum::one(f);
    for (const Integer& c : f->modulus()) {
      phi_at_w += wp.scaled(Rational(c));
      wp = wp * w;
    }
    CHECK(phi_at_w.is_zero());

    CycloNum p = CycloNum::one(f);
    for (int j = 1; j < k; ++j) {
      p = p * w;
      CHECK(p != CycloNum::one(f));  // w^j != 1 for 0 < j < k
    }
    CHECK(p * w == CycloNum::one(f));  // w^k = 1
  }
}

TEST_CASE("conjugation") {
  Rng rng(11);
  for (int k : {3, 4, 5, 8}) {
    auto f = CycloField::get(k);
    CHECK(CycloNum::omega_power(f, 1).conj() == CycloNum::omega_power(f, k - 1));
    for (int it = 0; it < 25; ++it) {
      CycloNum a = testutil::random_cyclo(rng, f);
      CHECK(a.conj().conj() == a);
      CycloNum b = testutil::random_cyclo(rng, f);
      CHECK((a * b).conj() == a.conj() * b.conj());
    }
  }
}

TEST_CASE("embedding into a larger field") {
  auto f3 = CycloField::get(3);
  auto f12 = CycloField::get(12);
  CycloNum w3 = CycloNum::omega_power(f3, 1);
  CycloNum image = w3.embed_into(f12);
  CHECK(image == CycloNum::omega_power(f12, 4));
  // embedding is a ring homomorphism
  Rng rng(13);
  CycloNum a = testutil::random_cyclo(rng, f3);
  CycloNum b = testutil::random_cyclo(rng, f3);
  CHECK((a * b).embed_into(f12) == a.embed_into(f12) * b.embed_into(f12));
  CHECK((a + b).embed_into(f12) == a.embed_into(f12) + b.embed_into(f12));
}

TEST_CASE("text syntax round trip") {
  Rng rng(17);
  for (int k : {2, 3, 4, 6, 12}) {
    auto f = CycloField::get(k);
    for (int it = 0; it < 40; ++it) {
      CycloNum a = testutil::random_cyclo(rng, f);
      CycloNum back = CycloNum::parse(f, a.str());
      CHECK(back.coeffs() == a.coeffs());  // canonical form is the identity
    }
  }
  auto f3 = CycloField::get(3);
  CHECK(CycloNum::parse(f3, "4 - 9/2*w + 25/4*w^2") ==
        CycloNum::from_rational(f3, Rational(4)) +
            CycloNum::omega_power(f3, 1).scaled(Rational(-9, 2)) +
            CycloNum::omega_power(f3, 2).scaled(Rational(25, 4)));
  CHECK(CycloNum::parse(f3, "  1+w ") == CycloNum::parse(f3, "1 + w"));
  CHECK(CycloNum::parse(f3, "w^5") == CycloNum::omega_power(f3, 2));
  CHECK(CycloNum::parse(f3, "2w") == CycloNum::omega_power(f3, 1).scaled(Rational(2)));
  CHECK(CycloNum::parse(f3, "0").is_zero());
  CHECK_THROWS_AS(CycloNum::parse(f3, "1 +"), ParseError);
  CHECK_THROWS_AS(CycloNum::parse(f3, "q"), ParseError);
  CHECK(parse_rational("2.5") == Rational(5, 2));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
}

TEST_CASE("mixed fields are rejected") {
  auto f3 = CycloField::get(3);
  auto f4 = CycloField::get(4);
  CHECK_THROWS_AS(CycloNum::one(f3) + CycloNum::one(f4), Error);
}

TEST_CASE("float backend tolerance semantics") {
  FloatComplex::tolerance() = 1e-9;
  FloatComplex a({1.0, 0.0}, 4);
  FloatComplex b({1.0 + 1e-12, 0.0}, 4);
  CHECK(a == b);
  CHECK(a != FloatComplex({1.01, 0.0}, 4));
  FloatComplex w = FloatComplex::omega_power(4, 1);
  CHECK(w * w * w * w == FloatComplex::one(4));
  CHECK((w * w.inv()) == FloatComplex::one(4));
  // relative part of the tolerance: large magnitudes compare loosely
  FloatComplex big({1e12, 0.0}, 4);
  CHECK(big == FloatComplex({1e12 + 1.0, 0.0}, 4));
  CHECK(FloatComplex::parse(4, "1/2 + 2*w^2") == FloatComplex({-1.5, 0.0}, 4));
}

TEST_CASE("prime field backend") {
  PrimeFieldScalar w = PrimeFieldScalar::zero(7, 3).omega_pow_like(1);
  CHECK(w * w * w == PrimeFieldScalar::one(7, 3));
  CHECK(w != PrimeFieldScalar::one(7, 3));
  CHECK(w * w != PrimeFieldScalar::one(7, 3));
  PrimeFieldScalar x(5, 7, 3);
  CHECK(x * x.inv() == PrimeFieldScalar::one(7, 3));
  CHECK(x.from_rational_like(Rational(1, 2)) + x.from_rational_like(Rational(1, 2)) ==
        PrimeFieldScalar::one(7, 3));
  CHECK_THROWS_AS(PrimeFieldScalar(1, 3, 2), UnsupportedError);   // p > 3 required
  CHECK_THROWS_AS(PrimeFieldScalar(1, 11, 4), UnsupportedError);  // 4 does not divide 10
}
