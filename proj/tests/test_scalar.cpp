#include <random>

#include "doctest.h"
#include "hopfolog/scalar.hpp"

using namespace hopfolog;

TEST_CASE("prime field axioms, exhaustive up to p = 13") {
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
    auto F = Field::prime(p);
    std::vector<Scalar> all;
    for (long v = 0; v < p; ++v) all.push_back(Scalar::from_int(F, v));
    Scalar zero = Scalar::zero(F), one = Scalar::one(F);
    for (long a = 0; a < p; ++a) {
      CHECK(all[a] + zero == all[a]);
      CHECK(all[a] * one == all[a]);
      CHECK(all[a] + (-all[a]) == zero);
      if (a != 0) CHECK(all[a] * all[a].inverse() == one);
      for (long b = 0; b < p; ++b) {
        CHECK(all[a] + all[b] == all[b] + all[a]);
        CHECK(all[a] * all[b] == all[b] * all[a]);
        for (long c = 0; c < p; ++c) {
          CHECK((all[a] + all[b]) + all[c] == all[a] + (all[b] + all[c]));
          CHECK((all[a] * all[b]) * all[c] == all[a] * (all[b] * all[c]));
          CHECK(all[a] * (all[b] + all[c]) == all[a] * all[b] + all[a] * all[c]);
        }
      }
    }
  }
}

TEST_CASE("zeta is a primitive n-th root and Phi_n(zeta) = 0, n <= 12") {
  for (long n = 2; n <= 12; ++n) {
    auto F = Field::cyclotomic(n);
    Scalar z = Scalar::zeta(F);
    CHECK(z.pow(n) == Scalar::one(F));
    for (long k = 1; k < n; ++k) CHECK(z.pow(k) != Scalar::one(F));
    // evaluate the modulus at zeta
    Scalar acc = Scalar::zero(F);
    const auto& mod = F->modulus();
    for (long k = long(mod.size()) - 1; k >= 0; --k)
      acc = acc * z + Scalar::from_rational(F, mod[k]);
    CHECK(acc.is_zero());
  }
}

TEST_CASE("cyclotomic polynomial values") {
  auto phi = [](long n) { return cyclotomic_polynomial(n); };
  CHECK(phi(1) == std::vector<mpz_class>{-1, 1});
  CHECK(phi(2) == std::vector<mpz_class>{1, 1});
  CHECK(phi(3) == std::vector<mpz_class>{1, 1, 1});
  CHECK(phi(4) == std::vector<mpz_class>{1, 0, 1});
  CHECK(phi(6) == std::vector<mpz_class>{1, -1, 1});
  CHECK(phi(12) == std::vector<mpz_class>{1, 0, -1, 0, 1});
}

TEST_CASE("random cyclotomic arithmetic identities") {
  std::mt19937 rng(20260823);
  std::uniform_int_distribution<long> nd(2, 12), cd(-6, 6);
  for (int iter = 0; iter < 1000; ++iter) {
    long n = nd(rng);
    auto F = Field::cyclotomic(n);
    auto rnd = [&] {
      std::vector<mpq_class> c(F->degree());
      for (auto& x : c) x = cd(rng);
      return Scalar::from_poly(F, std::move(c));
    };
    Scalar a = rnd(), b = rnd(), c = rnd();
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a - a).is_zero());
    if (!a.is_zero()) {
      CHECK(a * a.inverse() == Scalar::one(F));
      CHECK(a.pow(-2) == (a * a).inverse());
    }
  }
}

TEST_CASE("scalar literals parse exactly") {
  auto F3 = Field::prime(3);
  CHECK(parse_scalar(F3, "7") == Scalar::from_int(F3, 1));
  CHECK(parse_scalar(F3, "-1") == Scalar::from_int(F3, 2));
  CHECK(parse_scalar(F3, "1/2") == Scalar::from_int(F3, 2));  // 2^{-1} = 2 mod 3
  CHECK_THROWS_AS(parse_scalar(F3, "z"), std::invalid_argument);

  auto C = Field::cyclotomic(5);
  Scalar z = Scalar::zeta(C);
  CHECK(parse_scalar(C, "z^2") == z * z);
  CHECK(parse_scalar(C, "2/3*z^2 - z + 1") ==
        Scalar::from_poly(C, {1, -1, mpq_class(2, 3)}));
  CHECK(parse_scalar(C, "-z") == -z);
  CHECK(parse_scalar(C, "0") == Scalar::zero(C));
  // round trip through to_string
  for (const char* lit : {"2/3*z^2 - z + 1", "z^3 + z", "-5", "1/7"}) {
    Scalar s = parse_scalar(C, lit);
    CHECK(parse_scalar(C, s.to_string()) == s);
  }
}

TEST_CASE("desk-scale bounds are enforced") {
  CHECK_THROWS_AS(Field::prime(4), std::invalid_argument);
  CHECK_THROWS_AS(Field::prime(101), ScaleError);
  CHECK_THROWS_AS(Field::cyclotomic(65), ScaleError);
  CHECK_NOTHROW(Field::prime(97));
  CHECK_NOTHROW(Field::cyclotomic(64));
}

TEST_CASE("mixed-field arithmetic is rejected") {
  auto a = Scalar::one(Field::prime(3));
  auto b = Scalar::one(Field::prime(5));
  CHECK_THROWS_AS((void)(a + b), FieldMismatch);
  auto c = Scalar::one(Field::cyclotomic(3));
  CHECK_THROWS_AS((void)(a * c), FieldMismatch);
}
