#include <map>

#include "doctest.h"
#include "hopfolog/family.hpp"

using namespace hopfolog;

namespace {

using Key2 = std::pair<long, long>;
using H2 = std::map<Key2, Scalar>;
using Key3 = std::tuple<long, long, long>;
using H3 = std::map<Key3, Scalar>;

void add_to(H2& m, Key2 k, const Scalar& c) {
  auto it = m.find(k);
  if (it == m.end())
    m.emplace(k, c);
  else
    it->second = it->second + c;
  if (m.at(k).is_zero()) m.erase(k);
}

void add_to(H3& m, Key3 k, const Scalar& c) {
  auto it = m.find(k);
  if (it == m.end())
    m.emplace(k, c);
  else
    it->second = it->second + c;
  if (m.at(k).is_zero()) m.erase(k);
}

H2 delta_of(const HopfAlgebraData& A, long mono) {
  H2 d;
  for (const auto& t : A.delta[mono]) add_to(d, {t.left, t.right}, t.coeff);
  return d;
}

std::vector<FamilyPtr> sample_families() {
  return {
      HopfFamily::truncated(2, 1, false), HopfFamily::truncated(3, 1, false),
      HopfFamily::truncated(5, 1, true),  HopfFamily::truncated(2, 2, false),
      HopfFamily::truncated(3, 2, true),  HopfFamily::taft(2),
      HopfFamily::taft(3),                HopfFamily::taft(4),
      HopfFamily::taft(5),                HopfFamily::group_ring_z2(),
  };
}

}  // namespace

TEST_CASE("comultiplication is coassociative and counital") {
  for (const auto& fam : sample_families()) {
    const auto& A = fam->algebra();
    for (long i = 0; i < A.dim; ++i) {
      H3 left, right;
      for (const auto& t : A.delta[i]) {
        for (const auto& u : A.delta[t.left])
          add_to(left, {u.left, u.right, t.right}, t.coeff * u.coeff);
        for (const auto& u : A.delta[t.right])
          add_to(right, {t.left, u.left, u.right}, t.coeff * u.coeff);
      }
      CHECK(left == right);

      // (eps (x) id) Delta = id = (id (x) eps) Delta
      HElem l = A.zero_elem(), r = A.zero_elem();
      for (const auto& t : A.delta[i]) {
        l[t.right] = l[t.right] + t.coeff * A.counit[t.left];
        r[t.left] = r[t.left] + t.coeff * A.counit[t.right];
      }
      CHECK(l == A.basis_elem(i));
      CHECK(r == A.basis_elem(i));
    }
  }
}

TEST_CASE("antipode axiom and inverse") {
  for (const auto& fam : sample_families()) {
    const auto& A = fam->algebra();
    CHECK(A.antipode * A.antipode_inv == Matrix::identity(A.field, A.dim));
    for (long i = 0; i < A.dim; ++i) {
      HElem conv1 = A.zero_elem(), conv2 = A.zero_elem();
      for (const auto& t : A.delta[i]) {
        // S(h1) h2 and h1 S(h2)
        HElem sh1 = A.zero_elem(), sh2 = A.zero_elem();
        for (long k = 0; k < A.dim; ++k) {
          sh1[k] = A.antipode.at(k, t.left);
          sh2[k] = A.antipode.at(k, t.right);
        }
        HElem p1 = A.mul_elems(sh1, A.basis_elem(t.right));
        HElem p2 = A.mul_elems(A.basis_elem(t.left), sh2);
        for (long k = 0; k < A.dim; ++k) {
          conv1[k] = conv1[k] + t.coeff * p1[k];
          conv2[k] = conv2[k] + t.coeff * p2[k];
        }
      }
      HElem expected = A.zero_elem();
      expected[A.unit] = A.counit[i];
      CHECK(conv1 == expected);
      CHECK(conv2 == expected);
    }
  }
}

TEST_CASE("Delta and eps are algebra maps") {
  for (const auto& fam : sample_families()) {
    const auto& A = fam->algebra();
    if (A.dim > 16) continue;  // spot-check small tables
    for (long i = 0; i < A.dim; ++i)
      for (long j = 0; j < A.dim; ++j) {
        // eps(e_i e_j) = eps(e_i) eps(e_j)
        Scalar e = Scalar::zero(A.field);
        for (const auto& [k, c] : A.mult[i][j]) e = e + c * A.counit[k];
        CHECK(e == A.counit[i] * A.counit[j]);

        // Delta(e_i e_j) = Delta(e_i) Delta(e_j)
        H2 lhs, rhs;
        for (const auto& [k, c] : A.mult[i][j])
          for (const auto& t : A.delta[k]) add_to(lhs, {t.left, t.right}, c * t.coeff);
        for (const auto& t : A.delta[i])
          for (const auto& u : A.delta[j]) {
            Scalar c = t.coeff * u.coeff;
            for (const auto& [k1, c1] : A.mult[t.left][u.left])
              for (const auto& [k2, c2] : A.mult[t.right][u.right])
                add_to(rhs, {k1, k2}, c * c1 * c2);
          }
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("multiplication is associative and unital") {
  for (const auto& fam : sample_families()) {
    const auto& A = fam->algebra();
    if (A.dim > 16) continue;
    for (long i = 0; i < A.dim; ++i) {
      CHECK(A.mul_elems(A.basis_elem(A.unit), A.basis_elem(i)) == A.basis_elem(i));
      CHECK(A.mul_elems(A.basis_elem(i), A.basis_elem(A.unit)) == A.basis_elem(i));
      for (long j = 0; j < A.dim; ++j)
        for (long k = 0; k < A.dim; ++k) {
          HElem ab_c = A.mul_elems(A.mul_elems(A.basis_elem(i), A.basis_elem(j)),
                                   A.basis_elem(k));
          HElem a_bc = A.mul_elems(A.basis_elem(i),
                                   A.mul_elems(A.basis_elem(j), A.basis_elem(k)));
          CHECK(ab_c == a_bc);
        }
    }
  }
}

TEST_CASE("integral property holds for every basis element") {
  for (const auto& fam : sample_families()) {
    const auto& A = fam->algebra();
    for (long i = 0; i < A.dim; ++i) {
      HElem prod = A.mul_elems(A.basis_elem(i), A.integral);
      HElem expected = A.integral;
      for (auto& c : expected) c = c * A.counit[i];
      CHECK(prod == expected);
    }
  }
}

TEST_CASE("graded free-module presentation matches the monomial one") {
  for (const auto& fam : sample_families()) {
    const auto& A = fam->algebra();
    const auto& M = fam->free_data();
    const auto& P = M.graded_from_monomial;
    const auto& Pinv = M.monomial_from_graded;
    CHECK(P * Pinv == Matrix::identity(A.field, A.dim));

    // X action: graded X = P L P^{-1} where L is left multiplication by
    // the structure operator (X, or d = g + 1 for the group ring).
    Matrix L = A.left_mult_matrix(A.generators.back());
    if (fam->kind() == HopfFamily::Kind::GroupRingZ2)
      L = L + Matrix::identity(A.field, A.dim);
    CHECK(M.X == P * L * Pinv);

    // Lambda sits at lambda_index
    Matrix lam(A.field, A.dim, 1);
    for (long i = 0; i < A.dim; ++i) lam.set(i, 0, A.integral[i]);
    Matrix glam = P * lam;
    for (long i = 0; i < A.dim; ++i)
      CHECK(glam.at(i, 0) == (i == M.lambda_index ? Scalar::one(A.field) : Scalar::zero(A.field)));

    // counit row transported to the graded basis
    for (long i = 0; i < A.dim; ++i) {
      Scalar e = Scalar::zero(A.field);
      for (long k = 0; k < A.dim; ++k) e = e + A.counit[k] * Pinv.at(k, i);
      CHECK(e == M.counit_row[i]);
    }

    // degrees: X raises by one; Taft K-action is zeta^{deg}
    for (long r = 0; r < A.dim; ++r)
      for (long c = 0; c < A.dim; ++c)
        if (!M.X.at(r, c).is_zero()) CHECK(M.deg2[r] == fam->reduce_deg2(M.deg2[c] + 2));
    if (fam->kind() == HopfFamily::Kind::Taft) {
      long kgen = A.generators.front();
      Matrix K = P * A.left_mult_matrix(kgen) * Pinv;
      for (long r = 0; r < A.dim; ++r)
        for (long c = 0; c < A.dim; ++c) {
          if (r == c)
            CHECK(K.at(r, c) == fam->zeta_pow_half(M.deg2[r]));
          else
            CHECK(K.at(r, c).is_zero());
        }
    }
  }
}

TEST_CASE("grouplike Delta for the group ring and primitive-type X") {
  auto g2 = HopfFamily::group_ring_z2();
  const auto& A = g2->algebra();
  CHECK(delta_of(A, 1) == H2{{{1, 1}, Scalar::one(A.field)}});

  auto t3 = HopfFamily::truncated(3, 1, false);
  const auto& B = t3->algebra();
  H2 dx = delta_of(B, 1);
  H2 expect{{{1, 0}, Scalar::one(B.field)}, {{0, 1}, Scalar::one(B.field)}};
  CHECK(dx == expect);

  auto taft = HopfFamily::taft(3);
  const auto& T = taft->algebra();
  long K = T.generators.front(), X = T.generators.back();
  CHECK(delta_of(T, K) == H2{{{K, K}, Scalar::one(T.field)}});
  CHECK(delta_of(T, X) ==
        H2{{{X, T.unit}, Scalar::one(T.field)}, {{K, X}, Scalar::one(T.field)}});
}

TEST_CASE("family scale limits") {
  CHECK_THROWS_AS(HopfFamily::truncated(4, 1, false), ScaleError);
  CHECK_THROWS_AS(HopfFamily::truncated(2, 8, false), ScaleError);
  CHECK_THROWS_AS(HopfFamily::taft(1), ScaleError);
  CHECK_THROWS_AS(HopfFamily::taft(100), ScaleError);
  CHECK_NOTHROW(HopfFamily::truncated(97, 1, false));
}
