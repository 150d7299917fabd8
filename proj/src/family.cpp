#include "hopfolog/family.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace hopfolog {

namespace {

constexpr long kMaxTruncatedDim = 128;  // cap on p^m for m >= 2
constexpr long kMaxTaftOrder = 24;      // cap on n (dim n^2, tables n^4)

bool is_prime_long(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

HElem HopfAlgebraData::basis_elem(long i) const {
  HElem e = zero_elem();
  e[i] = Scalar::one(field);
  return e;
}

HElem HopfAlgebraData::mul_elems(const HElem& a, const HElem& b) const {
  HElem r = zero_elem();
  for (long i = 0; i < dim; ++i) {
    if (a[i].is_zero()) continue;
    for (long j = 0; j < dim; ++j) {
      if (b[j].is_zero()) continue;
      Scalar c = a[i] * b[j];
      for (const auto& [k, coeff] : mult[i][j]) r[k] = r[k] + c * coeff;
    }
  }
  return r;
}

Matrix HopfAlgebraData::left_mult_matrix(long monomial) const {
  Matrix L(field, dim, dim);
  for (long j = 0; j < dim; ++j)
    for (const auto& [k, coeff] : mult[monomial][j]) L.set(k, j, L.at(k, j) + coeff);
  return L;
}

bool HopfFamily::same(const HopfFamily& o) const {
  return kind_ == o.kind_ && p_ == o.p_ && m_ == o.m_ && n_ == o.n_ &&
         grading_modulus2_ == o.grading_modulus2_;
}

std::string HopfFamily::name() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::Truncated:
      out << "TruncatedPolynomial(p=" << p_ << ",m=" << m_ << (cyclic() ? ",cyclic" : "")
          << ")";
      break;
    case Kind::Taft:
      out << "Taft(n=" << n_ << ")";
      break;
    case Kind::GroupRingZ2:
      out << "GroupRingZ2";
      break;
  }
  return out.str();
}

long HopfFamily::reduce_deg2(long d2) const {
  if (grading_modulus2_ == 0) return d2;
  return ((d2 % grading_modulus2_) + grading_modulus2_) % grading_modulus2_;
}

Scalar HopfFamily::zeta_pow_half(long d2) const {
  if (kind_ != Kind::Taft) return Scalar::one(field_);
  long ord = 2 * n_;
  long e = ((d2 % ord) + ord) % ord;
  return Scalar::zeta(field_).pow(e);
}

void HopfFamily::verify_integral() const {
  const HopfAlgebraData& A = algebra_;
  Matrix lambda(field_, A.dim, 1);
  for (long i = 0; i < A.dim; ++i) lambda.set(i, 0, A.integral[i]);

  Matrix stacked(field_, 0, A.dim);
  bool first = true;
  for (long g : A.generators) {
    Matrix eq = A.left_mult_matrix(g) - Matrix::identity(field_, A.dim).scaled(A.counit[g]);
    if (!(eq * lambda).is_zero())
      throw std::logic_error("integral fails h*Lambda = eps(h)*Lambda for a generator");
    stacked = first ? eq : Matrix::vstack(stacked, eq);
    first = false;
  }
  if (stacked.nullity() != 1)
    throw std::logic_error("space of left integrals is not one-dimensional");
}

FamilyPtr HopfFamily::truncated(long p, long m, bool cyclic_grading) {
  if (!is_prime_long(p) || p > kMaxPrime)
    throw ScaleError("truncated family needs a prime p <= " + std::to_string(kMaxPrime));
  if (m < 1) throw ScaleError("truncated family needs m >= 1");
  long n = 1;
  for (long i = 0; i < m; ++i) {
    n *= p;
    if (m > 1 && n > kMaxTruncatedDim)
      throw ScaleError("p^m exceeds supported size " + std::to_string(kMaxTruncatedDim));
  }

  auto fam = std::shared_ptr<HopfFamily>(new HopfFamily());
  fam->kind_ = Kind::Truncated;
  fam->p_ = p;
  fam->m_ = m;
  fam->n_ = n;
  fam->grading_modulus2_ = cyclic_grading ? 2 * n : 0;
  fam->field_ = Field::prime(p);
  const FieldPtr& F = fam->field_;

  HopfAlgebraData& A = fam->algebra_;
  A.field = F;
  A.dim = n;
  A.unit = 0;
  for (long a = 0; a < n; ++a) {
    if (a == 0)
      A.names.push_back("1");
    else if (a == 1)
      A.names.push_back("X");
    else
      A.names.push_back("X^" + std::to_string(a));
  }

  A.mult.assign(n, std::vector<HSparse>(n));
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      if (a + b < n) A.mult[a][b] = {{a + b, Scalar::one(F)}};

  // Binomials mod p by Pascal's rule.
  std::vector<std::vector<long>> binom(n, std::vector<long>(n, 0));
  for (long a = 0; a < n; ++a) {
    binom[a][0] = 1;
    for (long j = 1; j <= a; ++j)
      binom[a][j] = (binom[a - 1][j - 1] + (j <= a - 1 ? binom[a - 1][j] : 0)) % p;
  }
  A.delta.resize(n);
  for (long a = 0; a < n; ++a)
    for (long j = 0; j <= a; ++j)
      if (binom[a][j] % p != 0)
        A.delta[a].push_back({j, a - j, Scalar::from_int(F, binom[a][j])});

  A.counit.assign(n, Scalar::zero(F));
  A.counit[0] = Scalar::one(F);

  A.antipode = Matrix(F, n, n);
  for (long a = 0; a < n; ++a)
    A.antipode.set(a, a, Scalar::from_int(F, (a % 2 == 0) ? 1 : -1));
  A.antipode_inv = A.antipode;

  A.integral = A.zero_elem();
  A.integral[n - 1] = Scalar::one(F);
  A.generators = {1};

  FreeModuleData& M = fam->free_;
  M.deg2.resize(n);
  for (long a = 0; a < n; ++a) M.deg2[a] = fam->reduce_deg2(2 * a);
  M.X = Matrix(F, n, n);
  for (long a = 0; a + 1 < n; ++a) M.X.set(a + 1, a, Scalar::one(F));
  M.lambda_index = n - 1;
  M.counit_row.assign(n, Scalar::zero(F));
  M.counit_row[0] = Scalar::one(F);
  M.graded_from_monomial = Matrix::identity(F, n);
  M.monomial_from_graded = Matrix::identity(F, n);

  fam->verify_integral();
  return fam;
}

FamilyPtr HopfFamily::taft(long n) {
  if (n < 2 || n > kMaxTaftOrder)
    throw ScaleError("Taft family needs 2 <= n <= " + std::to_string(kMaxTaftOrder));

  auto fam = std::shared_ptr<HopfFamily>(new HopfFamily());
  fam->kind_ = Kind::Taft;
  fam->p_ = 0;
  fam->m_ = 0;
  fam->n_ = n;
  fam->grading_modulus2_ = 2 * n;
  fam->field_ = Field::cyclotomic(2 * n);
  const FieldPtr& F = fam->field_;

  // zeta = primitive n-th root; the field carries zeta_{2n} so half
  // twists zeta^{deg/2} stay in the field.
  Scalar z2n = Scalar::zeta(F);
  Scalar zeta = z2n * z2n;
  std::vector<Scalar> zpow(2 * n, Scalar::one(F));  // zeta^e, e in [0, 2n)
  for (long e = 1; e < 2 * n; ++e) zpow[e] = zpow[e - 1] * zeta;
  auto zp = [&](long e) { return zpow[((e % n) + n) % n]; };

  long N = n * n;  // monomial K^a X^b at index a*n + b
  auto idx = [n](long a, long b) { return a * n + b; };

  HopfAlgebraData& A = fam->algebra_;
  A.field = F;
  A.dim = N;
  A.unit = 0;
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      std::string s;
      if (a == 1)
        s += "K";
      else if (a > 1)
        s += "K^" + std::to_string(a);
      if (b == 1)
        s += "X";
      else if (b > 1)
        s += "X^" + std::to_string(b);
      if (s.empty()) s = "1";
      A.names.push_back(s);
    }

  // (K^a X^b)(K^c X^d) = zeta^{-bc} K^{a+c} X^{b+d}, using X K = zeta^{-1} K X.
  A.mult.assign(N, std::vector<HSparse>(N));
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c)
        for (long d = 0; d < n; ++d)
          if (b + d < n)
            A.mult[idx(a, b)][idx(c, d)] = {{idx((a + c) % n, b + d), zp(-b * c)}};

  // Comultiplication computed inside H (x) H from Delta(K) = K (x) K and
  // Delta(X) = X (x) 1 + K (x) X.
  using Key = std::pair<long, long>;
  using H2 = std::map<Key, Scalar>;
  auto mul2 = [&](const H2& u, const H2& v) {
    H2 r;
    for (const auto& [ku, cu] : u)
      for (const auto& [kv, cv] : v) {
        const HSparse& p1 = A.mult[ku.first][kv.first];
        const HSparse& p2 = A.mult[ku.second][kv.second];
        if (p1.empty() || p2.empty()) continue;
        for (const auto& [i1, c1] : p1)
          for (const auto& [i2, c2] : p2) {
            Key k{i1, i2};
            Scalar add = cu * cv * c1 * c2;
            auto it = r.find(k);
            if (it == r.end())
              r.emplace(k, add);
            else
              it->second = it->second + add;
          }
      }
    for (auto it = r.begin(); it != r.end();)
      it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
  };

  H2 dK{{{idx(1, 0), idx(1, 0)}, Scalar::one(F)}};
  H2 dX{{{idx(0, 1), idx(0, 0)}, Scalar::one(F)}, {{idx(1, 0), idx(0, 1)}, Scalar::one(F)}};
  std::vector<H2> dKpow(n), dXpow(n);
  dKpow[0] = dXpow[0] = H2{{{idx(0, 0), idx(0, 0)}, Scalar::one(F)}};
  for (long e = 1; e < n; ++e) {
    dKpow[e] = mul2(dKpow[e - 1], dK);
    dXpow[e] = mul2(dXpow[e - 1], dX);
  }
  A.delta.resize(N);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      H2 d = mul2(dKpow[a], dXpow[b]);
      for (const auto& [k, c] : d) A.delta[idx(a, b)].push_back({k.first, k.second, c});
    }

  A.counit.assign(N, Scalar::zero(F));
  for (long a = 0; a < n; ++a) A.counit[idx(a, 0)] = Scalar::one(F);

  // S(K^a X^b) = S(X)^b S(K)^a with S(K) = K^{-1}, S(X) = -K^{-1} X.
  // Every monomial maps to a scalar multiple of a monomial, so S^{-1}
  // inverts the assignment directly.
  A.antipode = Matrix(F, N, N);
  A.antipode_inv = Matrix(F, N, N);
  auto mul_mono = [&](std::pair<long, Scalar> u, long mono) -> std::pair<long, Scalar> {
    const HSparse& p = A.mult[u.first][mono];
    if (p.empty()) return {-1, Scalar::zero(F)};
    return {p[0].first, u.second * p[0].second};
  };
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      std::pair<long, Scalar> acc{idx(0, 0), Scalar::one(F)};
      for (long i = 0; i < b; ++i) {
        acc = mul_mono(acc, idx(n - 1, 1));
        acc.second = -acc.second;
      }
      acc = mul_mono(acc, idx((n - a) % n, 0));
      A.antipode.set(acc.first, idx(a, b), acc.second);
      A.antipode_inv.set(idx(a, b), acc.first, acc.second.inverse());
    }

  // Lambda = sum_a K^a X^{n-1}; K Lambda = Lambda so deg(Lambda) = 0.
  A.integral = A.zero_elem();
  for (long a = 0; a < n; ++a) A.integral[idx(a, n - 1)] = Scalar::one(F);
  A.generators = {idx(1, 0), idx(0, 1)};

  // Graded string basis u_{j,b} = X^b v_j, v_j = sum_a zeta^{-ja} K^a:
  // K u_{j,b} = zeta^{j+b} u_{j,b}, X u_{j,b} = u_{j,b+1},
  // eps(u_{j,b}) = n delta_{j,0} delta_{b,0}, Lambda = u_{1,n-1}.
  FreeModuleData& M = fam->free_;
  M.deg2.resize(N);
  M.X = Matrix(F, N, N);
  M.monomial_from_graded = Matrix(F, N, N);
  M.graded_from_monomial = Matrix(F, N, N);
  Scalar inv_n = Scalar::from_int(F, n).inverse();
  for (long j = 0; j < n; ++j)
    for (long b = 0; b < n; ++b) {
      long col = idx(j, b);
      M.deg2[col] = fam->reduce_deg2(2 * (j + b));
      if (b + 1 < n) M.X.set(idx(j, b + 1), col, Scalar::one(F));
      for (long a = 0; a < n; ++a) {
        // u_{j,b} = sum_a zeta^{-a(j+b)} K^a X^b
        M.monomial_from_graded.set(idx(a, b), col, zp(-a * (j + b)));
        // K^a X^b = (1/n) sum_j zeta^{a(j+b)} u_{j,b}
        M.graded_from_monomial.set(col, idx(a, b), zp(a * (j + b)) * inv_n);
      }
    }
  M.lambda_index = idx(1, n - 1);
  M.counit_row.assign(N, Scalar::zero(F));
  M.counit_row[idx(0, 0)] = Scalar::from_int(F, n);

  fam->verify_integral();
  return fam;
}

FamilyPtr HopfFamily::group_ring_z2() {
  auto fam = std::shared_ptr<HopfFamily>(new HopfFamily());
  fam->kind_ = Kind::GroupRingZ2;
  fam->p_ = 2;
  fam->m_ = 0;
  fam->n_ = 2;
  fam->grading_modulus2_ = 2;  // trivial grading: every degree reduces to 0
  fam->field_ = Field::prime(2);
  const FieldPtr& F = fam->field_;
  Scalar one = Scalar::one(F);

  HopfAlgebraData& A = fam->algebra_;
  A.field = F;
  A.dim = 2;
  A.unit = 0;
  A.names = {"1", "g"};
  A.mult = {{{{0, one}}, {{1, one}}}, {{{1, one}}, {{0, one}}}};
  A.delta.resize(2);
  A.delta[0] = {{0, 0, one}};
  A.delta[1] = {{1, 1, one}};
  A.counit = {one, one};
  A.antipode = Matrix::identity(F, 2);
  A.antipode_inv = A.antipode;
  // Lambda = 1 + g (= d, the structure operator).
  A.integral = {one, one};
  A.generators = {1};

  // Graded basis {1, d} with d = 1 + g; X acts as left multiplication by d.
  FreeModuleData& M = fam->free_;
  M.deg2 = {0, 0};
  M.X = Matrix(F, 2, 2);
  M.X.set(1, 0, one);
  M.lambda_index = 1;
  M.counit_row = {one, Scalar::zero(F)};
  M.monomial_from_graded = Matrix(F, 2, 2);
  M.monomial_from_graded.set(0, 0, one);
  M.monomial_from_graded.set(0, 1, one);
  M.monomial_from_graded.set(1, 1, one);
  M.graded_from_monomial = M.monomial_from_graded;  // self-inverse in char 2

  fam->verify_integral();
  return fam;
}

}  // namespace hopfolog
