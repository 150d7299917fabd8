#include "hopfolog/groth.hpp"

#include <sstream>
#include <stdexcept>

namespace hopfolog {

namespace {

void require_n(long n) {
  if (n < 2) throw std::invalid_argument("R_n requires n >= 2");
}

void require_same(const RnElem& a, const RnElem& b) {
  if (a.n != b.n) throw std::invalid_argument("R_n modulus mismatch");
}

/// Canonical form from exponent -> coefficient data with arbitrary
/// integer exponents: reduce exponents mod n (q^n = 1), then eliminate
/// q^{n-1} via q^{n-1} = -(1 + q + ... + q^{n-2}).
RnElem rn_from_terms(long n, const std::map<long, long>& terms) {
  std::vector<long> folded(n, 0);
  for (const auto& [e, c] : terms) folded[((e % n) + n) % n] += c;
  RnElem out{n, std::vector<long>(n - 1, 0)};
  for (long k = 0; k + 1 < n; ++k) out.coeffs[k] = folded[k] - folded[n - 1];
  return out;
}

}  // namespace

bool RnElem::is_zero() const {
  for (long c : coeffs)
    if (c != 0) return false;
  return true;
}

std::string RnElem::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long k = 0; k + 1 < n; ++k) {
    long c = coeffs[k];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    long a = c < 0 ? -c : c;
    if (a != 1 || k == 0) os << a;
    if (k > 0) {
      if (a != 1) os << "*";
      os << "q";
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

RnElem rn_zero(long n) {
  require_n(n);
  return RnElem{n, std::vector<long>(n - 1, 0)};
}

RnElem rn_one(long n) { return rn_monomial(n, 0); }

RnElem rn_monomial(long n, long k) {
  require_n(n);
  return rn_from_terms(n, {{k, 1}});
}

RnElem rn_add(const RnElem& a, const RnElem& b) {
  require_same(a, b);
  RnElem out = a;
  for (long k = 0; k + 1 < a.n; ++k) out.coeffs[k] += b.coeffs[k];
  return out;
}

RnElem rn_neg(const RnElem& a) { return rn_scale(a, -1); }

RnElem rn_scale(const RnElem& a, long c) {
  RnElem out = a;
  for (long& x : out.coeffs) x *= c;
  return out;
}

RnElem rn_mul(const RnElem& a, const RnElem& b) {
  require_same(a, b);
  std::map<long, long> prod;
  for (long i = 0; i + 1 < a.n; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (long j = 0; j + 1 < b.n; ++j)
      if (b.coeffs[j] != 0) prod[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return rn_from_terms(a.n, prod);
}

std::string VerlindeElem::to_string() const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : coeffs) {
    if (!first) os << " + ";
    os << "(" << c.to_string() << ")*[~V_" << i << "]";
    first = false;
  }
  return os.str();
}

RnElem class_of(const GradedModule& m) {
  long n = m.family->nilpotency();
  RnElem out = rn_zero(n);
  for (const auto& e : decompose(m).entries) {
    if (e.projective) continue;
    if (e.shift2 % 2 != 0)
      throw std::invalid_argument(
          "half-integer shifts have no class in R_n; use split_class");
    long j = e.shift2 / 2;
    RnElem str = rn_zero(n);
    for (long k = 0; k <= e.i; ++k) str = rn_add(str, rn_monomial(n, j + k));
    out = rn_add(out, rn_scale(str, e.mult));
  }
  return out;
}

GradedModule balanced_indecomposable(const FamilyPtr& family, long i) {
  return make_indecomposable(family, i, family->reduce_deg2(-i));
}

VerlindeElem split_class(const GradedModule& m) {
  const FamilyPtr& fam = m.family;
  long n = fam->nilpotency();
  VerlindeElem out{n, {}};
  for (const auto& e : stable_decompose(m).first.value.entries) {
    LaurentHalf term = LaurentHalf::monomial(e.shift2 + e.i, e.mult);
    if (fam->cyclic()) term = term.reduced_mod(n);
    auto it = out.coeffs.find(e.i);
    LaurentHalf sum = it == out.coeffs.end() ? term : it->second + term;
    if (sum.is_zero())
      out.coeffs.erase(e.i);
    else
      out.coeffs[e.i] = sum;
  }
  return out;
}

std::vector<long> fusion_set(long i, long j, long n) {
  if (i < 0 || j < 0 || i > n - 2 || j > n - 2)
    throw std::invalid_argument("fusion indices out of range");
  long lo = i > j ? i - j : j - i;
  long hi = std::min(i + j, 2 * n - i - j - 4);
  std::vector<long> out;
  for (long m = lo; m <= hi; m += 2) out.push_back(m);
  return out;
}

std::vector<long> verlinde_oracle(long i, long j, long level) {
  if (level < 0 || i < 0 || j < 0 || i > level || j > level)
    throw std::invalid_argument("fusion indices out of range");
  using Multiset = std::map<long, long>;
  auto fuse1 = [&](const Multiset& s) {
    Multiset out;
    for (const auto& [m, c] : s) {
      if (m - 1 >= 0) out[m - 1] += c;
      if (m + 1 <= level) out[m + 1] += c;
    }
    return out;
  };
  // f(i) = [V_i (x) V_j] by [1][i-1 (x) j] = [i (x) j] + [i-2 (x) j],
  // seeded with f(-1) = 0, f(0) = {j}
  Multiset prev, cur{{j, 1}};
  for (long s = 1; s <= i; ++s) {
    Multiset next = fuse1(cur);
    for (const auto& [m, c] : prev) {
      next[m] -= c;
      if (next[m] == 0) next.erase(m);
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  std::vector<long> out;
  for (const auto& [m, c] : cur) {
    if (c < 0) throw std::logic_error("negative fusion multiplicity");
    if (c > 0) out.push_back(m);
  }
  return out;
}

FusionTable fusion_table(const FamilyPtr& family) {
  bool ok = (family->kind() == HopfFamily::Kind::Truncated && family->exponent_m() == 1) ||
            family->kind() == HopfFamily::Kind::Taft ||
            family->kind() == HopfFamily::Kind::GroupRingZ2;
  if (!ok) throw std::invalid_argument("fusion table needs X^p truncated or Taft");
  long n = family->nilpotency();
  FusionTable table;
  table.n = n;
  for (long i = 0; i + 1 < n; ++i)
    for (long j = 0; j + 1 < n; ++j) {
      FusionCell cell;
      cell.i = i;
      cell.j = j;
      GradedModule prod =
          tensor(balanced_indecomposable(family, i), balanced_indecomposable(family, j));
      cell.actual = stable_decompose(prod).first;
      cell.predicted = fusion_set(i, j, n);
      Decomposition want;
      for (long m : cell.predicted)
        want.entries.push_back({m, family->reduce_deg2(-m), 1, false});
      std::sort(want.entries.begin(), want.entries.end(),
                [](const DecompEntry& a, const DecompEntry& b) {
                  return std::tie(a.i, a.shift2) < std::tie(b.i, b.shift2);
                });
      cell.match = cell.actual.value.entries == want.entries;
      if (!cell.match) ++table.mismatches;
      table.cells.push_back(std::move(cell));
    }
  return table;
}

std::vector<std::pair<long, long>> hm_split_deviation(long p, long m) {
  if (m < 1) throw std::invalid_argument("exponent must be at least 1");
  FamilyPtr fam = HopfFamily::truncated(p, m, false);  // validates p prime
  long n = fam->nilpotency();
  std::vector<std::pair<long, long>> deviations;
  for (long i = 0; i + 1 < n; ++i)
    for (long j = 0; j + 1 < n; ++j) {
      GradedModule prod =
          tensor(balanced_indecomposable(fam, i), balanced_indecomposable(fam, j));
      StableClass actual = stable_decompose(prod).first;
      Decomposition want;
      for (long k : verlinde_oracle(i, j, n - 2)) want.entries.push_back({k, -k, 1, false});
      std::sort(want.entries.begin(), want.entries.end(),
                [](const DecompEntry& a, const DecompEntry& b) {
                  return std::tie(a.i, a.shift2) < std::tie(b.i, b.shift2);
                });
      if (actual.value.entries != want.entries) deviations.push_back({i, j});
    }
  return deviations;
}

std::vector<mpz_class> reduce_mod_cyclotomic(long n, std::vector<mpz_class> poly) {
  std::vector<mpz_class> phi = cyclotomic_polynomial(n);
  long d = long(phi.size()) - 1;  // monic of degree d
  while (long(poly.size()) > d) {
    mpz_class lead = poly.back();
    long off = long(poly.size()) - 1 - d;
    if (lead != 0)
      for (long k = 0; k <= d; ++k) poly[off + k] -= lead * phi[k];
    poly.pop_back();
  }
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  return poly;
}

}  // namespace hopfolog
