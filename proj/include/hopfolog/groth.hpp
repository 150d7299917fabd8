#pragma once

#include "hopfolog/stable.hpp"

namespace hopfolog {

/// Element of R_n = Z[q]/(1 + q + ... + q^{n-1}) in canonical form:
/// coefficients of q^0 ... q^{n-2} after eliminating q^{n-1}.
struct RnElem {
  long n = 2;
  std::vector<long> coeffs;  // length n-1

  bool operator==(const RnElem& o) const { return n == o.n && coeffs == o.coeffs; }
  bool is_zero() const;
  std::string to_string() const;
};

RnElem rn_zero(long n);
RnElem rn_one(long n);
/// q^k for any integer k (q is a unit: q^n = 1 in R_n).
RnElem rn_monomial(long n, long k);
RnElem rn_add(const RnElem& a, const RnElem& b);
RnElem rn_neg(const RnElem& a);
RnElem rn_scale(const RnElem& a, long c);
RnElem rn_mul(const RnElem& a, const RnElem& b);

/// Element of the split Grothendieck ring: a free Z[q^{1/2}, q^{-1/2}]
/// combination of the balanced classes [~V_0], ..., [~V_{n-2}].
struct VerlindeElem {
  long n = 2;
  std::map<long, LaurentHalf> coeffs;  // basis index -> coefficient, zeros pruned

  bool operator==(const VerlindeElem& o) const { return n == o.n && coeffs == o.coeffs; }
  bool is_zero() const { return coeffs.empty(); }
  std::string to_string() const;
};

/// [M] in R_n: summand V_i{j} contributes q^j (1 + ... + q^i), projectives
/// contribute 0. Rejects half-integer shifts (their classes live in the
/// split ring, not in R_n).
RnElem class_of(const GradedModule& m);

/// Balanced string ~V_i = V_i{-i/2}.
GradedModule balanced_indecomposable(const FamilyPtr& family, long i);

/// Stable class in the balanced basis: V_i{j} contributes q^{j+i/2} [~V_i].
VerlindeElem split_class(const GradedModule& m);

/// {|i-j|, |i-j|+2, ..., min(i+j, 2n-i-j-4)}.
std::vector<long> fusion_set(long i, long j, long n);

/// Independent SU(2) level-l fusion support, by the recursion
/// [1][i-1 (x) j] = [i (x) j] + [i-2 (x) j].
std::vector<long> verlinde_oracle(long i, long j, long level);

struct FusionCell {
  long i = 0, j = 0;
  StableClass actual;
  std::vector<long> predicted;  // fusion indices m (balanced shifts)
  bool match = false;
};

struct FusionTable {
  long n = 2;
  std::vector<FusionCell> cells;  // row-major over 0 <= i,j <= n-2
  long mismatches = 0;
};

/// Full fusion check against fusion_set. Family must be truncated with
/// m = 1, or Taft; mismatches are reported, never thrown.
FusionTable fusion_table(const FamilyPtr& family);

/// Deviation of the split ring of k[X]/(X^{p^m}) from the level p^m - 2
/// Verlinde prediction; nonempty exactly when m >= 2.
std::vector<std::pair<long, long>> hm_split_deviation(long p, long m);

/// Remainder of an integer polynomial modulo the n-th cyclotomic
/// polynomial (the "stronger relation" for composite n); this is kept
/// separate from R_n reduction on purpose.
std::vector<mpz_class> reduce_mod_cyclotomic(long n, std::vector<mpz_class> poly);

}  // namespace hopfolog
