#pragma once

#include <map>
#include <random>

#include "hopfolog/module.hpp"

namespace hopfolog::testing {

/// Random direct sum of strings, disguised by a random degree-preserving
/// change of basis.
inline GradedModule random_module(std::mt19937& rng, const FamilyPtr& fam,
                                  int max_strings = 4, long deg_span = 3) {
  long n = fam->nilpotency();
  std::uniform_int_distribution<long> nstr(1, max_strings), len(0, n - 1),
      off(-deg_span, deg_span);
  GradedModule m = zero_module(fam);
  long count = nstr(rng);
  for (long s = 0; s < count; ++s) {
    long shift2 = 2 * off(rng);
    m = direct_sum(m, make_indecomposable(fam, len(rng), shift2));
  }
  // conjugate by a random invertible degree-0 map
  const FieldPtr& F = fam->field();
  std::uniform_int_distribution<long> val(-2, 2);
  std::map<long, std::vector<long>> comps;
  for (long i = 0; i < m.dim(); ++i) comps[m.deg2[i]].push_back(i);
  Matrix P(F, m.dim(), m.dim());
  for (const auto& [d, idx] : comps) {
    long k = long(idx.size());
    Matrix block(F, k, k);
    do {
      for (long i = 0; i < k; ++i)
        for (long j = 0; j < k; ++j) block.set(i, j, Scalar::from_int(F, val(rng)));
    } while (block.rank() != k);
    for (long i = 0; i < k; ++i)
      for (long j = 0; j < k; ++j) P.set(idx[i], idx[j], block.at(i, j));
  }
  return make_module(fam, m.deg2, P * m.X * P.inverse());
}

/// Independent decomposition oracle via ranks of X^s on degree components:
/// with N(s,d) = rank of X^s restricted to degree d, the multiplicity of
/// V_s{d} is N(s,d) - N(s+1,d) - N(s+1,d-1) + N(s+2,d-1).
inline Decomposition decompose_by_rank_differences(const GradedModule& m) {
  const FamilyPtr& fam = m.family;
  long n = fam->nilpotency();
  std::map<long, std::vector<long>> comps;
  for (long i = 0; i < m.dim(); ++i) comps[m.deg2[i]].push_back(i);
  std::vector<Matrix> Xp{Matrix::identity(m.X.field(), m.dim())};
  for (long s = 1; s <= n + 2; ++s) Xp.push_back(m.X * Xp.back());

  auto N = [&](long s, long d2) -> long {
    auto it = comps.find(fam->reduce_deg2(d2));
    if (it == comps.end() && fam->grading_modulus2() == 0) return 0;
    if (it == comps.end()) return 0;
    if (s == 0) return long(it->second.size());
    return Xp[s].select_columns(it->second).rank();
  };

  Decomposition out;
  out.total_dim = m.dim();
  for (const auto& [d2, idx] : comps)
    for (long s = 0; s < n; ++s) {
      long mult = N(s, d2) - N(s + 1, d2) - N(s + 1, d2 - 2) + N(s + 2, d2 - 2);
      if (mult > 0) out.entries.push_back({s, d2, mult, s == n - 1});
    }
  std::sort(out.entries.begin(), out.entries.end(), [](const DecompEntry& a, const DecompEntry& b) {
    return std::tie(a.i, a.shift2) < std::tie(b.i, b.shift2);
  });
  return out;
}

}  // namespace hopfolog::testing
