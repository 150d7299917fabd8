#include "hopfolog/module.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace hopfolog {

namespace {

void require_same_family(const GradedModule& a, const GradedModule& b) {
  if (!a.family || !b.family || !a.family->same(*b.family))
    throw std::invalid_argument("modules belong to different families");
}

std::map<long, std::vector<long>> degree_components(const GradedModule& m) {
  std::map<long, std::vector<long>> comps;
  for (long i = 0; i < m.dim(); ++i) comps[m.deg2[i]].push_back(i);
  return comps;
}

// X^0 .. X^n, stopping early once zero.
std::vector<Matrix> x_powers(const GradedModule& m, long n) {
  std::vector<Matrix> p;
  p.push_back(Matrix::identity(m.X.field(), m.dim()));
  for (long i = 1; i <= n; ++i) {
    if (p.back().is_zero() && i > 1)
      p.push_back(p.back());
    else
      p.push_back(m.X * p.back());
  }
  return p;
}

// Homogeneous bases, per degree, of the graded subspace spanned by the
// columns of S; coordinates are local to the degree component. Throws if
// the span is not graded.
std::map<long, Matrix> homogeneous_span(const GradedModule& m, const Matrix& S) {
  auto comps = degree_components(m);
  std::map<long, Matrix> parts;
  long total = 0;
  for (const auto& [d2, idx] : comps) {
    Matrix local = S.select_rows(idx).column_space_basis();
    if (local.cols() > 0) {
      parts.emplace(d2, local);
      total += local.cols();
    }
  }
  if (total != S.rank())
    throw std::invalid_argument("subspace is not graded");
  return parts;
}

}  // namespace

long max_module_dim() {
  static long cap = [] {
    if (const char* e = std::getenv("HOPFOLOG_MAX_DIM")) {
      long v = std::atol(e);
      if (v > 0) return v;
    }
    return kMaxModuleDim;
  }();
  return cap;
}

std::vector<std::string> validate(const GradedModule& m) {
  std::vector<std::string> bad;
  if (!m.family) {
    bad.push_back("module has no family");
    return bad;
  }
  const HopfFamily& fam = *m.family;
  if (!m.X.field() || !fam.field()->same(*m.X.field()))
    bad.push_back("X is over the wrong field");
  if (m.X.rows() != m.dim() || m.X.cols() != m.dim())
    bad.push_back("X has wrong shape");
  if (!bad.empty()) return bad;
  if (m.dim() > max_module_dim())
    bad.push_back("dimension exceeds the configured bound");
  long mod2 = fam.grading_modulus2();
  for (long i = 0; i < m.dim(); ++i) {
    if (mod2 != 0 && (m.deg2[i] < 0 || m.deg2[i] >= mod2)) {
      bad.push_back("degree of basis vector " + std::to_string(i) + " not reduced");
    }
    if (fam.kind() == HopfFamily::Kind::GroupRingZ2 && fam.reduce_deg2(m.deg2[i]) != 0)
      bad.push_back("half-integer degree at basis vector " + std::to_string(i) +
                    " (this family is ungraded)");
  }
  for (long r = 0; r < m.dim(); ++r)
    for (long c = 0; c < m.dim(); ++c)
      if (!m.X.at(r, c).is_zero() && m.deg2[r] != fam.reduce_deg2(m.deg2[c] + 2)) {
        bad.push_back("X not homogeneous of degree +1 at entry (" + std::to_string(r) +
                      "," + std::to_string(c) + ")");
        r = m.dim();  // one report is enough
        break;
      }
  if (!m.X.pow(fam.nilpotency()).is_zero())
    bad.push_back("nilpotency: X^" + std::to_string(fam.nilpotency()) + " != 0");
  return bad;
}

GradedModule make_module(FamilyPtr family, std::vector<long> deg2, Matrix X) {
  if (!family) throw std::invalid_argument("null family");
  for (long& d : deg2) d = family->reduce_deg2(d);
  GradedModule m{std::move(family), std::move(deg2), std::move(X)};
  if (m.dim() > max_module_dim())
    throw ScaleError("module dimension " + std::to_string(m.dim()) +
                     " exceeds bound " + std::to_string(max_module_dim()));
  auto bad = validate(m);
  if (!bad.empty()) throw std::invalid_argument("invalid module: " + bad.front());
  return m;
}

GradedModule make_indecomposable(const FamilyPtr& family, long i, long shift2) {
  if (!family) throw std::invalid_argument("null family");
  long n = family->nilpotency();
  if (i < 0 || i > n - 1) throw std::invalid_argument("string length index out of range");
  if (family->kind() == HopfFamily::Kind::GroupRingZ2 && shift2 % 2 != 0)
    throw std::invalid_argument("this family has no half shifts");
  std::vector<long> deg2(i + 1);
  for (long r = 0; r <= i; ++r) deg2[r] = shift2 + 2 * r;
  Matrix X(family->field(), i + 1, i + 1);
  for (long r = 0; r < i; ++r) X.set(r + 1, r, Scalar::one(family->field()));
  return make_module(family, std::move(deg2), std::move(X));
}

GradedModule zero_module(const FamilyPtr& family) {
  return GradedModule{family, {}, Matrix(family->field(), 0, 0)};
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
  require_same_family(a, b);
  std::vector<long> deg2 = a.deg2;
  deg2.insert(deg2.end(), b.deg2.begin(), b.deg2.end());
  return make_module(a.family, std::move(deg2), Matrix::block_diag(a.X, b.X));
}

GradedModule shift(const GradedModule& m, long shift2) {
  if (m.family->kind() == HopfFamily::Kind::GroupRingZ2 && shift2 % 2 != 0)
    throw std::invalid_argument("this family has no half shifts");
  std::vector<long> deg2 = m.deg2;
  for (long& d : deg2) d = m.family->reduce_deg2(d + shift2);
  return GradedModule{m.family, std::move(deg2), m.X};
}

GradedModule tensor(const GradedModule& a, const GradedModule& b) {
  require_same_family(a, b);
  const FamilyPtr& fam = a.family;
  const FieldPtr& F = fam->field();
  long da = a.dim(), db = b.dim();
  if (da > 0 && db > 0 && da > max_module_dim() / db)
    throw ScaleError("tensor product dimension exceeds bound");
  std::vector<long> deg2(da * db);
  Matrix X(F, da * db, da * db);
  for (long i = 0; i < da; ++i)
    for (long j = 0; j < db; ++j) deg2[i * db + j] = fam->reduce_deg2(a.deg2[i] + b.deg2[j]);

  bool group_ring = fam->kind() == HopfFamily::Kind::GroupRingZ2;
  // X(u (x) v) = Xu (x) v + (K u) (x) Xv with K = zeta^{deg} (identity for
  // the cocommutative families); for k[Z_2] the grouplike comultiplication
  // of d adds the diagonal term Xu (x) Xv.
  for (long i = 0; i < da; ++i)
    for (long j = 0; j < db; ++j) {
      long col = i * db + j;
      for (long r = 0; r < da; ++r)
        if (!a.X.at(r, i).is_zero()) X.set(r * db + j, col, a.X.at(r, i));
      Scalar twist = fam->zeta_pow_half(a.deg2[i]);
      for (long s = 0; s < db; ++s)
        if (!b.X.at(s, j).is_zero())
          X.set(i * db + s, col, X.at(i * db + s, col) + twist * b.X.at(s, j));
      if (group_ring)
        for (long r = 0; r < da; ++r) {
          if (a.X.at(r, i).is_zero()) continue;
          for (long s = 0; s < db; ++s)
            if (!b.X.at(s, j).is_zero())
              X.set(r * db + s, col, X.at(r * db + s, col) + a.X.at(r, i) * b.X.at(s, j));
        }
    }
  return make_module(fam, std::move(deg2), std::move(X));
}

GradedModule dual(const GradedModule& m) {
  const FamilyPtr& fam = m.family;
  long d = m.dim();
  std::vector<long> deg2(d);
  for (long i = 0; i < d; ++i) deg2[i] = fam->reduce_deg2(-m.deg2[i]);
  // (X f)(v) = f(S(X) v): S(X) = -X (truncated), -K^{-1}X (Taft),
  // d (group ring, char 2).
  Matrix X(fam->field(), d, d);
  for (long k = 0; k < d; ++k)
    for (long j = 0; j < d; ++j) {
      const Scalar& e = m.X.at(j, k);
      if (e.is_zero()) continue;
      Scalar v = e;
      switch (fam->kind()) {
        case HopfFamily::Kind::Truncated:
          v = -v;
          break;
        case HopfFamily::Kind::Taft:
          v = -(fam->zeta_pow_half(-(m.deg2[k] + 2)) * v);
          break;
        case HopfFamily::Kind::GroupRingZ2:
          break;
      }
      X.set(k, j, v);
    }
  return make_module(fam, std::move(deg2), std::move(X));
}

std::vector<std::string> hom_violations(const ModuleHom& f) {
  std::vector<std::string> bad;
  if (!f.source.family || !f.target.family || !f.source.family->same(*f.target.family)) {
    bad.push_back("source and target in different families");
    return bad;
  }
  if (f.mat.rows() != f.target.dim() || f.mat.cols() != f.source.dim()) {
    bad.push_back("matrix shape mismatch");
    return bad;
  }
  for (long r = 0; r < f.mat.rows(); ++r)
    for (long c = 0; c < f.mat.cols(); ++c)
      if (!f.mat.at(r, c).is_zero() && f.target.deg2[r] != f.source.deg2[c]) {
        bad.push_back("map is not degree-0");
        r = f.mat.rows();
        break;
      }
  if (!(f.mat * f.source.X == f.target.X * f.mat)) bad.push_back("map is not X-equivariant");
  return bad;
}

ModuleHom make_hom(GradedModule source, GradedModule target, Matrix mat) {
  ModuleHom f{std::move(source), std::move(target), std::move(mat)};
  auto bad = hom_violations(f);
  if (!bad.empty()) throw std::invalid_argument("invalid morphism: " + bad.front());
  return f;
}

ModuleHom compose(const ModuleHom& g, const ModuleHom& f) {
  if (g.source.dim() != f.target.dim())
    throw std::invalid_argument("composition shape mismatch");
  return ModuleHom{f.source, g.target, g.mat * f.mat};
}

ModuleHom identity_hom(const GradedModule& m) {
  return ModuleHom{m, m, Matrix::identity(m.family->field(), m.dim())};
}

ModuleHom zero_hom(const GradedModule& source, const GradedModule& target) {
  return ModuleHom{source, target, Matrix(source.family->field(), target.dim(), source.dim())};
}

bool operator==(const DecompEntry& a, const DecompEntry& b) {
  return a.i == b.i && a.shift2 == b.shift2 && a.mult == b.mult;
}

std::string Decomposition::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& e : entries) {
    if (!first) out << " + ";
    first = false;
    out << e.mult << "*V_" << e.i << "{";
    if (e.shift2 % 2 == 0)
      out << e.shift2 / 2;
    else
      out << e.shift2 << "/2";
    out << "}";
  }
  if (first) out << "0";
  return out.str();
}

Decomposition decompose(const GradedModule& m) {
  auto bad = validate(m);
  if (!bad.empty()) throw std::invalid_argument("decompose: " + bad.front());
  const FamilyPtr& fam = m.family;
  long n = fam->nilpotency();
  auto comps = degree_components(m);
  auto Xp = x_powers(m, n);

  std::map<std::pair<long, long>, long> mult;  // (i, shift2) -> multiplicity
  for (const auto& [d2, idx] : comps) {
    Matrix ker = m.X.select_columns(idx).kernel_basis();  // local coords
    long prev = ker.cols();
    for (long i = 1; i <= n && prev > 0; ++i) {
      long src2 = fam->reduce_deg2(d2 - 2 * i);
      long c = 0;
      auto it = comps.find(src2);
      if (it != comps.end()) {
        Matrix im = Xp[i].select_columns(it->second).select_rows(idx);
        if (im.cols() > 0) c = intersection_dim(ker, im);
      }
      if (prev - c > 0) {
        long top_i = i - 1;
        mult[{top_i, fam->reduce_deg2(d2 - 2 * top_i)}] += prev - c;
      }
      prev = c;
    }
  }

  Decomposition out;
  long total = 0;
  for (const auto& [key, k] : mult) {
    out.entries.push_back({key.first, key.second, k, key.first == n - 1});
    total += k * (key.first + 1);
  }
  out.total_dim = m.dim();
  if (total != m.dim())
    throw std::logic_error("decomposition does not account for the full dimension");
  return out;
}

GradedModule assemble(const FamilyPtr& family, const Decomposition& d) {
  GradedModule acc = zero_module(family);
  for (const auto& e : d.entries)
    for (long k = 0; k < e.mult; ++k)
      acc = direct_sum(acc, make_indecomposable(family, e.i, e.shift2));
  return acc;
}

std::vector<ModuleHom> hom_basis(const GradedModule& m, const GradedModule& n) {
  require_same_family(m, n);
  const FieldPtr& F = m.family->field();
  long dm = m.dim(), dn = n.dim();
  std::vector<std::pair<long, long>> vars;  // (row in n, col in m)
  for (long r = 0; r < dn; ++r)
    for (long c = 0; c < dm; ++c)
      if (n.deg2[r] == m.deg2[c]) vars.push_back({r, c});

  // Equivariance F X_m = X_n F as linear equations in the allowed entries.
  Matrix A(F, dn * dm, long(vars.size()));
  for (size_t v = 0; v < vars.size(); ++v) {
    auto [r, c] = vars[v];
    for (long j = 0; j < dm; ++j)
      if (!m.X.at(c, j).is_zero())
        A.set(r * dm + j, long(v), A.at(r * dm + j, long(v)) + m.X.at(c, j));
    for (long i = 0; i < dn; ++i)
      if (!n.X.at(i, r).is_zero())
        A.set(i * dm + c, long(v), A.at(i * dm + c, long(v)) - n.X.at(i, r));
  }
  // the system is block-sparse by degree: drop identically-zero equations
  std::vector<long> live;
  for (long r = 0; r < A.rows(); ++r) {
    bool nz = false;
    for (long c = 0; !nz && c < A.cols(); ++c) nz = !A.at(r, c).is_zero();
    if (nz) live.push_back(r);
  }
  Matrix K = A.select_rows(live).kernel_basis();
  std::vector<ModuleHom> basis;
  for (long k = 0; k < K.cols(); ++k) {
    Matrix f(F, dn, dm);
    for (size_t v = 0; v < vars.size(); ++v) f.set(vars[v].first, vars[v].second, K.at(long(v), k));
    basis.push_back(ModuleHom{m, n, std::move(f)});
  }
  return basis;
}

std::map<long, long> slash_homology(const GradedModule& m, long a) {
  long n = m.family->nilpotency();
  if (a < 1 || a > n - 1) throw std::invalid_argument("slash homology index out of range");
  auto comps = degree_components(m);
  auto Xp = x_powers(m, n);
  std::map<long, long> out;
  for (const auto& [d2, idx] : comps) {
    long kdim = long(idx.size()) - Xp[a].select_columns(idx).rank();
    long src2 = m.family->reduce_deg2(d2 - 2 * (n - a));
    long imdim = 0;
    auto it = comps.find(src2);
    if (it != comps.end())
      imdim = Xp[n - a].select_columns(it->second).select_rows(idx).rank();
    if (kdim - imdim != 0) out[d2] = kdim - imdim;
  }
  return out;
}

bool is_isomorphic(const GradedModule& a, const GradedModule& b) {
  require_same_family(a, b);
  return decompose(a) == decompose(b);
}

LaurentHalf poincare_polynomial(const GradedModule& m) {
  LaurentHalf p;
  for (long d : m.deg2) p = p + LaurentHalf::monomial(d, 1);
  return p;
}

GradedModule free_module(const FamilyPtr& family) {
  const FreeModuleData& fd = family->free_data();
  return GradedModule{family, fd.deg2, fd.X};
}

GradedModule hs_module(const FamilyPtr& family) {
  return shift(free_module(family), -family->lambda_deg2());
}

long hs_lambda_index(const FamilyPtr& family) { return family->free_data().lambda_index; }

GradedModule augmentation_ideal(const FamilyPtr& family, std::vector<long>* kept) {
  const FreeModuleData& fd = family->free_data();
  long dim = long(fd.deg2.size());
  std::vector<long> idx;
  for (long i = 0; i < dim; ++i)
    if (fd.counit_row[i].is_zero()) idx.push_back(i);
  if (long(idx.size()) != dim - 1)
    throw std::logic_error("counit support is not a single basis vector");
  std::vector<long> deg2;
  for (long i : idx) deg2.push_back(fd.deg2[i]);
  if (kept) *kept = idx;
  return make_module(family, std::move(deg2), fd.X.select_rows(idx).select_columns(idx));
}

GradedModule quotient_module(const GradedModule& m, const Matrix& S, Matrix* proj,
                             Matrix* sect) {
  const FieldPtr& F = m.family->field();
  auto comps = degree_components(m);
  auto parts = homogeneous_span(m, S);

  std::vector<long> qdeg2;
  std::vector<Matrix> prows;
  std::vector<long> qcols;  // global index of the section basis vector
  for (const auto& [d2, idx] : comps) {
    long nd = long(idx.size());
    Matrix sub(F, nd, 0);
    auto it = parts.find(d2);
    if (it != parts.end()) sub = it->second;
    Matrix A = Matrix::hstack(sub, Matrix::identity(F, nd));
    std::vector<long> piv = pivot_columns(A);
    std::vector<long> keep;
    for (long c : piv)
      if (c >= sub.cols()) keep.push_back(c - sub.cols());
    if (keep.empty()) continue;
    // invert the full local basis [sub | kept standard vectors]
    Matrix basis = Matrix::hstack(sub, Matrix::identity(F, nd).select_columns(keep));
    Matrix inv = basis.inverse();
    for (size_t s = 0; s < keep.size(); ++s) {
      qdeg2.push_back(d2);
      qcols.push_back(idx[keep[s]]);
      prows.push_back(inv.select_rows({sub.cols() + long(s)}));  // 1 x nd, local coords
    }
    // remember local index lists for assembly below
  }
  long q = long(qdeg2.size());
  Matrix Pm(F, q, m.dim());
  Matrix Sm(F, m.dim(), q);
  {
    long row = 0;
    for (const auto& [d2, idx] : comps) {
      long nd = long(idx.size());
      (void)nd;
      // rows for this degree were pushed in order; re-scan to fill
      for (; row < q && qdeg2[row] == d2; ++row) {
        // find position of qcols[row] handled via stored prows over idx
        for (size_t j = 0; j < idx.size(); ++j) Pm.set(row, idx[j], prows[row].at(0, long(j)));
        Sm.set(qcols[row], row, Scalar::one(F));
      }
    }
  }
  GradedModule out = make_module(m.family, std::move(qdeg2), Pm * m.X * Sm);
#ifndef NDEBUG
  if (!((Pm * Sm) == Matrix::identity(F, q)) || !(Pm * S).is_zero())
    throw std::logic_error("quotient construction inconsistent");
#endif
  if (proj) *proj = std::move(Pm);
  if (sect) *sect = std::move(Sm);
  return out;
}

GradedModule submodule(const GradedModule& m, const Matrix& S, Matrix* incl) {
  const FieldPtr& F = m.family->field();
  auto comps = degree_components(m);
  auto parts = homogeneous_span(m, S);
  std::vector<long> deg2;
  long total = 0;
  for (const auto& [d2, local] : parts) total += local.cols();
  Matrix B(F, m.dim(), total);
  long col = 0;
  for (const auto& [d2, local] : parts) {
    const std::vector<long>& idx = comps.at(d2);
    for (long c = 0; c < local.cols(); ++c, ++col) {
      deg2.push_back(d2);
      for (size_t j = 0; j < idx.size(); ++j) B.set(idx[j], col, local.at(long(j), c));
    }
  }
  LinearSolution sol = solve_linear_system(B, m.X * B);
  if (!sol.consistent) throw std::invalid_argument("span is not X-stable");
  if (incl) *incl = B;
  return make_module(m.family, std::move(deg2), sol.particular);
}

}  // namespace hopfolog
