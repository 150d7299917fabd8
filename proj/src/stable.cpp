#include "hopfolog/stable.hpp"

#include <cassert>
#include <stdexcept>

namespace hopfolog {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  const FieldPtr& F = a.field();
  Matrix out(F, a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) {
      const Scalar& s = a.at(i, j);
      if (s.is_zero()) continue;
      for (long k = 0; k < b.rows(); ++k)
        for (long l = 0; l < b.cols(); ++l)
          if (!b.at(k, l).is_zero())
            out.set(i * b.rows() + k, j * b.cols() + l, s * b.at(k, l));
    }
  return out;
}

/// Embedding matrix for m |-> Lambda (x) m into Hs (x) M.
Matrix lambda_embedding(const FamilyPtr& fam, long dm) {
  long nh = fam->algebra().dim;
  long lam = hs_lambda_index(fam);
  Matrix e(fam->field(), nh * dm, dm);
  for (long j = 0; j < dm; ++j) e.set(lam * dm + j, j, Scalar::one(fam->field()));
  return e;
}

/// Degree-0 equivariant h: P -> N with h * E = target, if one exists.
std::optional<Matrix> solve_factorization(const GradedModule& p, const GradedModule& n,
                                          const Matrix& e, const Matrix& target) {
  const FieldPtr& F = p.family->field();
  long dp = p.dim(), dn = n.dim(), dm = e.cols();
  std::vector<std::pair<long, long>> vars;  // (row in n, col in p)
  for (long r = 0; r < dn; ++r)
    for (long c = 0; c < dp; ++c)
      if (n.deg2[r] == p.deg2[c]) vars.push_back({r, c});

  // sparse assembly: the system is block-diagonal by degree, so most
  // candidate equations are identically zero and never materialize
  long eq_equiv = dn * dp;
  std::map<long, std::vector<std::pair<long, Scalar>>> rows;
  auto add = [&](long r, long v, const Scalar& c) { rows[r].push_back({v, c}); };
  for (size_t v = 0; v < vars.size(); ++v) {
    auto [r, c] = vars[v];
    // h X_p - X_n h = 0
    for (long j = 0; j < dp; ++j)
      if (!p.X.at(c, j).is_zero()) add(r * dp + j, long(v), p.X.at(c, j));
    for (long i = 0; i < dn; ++i)
      if (!n.X.at(i, r).is_zero()) add(i * dp + c, long(v), -n.X.at(i, r));
    // h E = target
    for (long j = 0; j < dm; ++j)
      if (!e.at(c, j).is_zero()) add(eq_equiv + r * dm + j, long(v), e.at(c, j));
  }
  for (long i = 0; i < dn; ++i)
    for (long j = 0; j < dm; ++j)
      if (!target.at(i, j).is_zero()) rows.try_emplace(eq_equiv + i * dm + j);

  Matrix A(F, long(rows.size()), long(vars.size()));
  Matrix b(F, long(rows.size()), 1);
  long r = 0;
  for (const auto& [eq, terms] : rows) {
    for (const auto& [v, c] : terms) A.set(r, v, A.at(r, v) + c);
    if (eq >= eq_equiv) b.set(r, 0, target.at((eq - eq_equiv) / dm, (eq - eq_equiv) % dm));
    ++r;
  }
  auto sol = solve_linear_system(A, b);
  if (!sol.consistent) return std::nullopt;
  Matrix h(F, dn, dp);
  for (size_t v = 0; v < vars.size(); ++v)
    h.set(vars[v].first, vars[v].second, sol.particular.at(long(v), 0));
  return h;
}

struct ConeData {
  GradedModule P;   // Hs (x) X
  Matrix E;         // Lambda (x) Id : X -> P
  GradedModule C;   // quotient of P (+) Y by the anti-diagonal
  Matrix proj, sect;
};

ConeData build_cone(const ModuleHom& u) {
  const FamilyPtr& fam = u.source.family;
  auto [p, emb] = h_tensor(u.source);
  long dp = p.dim(), dy = u.target.dim(), dx = u.source.dim();
  GradedModule m0 = direct_sum(p, u.target);
  Matrix S(fam->field(), dp + dy, dx);
  for (long i = 0; i < dp; ++i)
    for (long j = 0; j < dx; ++j) S.set(i, j, emb.mat.at(i, j));
  for (long i = 0; i < dy; ++i)
    for (long j = 0; j < dx; ++j) S.set(dp + i, j, -u.mat.at(i, j));
  ConeData cd;
  cd.P = std::move(p);
  cd.E = emb.mat;
  cd.C = quotient_module(m0, S, &cd.proj, &cd.sect);
  return cd;
}

void require_standard(const Triangle& t, const ConeData& cd) {
  if (t.Z.deg2 != cd.C.deg2 || !(t.Z.X == cd.C.X))
    throw std::invalid_argument("triangle is not standard");
}

}  // namespace

std::pair<GradedModule, ModuleHom> h_tensor(const GradedModule& m) {
  const FamilyPtr& fam = m.family;
  GradedModule t = tensor(hs_module(fam), m);
  ModuleHom emb = make_hom(m, t, lambda_embedding(fam, m.dim()));
  return {std::move(t), std::move(emb)};
}

std::pair<StableClass, Decomposition> stable_decompose(const GradedModule& m) {
  Decomposition d = decompose(m);
  StableClass st;
  Decomposition proj;
  st.value.total_dim = 0;
  proj.total_dim = 0;
  for (const auto& e : d.entries) {
    if (e.projective) {
      proj.entries.push_back(e);
      proj.total_dim += e.mult * (e.i + 1);
    } else {
      st.value.entries.push_back(e);
      st.value.total_dim += e.mult * (e.i + 1);
    }
  }
  return {std::move(st), std::move(proj)};
}

bool stably_isomorphic(const GradedModule& a, const GradedModule& b) {
  return stable_decompose(a).first == stable_decompose(b).first;
}

std::optional<HomotopyWitness> null_homotopy(const ModuleHom& f) {
  auto [p, emb] = h_tensor(f.source);
  auto h = solve_factorization(p, f.target, emb.mat, f.mat);
  if (!h) return std::nullopt;
  return HomotopyWitness{make_hom(p, f.target, std::move(*h))};
}

long stable_hom_dim(const GradedModule& m, const GradedModule& n) {
  long full = long(hom_basis(m, n).size());
  auto [p, emb] = h_tensor(m);
  auto hb = hom_basis(p, n);
  if (hb.empty()) return full;
  const FieldPtr& F = m.family->field();
  long dn = n.dim(), dm = m.dim();
  Matrix images(F, dn * dm, long(hb.size()));
  for (size_t k = 0; k < hb.size(); ++k) {
    Matrix img = hb[k].mat * emb.mat;
    for (long i = 0; i < dn; ++i)
      for (long j = 0; j < dm; ++j) images.set(i * dm + j, long(k), img.at(i, j));
  }
  return full - images.rank();
}

GradedModule t_quotient(const FamilyPtr& family, Matrix* proj) {
  GradedModule hs = hs_module(family);
  Matrix S(family->field(), hs.dim(), 1);
  S.set(hs_lambda_index(family), 0, Scalar::one(family->field()));
  return quotient_module(hs, S, proj, nullptr);
}

GradedModule shift_T(const GradedModule& m) {
  return tensor(t_quotient(m.family), m);
}

GradedModule shift_Tprime(const GradedModule& m) {
  return tensor(augmentation_ideal(m.family), m);
}

Triangle cone(const ModuleHom& u) {
  const FamilyPtr& fam = u.source.family;
  ConeData cd = build_cone(u);
  long dp = cd.P.dim(), dy = u.target.dim(), dx = u.source.dim();

  std::vector<long> ycols(dy);
  for (long i = 0; i < dy; ++i) ycols[i] = dp + i;
  ModuleHom v = make_hom(u.target, cd.C, cd.proj.select_columns(ycols));

  Matrix qproj;
  GradedModule q = t_quotient(fam, &qproj);
  GradedModule tx = tensor(q, u.source);
  Matrix w0 = Matrix::hstack(kron(qproj, Matrix::identity(fam->field(), dx)),
                             Matrix(fam->field(), q.dim() * dx, dy));
  ModuleHom w = make_hom(cd.C, tx, w0 * cd.sect);

  return Triangle{u.source, u.target, cd.C, std::move(tx), u, std::move(v), std::move(w)};
}

ModuleHom complete_triangle_morphism(const Triangle& t1, const Triangle& t2,
                                     const ModuleHom& f, const ModuleHom& g) {
  ConeData c1 = build_cone(t1.u), c2 = build_cone(t2.u);
  require_standard(t1, c1);
  require_standard(t2, c2);
  if (f.source.deg2 != t1.X.deg2 || f.target.deg2 != t2.X.deg2 ||
      g.source.deg2 != t1.Y.deg2 || g.target.deg2 != t2.Y.deg2)
    throw std::invalid_argument("morphism endpoints do not match the triangles");

  // alpha with g u = u' f + alpha (Lambda (x) Id)
  Matrix defect = g.mat * t1.u.mat - t2.u.mat * f.mat;
  auto alpha = solve_factorization(c1.P, t2.Y, c1.E, defect);
  if (!alpha) throw std::invalid_argument("not a morphism pair");

  const FieldPtr& F = f.source.family->field();
  long dp2 = c2.P.dim(), dy2 = t2.Y.dim();
  long nh = f.source.family->algebra().dim;

  std::vector<long> pcols2(dp2), ycols2(dy2);
  for (long i = 0; i < dp2; ++i) pcols2[i] = i;
  for (long i = 0; i < dy2; ++i) ycols2[i] = dp2 + i;
  Matrix ubar2 = c2.proj.select_columns(pcols2);  // Hs (x) X' -> C'
  Matrix v2 = c2.proj.select_columns(ycols2);     // Y' -> C'

  Matrix i_f = kron(Matrix::identity(F, nh), f.mat);
  // F on the pre-quotient (Hs (x) X) (+) Y kills the anti-diagonal.
  Matrix big = Matrix::hstack(ubar2 * i_f + v2 * *alpha, v2 * g.mat);
  return make_hom(t1.Z, t2.Z, big * c1.sect);
}

Matrix monomial_action(const GradedModule& m, long monomial) {
  const FamilyPtr& fam = m.family;
  const FieldPtr& F = fam->field();
  long d = m.dim();
  switch (fam->kind()) {
    case HopfFamily::Kind::Truncated:
      return m.X.pow(monomial);
    case HopfFamily::Kind::Taft: {
      long n = fam->nilpotency();
      long a = monomial / n, b = monomial % n;
      Matrix out = m.X.pow(b);
      if (a > 0) {
        Matrix k(F, d, d);
        for (long i = 0; i < d; ++i) k.set(i, i, fam->zeta_pow_half(a * m.deg2[i]));
        out = k * out;
      }
      return out;
    }
    case HopfFamily::Kind::GroupRingZ2:
      if (monomial == 0) return Matrix::identity(F, d);
      return m.X + Matrix::identity(F, d);
  }
  throw std::logic_error("unreachable");
}

HElem distinguished_grouplike(const FamilyPtr& family) {
  const auto& A = family->algebra();
  const FieldPtr& F = A.field;
  long n = A.dim;

  // right integral lambda of H*: sum lambda(h1) x(h2) = x(1) lambda(h)
  Matrix eqs(F, n * n, n);
  for (long i = 0; i < n; ++i) {
    for (const auto& t : A.delta[i]) {
      long row = i * n + t.right;
      eqs.set(row, t.left, eqs.at(row, t.left) + t.coeff);
    }
    long row = i * n + A.unit;
    eqs.set(row, i, eqs.at(row, i) - Scalar::one(F));
  }
  Matrix lam = eqs.kernel_basis();
  if (lam.cols() != 1)
    throw std::logic_error("right integral space of the dual is not one-dimensional");

  long i0 = -1;
  for (long i = 0; i < n; ++i)
    if (!lam.at(i, 0).is_zero()) {
      i0 = i;
      break;
    }
  Scalar pivot_inv = lam.at(i0, 0).inverse();

  // x . lambda = x(g) lambda: for x = e_j*, the functional
  // h |-> sum x(h1) lambda(h2) must equal g_j lambda.
  HElem g = A.zero_elem();
  std::vector<HElem> act(n, A.zero_elem());  // act[j][i] = (e_j* . lambda)(e_i)
  for (long i = 0; i < n; ++i)
    for (const auto& t : A.delta[i])
      act[t.left][i] = act[t.left][i] + t.coeff * lam.at(t.right, 0);
  for (long j = 0; j < n; ++j) {
    g[j] = act[j][i0] * pivot_inv;
    for (long i = 0; i < n; ++i)
      if (act[j][i] != g[j] * lam.at(i, 0))
        throw std::logic_error("dual action of lambda is not a multiple of lambda");
  }

  // grouplike sanity: eps(g) = 1 and Delta(g) = g (x) g
  Scalar eps = Scalar::zero(F);
  for (long i = 0; i < n; ++i) eps = eps + g[i] * A.counit[i];
  if (eps != Scalar::one(F)) throw std::logic_error("distinguished element has eps != 1");
  std::map<std::pair<long, long>, Scalar> dg;
  for (long i = 0; i < n; ++i) {
    if (g[i].is_zero()) continue;
    for (const auto& t : A.delta[i]) {
      auto key = std::make_pair(t.left, t.right);
      auto it = dg.find(key);
      if (it == dg.end())
        dg.emplace(key, g[i] * t.coeff);
      else
        it->second = it->second + g[i] * t.coeff;
    }
  }
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      Scalar want = g[a] * g[b];
      auto it = dg.find({a, b});
      Scalar have = it == dg.end() ? Scalar::zero(F) : it->second;
      if (have != want) throw std::logic_error("distinguished element is not grouplike");
    }
  return g;
}

ModuleHom swap_iso(const GradedModule& v) {
  const FamilyPtr& fam = v.family;
  const auto& A = fam->algebra();
  const FieldPtr& F = A.field;
  long nh = A.dim, dv = v.dim();

  std::vector<Matrix> act;
  act.reserve(nh);
  for (long k = 0; k < nh; ++k) act.push_back(monomial_action(v, k));

  // r1 (v (x) h) = sum s^{-1}(h1) v (x) h2, an operator on V (x) H
  Matrix r1(F, dv * nh, dv * nh);
  for (long k = 0; k < nh; ++k)
    for (const auto& t : A.delta[k])
      for (long l = 0; l < nh; ++l) {
        const Scalar& c = A.antipode_inv.at(l, t.left);
        if (c.is_zero()) continue;
        for (long i = 0; i < dv; ++i)
          for (long r = 0; r < dv; ++r) {
            const Scalar& a = act[l].at(r, i);
            if (a.is_zero()) continue;
            long row = r * nh + t.right, col = i * nh + k;
            r1.set(row, col, r1.at(row, col) + t.coeff * c * a);
          }
      }

  // r2 (v (x) h) = h g (x) v : V (x) H -> H (x) V
  HElem g = distinguished_grouplike(fam);
  Matrix r2(F, nh * dv, dv * nh);
  for (long k = 0; k < nh; ++k) {
    HElem hg = A.mul_elems(A.basis_elem(k), g);
    for (long m = 0; m < nh; ++m) {
      if (hg[m].is_zero()) continue;
      for (long i = 0; i < dv; ++i) r2.set(m * dv + i, i * nh + k, hg[m]);
    }
  }

  // r3 (h (x) v) = sum h1 (x) h2 v, an operator on H (x) V
  Matrix r3(F, nh * dv, nh * dv);
  for (long k = 0; k < nh; ++k)
    for (const auto& t : A.delta[k]) {
      const Matrix& m = act[t.right];
      for (long i = 0; i < dv; ++i)
        for (long r = 0; r < dv; ++r) {
          const Scalar& a = m.at(r, i);
          if (a.is_zero()) continue;
          long row = t.left * dv + r, col = k * dv + i;
          r3.set(row, col, r3.at(row, col) + t.coeff * a);
        }
    }

  Matrix rm = r3 * r2 * r1;

  // For non-unimodular H the composite intertwines the unit embeddings
  // only up to a unit scalar; normalize on v_0 (x) Lambda so that
  // r (Id (x) Lambda) = Lambda (x) Id holds on the nose.
  if (dv > 0) {
    long k0 = -1;
    for (long k = 0; k < nh; ++k)
      if (!A.integral[k].is_zero()) {
        k0 = k;
        break;
      }
    Scalar c = Scalar::zero(F);
    for (long k = 0; k < nh; ++k)
      c = c + rm.at(k0 * dv, 0 * nh + k) * A.integral[k];
    c = c * A.integral[k0].inverse();
    if (c.is_zero()) throw std::logic_error("swap map degenerates on the integral");
    rm = rm.scaled(c.inverse());
  }

  // change of basis: graded string basis on the Hs factors
  const Matrix& P = fam->free_data().graded_from_monomial;
  const Matrix& Pinv = fam->free_data().monomial_from_graded;
  Matrix r = kron(P, Matrix::identity(F, dv)) * rm * kron(Matrix::identity(F, dv), Pinv);
  GradedModule hs = hs_module(fam);
  return make_hom(tensor(v, hs), tensor(hs, v), std::move(r));
}

bool radford_identity_holds(const FamilyPtr& family) {
  const auto& A = family->algebra();
  const FieldPtr& F = A.field;
  using Key = std::pair<long, long>;
  std::map<Key, Scalar> lhs, rhs;
  auto add = [&](std::map<Key, Scalar>& m, Key k, const Scalar& c) {
    auto it = m.find(k);
    if (it == m.end())
      m.emplace(k, c);
    else
      it->second = it->second + c;
    if (m.at(k).is_zero()) m.erase(k);
  };

  HElem g = distinguished_grouplike(family);
  Matrix s2 = A.antipode * A.antipode;
  for (long k = 0; k < A.dim; ++k) {
    if (A.integral[k].is_zero()) continue;
    for (const auto& t : A.delta[k]) {
      Scalar c = A.integral[k] * t.coeff;
      add(lhs, {t.left, t.right}, c);
      // s^2(Lambda_(2)) g (x) Lambda_(1)
      HElem s2h = A.zero_elem();
      for (long m = 0; m < A.dim; ++m) s2h[m] = s2.at(m, t.right);
      HElem w = A.mul_elems(s2h, g);
      for (long m = 0; m < A.dim; ++m)
        if (!w[m].is_zero()) add(rhs, {m, t.left}, c * w[m]);
    }
  }
  (void)F;
  return lhs == rhs;
}

Matrix radford_section(const FamilyPtr& family, long* leading_monomial) {
  const auto& A = family->algebra();
  const FieldPtr& F = A.field;
  long n = A.dim;
  long k0 = -1;
  for (long k = n - 1; k >= 0; --k)
    if (!A.integral[k].is_zero()) {
      k0 = k;
      break;
    }
  if (leading_monomial) *leading_monomial = k0;
  Scalar norm = A.integral[k0].inverse();

  Matrix g(F, n, n * n);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      long col = a * n + b;
      for (const auto& t : A.delta[b]) {
        // t(s^{-1}(b1) a) with t the normalized dual functional of e_{k0}
        HElem sinv = A.zero_elem();
        for (long l = 0; l < n; ++l) sinv[l] = A.antipode_inv.at(l, t.left);
        HElem prod = A.mul_elems(sinv, A.basis_elem(a));
        Scalar val = prod[k0] * norm;
        if (val.is_zero()) continue;
        g.set(t.right, col, g.at(t.right, col) + t.coeff * val);
      }
    }
  return g;
}

}  // namespace hopfolog
