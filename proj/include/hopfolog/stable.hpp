#pragma once

#include <optional>

#include "hopfolog/module.hpp"

namespace hopfolog {

/// Decomposition with every projective (i = n-1) summand removed.
struct StableClass {
  Decomposition value;

  bool operator==(const StableClass& o) const { return value == o.value; }
  bool empty() const { return value.entries.empty(); }
  std::string to_string() const { return value.to_string(); }
};

/// X --u--> Y --v--> Z --w--> TX. For a standard triangle Z is the cone
/// of u presented as ((Hs (x) X) (+) Y) / span{(Lambda (x) a, -u(a))}.
struct Triangle {
  GradedModule X, Y, Z, TX;
  ModuleHom u, v, w;
};

/// Factorization f = h . (Lambda (x) Id) certifying that f vanishes
/// stably; h lives on Hs (x) source(f).
struct HomotopyWitness {
  ModuleHom h;
};

/// Hs (x) M together with the embedding m |-> Lambda (x) m. The result
/// is projective of rank dim(M).
std::pair<GradedModule, ModuleHom> h_tensor(const GradedModule& m);

/// Splits decompose(m) into its stable and projective parts.
std::pair<StableClass, Decomposition> stable_decompose(const GradedModule& m);

/// Stable isomorphism test: equality of stable classes.
bool stably_isomorphic(const GradedModule& a, const GradedModule& b);

/// Searches for h: Hs (x) M1 -> M2 with h . (Lambda (x) Id) = f; absence
/// certifies that f is nonzero in the stable category.
std::optional<HomotopyWitness> null_homotopy(const ModuleHom& f);

/// dim Hom(M,N) minus the dimension of the null-homotopic subspace.
long stable_hom_dim(const GradedModule& m, const GradedModule& n);

/// Hs / (k Lambda); proj (optional) receives the quotient map.
GradedModule t_quotient(const FamilyPtr& family, Matrix* proj = nullptr);

/// T(M) = (Hs / k Lambda) (x) M.
GradedModule shift_T(const GradedModule& m);
/// T'(M) = ker(eps) (x) M.
GradedModule shift_Tprime(const GradedModule& m);

/// Standard distinguished triangle on u.
Triangle cone(const ModuleHom& u);

/// TR3: given standard triangles on t1.u, t2.u and f, g with u'f = gu
/// stably, produces h: t1.Z -> t2.Z with h.v = v'.g exactly and
/// w'.h = T(f).w up to null-homotopy. Throws std::invalid_argument if
/// u'f - gu is not null-homotopic or the triangles are not standard.
ModuleHom complete_triangle_morphism(const Triangle& t1, const Triangle& t2,
                                     const ModuleHom& f, const ModuleHom& g);

/// Action of the given monomial of H on a module (X-powers, with the
/// K-twist diag(zeta^{deg}) for Taft and g = d + 1 for the group ring).
Matrix monomial_action(const GradedModule& m, long monomial);

/// The grouplike g with x . lambda = x(g) lambda for every x in H*,
/// lambda a right integral of H*. Coordinates in the monomial basis.
HElem distinguished_grouplike(const FamilyPtr& family);

/// The swap r = r3 r2 r1 : V (x) Hs -> Hs (x) V, an invertible
/// equivariant map with r . (Id (x) Lambda) = Lambda (x) Id.
ModuleHom swap_iso(const GradedModule& v);

/// Checks sum Lambda_(1) (x) Lambda_(2) = sum s^2(Lambda_(2)) g (x)
/// Lambda_(1) in H (x) H.
bool radford_identity_holds(const FamilyPtr& family);

/// Explicit section g(a (x) b) = sum b_(2) t(s^{-1}(b_(1)) a) of
/// Lambda (x) Id : H -> H (x) H, as a matrix H (x) H -> H in the
/// monomial basis; t is the dual functional of Lambda's leading
/// monomial (index reported via leading_monomial).
Matrix radford_section(const FamilyPtr& family, long* leading_monomial = nullptr);

}  // namespace hopfolog
