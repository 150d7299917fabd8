#pragma once

#include <map>

#include "hopfolog/family.hpp"
#include "hopfolog/laurent.hpp"

namespace hopfolog {

/// Effective module dimension cap; HOPFOLOG_MAX_DIM overrides.
long max_module_dim();

/// Finite-dimensional graded module over one of the Hopf families.
/// Only the degrees and the nilpotent degree-+1 operator X are stored;
/// for Taft the K-action is K.b = zeta^{deg b} b by definition.
struct GradedModule {
  FamilyPtr family;
  std::vector<long> deg2;  // doubled degrees, reduced in cyclic mode
  Matrix X;

  long dim() const { return long(deg2.size()); }
};

/// Validated constructor: throws std::invalid_argument on any violation.
GradedModule make_module(FamilyPtr family, std::vector<long> deg2, Matrix X);

/// Diagnostic check of all GradedModule invariants; empty list means ok.
std::vector<std::string> validate(const GradedModule& m);

/// String module V_i{j}: basis in degrees j, j+1, ..., j+i (doubled input),
/// X b_r = b_{r+1}. Requires 0 <= i <= n-1.
GradedModule make_indecomposable(const FamilyPtr& family, long i, long shift2);

GradedModule zero_module(const FamilyPtr& family);
GradedModule direct_sum(const GradedModule& a, const GradedModule& b);
GradedModule shift(const GradedModule& m, long shift2);
GradedModule tensor(const GradedModule& a, const GradedModule& b);
GradedModule dual(const GradedModule& m);

/// Degree-0 equivariant map between modules of the same family.
struct ModuleHom {
  GradedModule source, target;
  Matrix mat;
};

/// Checked constructor: verifies degree-0 and X-equivariance.
ModuleHom make_hom(GradedModule source, GradedModule target, Matrix mat);
std::vector<std::string> hom_violations(const ModuleHom& f);
ModuleHom compose(const ModuleHom& g, const ModuleHom& f);  // g after f
ModuleHom identity_hom(const GradedModule& m);
ModuleHom zero_hom(const GradedModule& source, const GradedModule& target);

struct DecompEntry {
  long i;       // string length i+1
  long shift2;  // doubled starting degree
  long mult;
  bool projective;  // i == n-1
};
bool operator==(const DecompEntry& a, const DecompEntry& b);

struct Decomposition {
  std::vector<DecompEntry> entries;  // sorted by (i, shift2), mult > 0
  long total_dim = 0;

  bool operator==(const Decomposition& o) const { return entries == o.entries; }
  std::string to_string() const;
};

/// Unique decomposition into V_i{j}: multiplicity of V_i{j} equals
/// dim_{deg j+i}((ker X cap im X^i)/(ker X cap im X^{i+1})), degreewise.
Decomposition decompose(const GradedModule& m);

/// Rebuilds a module from a decomposition (direct sum of strings).
GradedModule assemble(const FamilyPtr& family, const Decomposition& d);

/// Basis of the space of degree-0 equivariant maps M -> N.
std::vector<ModuleHom> hom_basis(const GradedModule& m, const GradedModule& n);

/// Graded dimensions of ker(X^a)/im(X^{n-a}); keys are doubled degrees,
/// zero entries omitted. Requires 1 <= a <= n-1.
std::map<long, long> slash_homology(const GradedModule& m, long a);

bool is_isomorphic(const GradedModule& a, const GradedModule& b);
LaurentHalf poincare_polynomial(const GradedModule& m);

/// The free rank-one module H with its natural grading.
GradedModule free_module(const FamilyPtr& family);
/// H shifted so that Lambda sits in degree 0; hs_lambda_index is the
/// basis slot of Lambda.
GradedModule hs_module(const FamilyPtr& family);
long hs_lambda_index(const FamilyPtr& family);
/// ker(eps) as a submodule of the unshifted H; optionally reports which
/// H-basis indices were kept.
GradedModule augmentation_ideal(const FamilyPtr& family, std::vector<long>* kept = nullptr);

/// Quotient of M by the X-stable graded subspace spanned by the columns
/// of S. proj/sect (optional) receive the projection M -> Q and a
/// degreewise section Q -> M with proj*sect = Id.
GradedModule quotient_module(const GradedModule& m, const Matrix& S, Matrix* proj,
                             Matrix* sect);

/// Submodule spanned by the columns of S (must be X-stable and graded);
/// incl (optional) receives the inclusion matrix.
GradedModule submodule(const GradedModule& m, const Matrix& S, Matrix* incl);

}  // namespace hopfolog
