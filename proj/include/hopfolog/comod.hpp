#pragma once

#include "hopfolog/stable.hpp"

namespace hopfolog {

/// Graded associative unital algebra B with a degree -1 derivation; the
/// data of a comodule-algebra structure on the smash product A = H # B.
/// Nonzero derivations need a p-nilpotent partial (and a primitive X on
/// the Hopf side, enforced at the SmashModule level).
struct DerivationAlgebra {
  FieldPtr field;
  long grading_modulus2 = 0;  // doubled modulus; 0 for a Z-grading
  std::vector<long> deg2;     // doubled degrees of the basis
  long unit = 0;              // basis index of 1
  std::vector<Matrix> lmul;   // lmul[i] = left multiplication by e_i
  Matrix partial;             // the derivation, doubled degree -2

  long dim() const { return long(deg2.size()); }
  long reduce2(long d2) const;
};

/// Diagnostic check of all DerivationAlgebra axioms (associativity, unit,
/// grading, Leibniz with the offending pair, partial(1) = 0, degree -1,
/// p-nilpotency); empty list means ok.
std::vector<std::string> validate_derivation_algebra(const DerivationAlgebra& b);

/// Validated constructor: throws std::invalid_argument on any violation.
DerivationAlgebra make_derivation_algebra(FieldPtr field, long grading_modulus2,
                                          std::vector<long> deg2, long unit,
                                          std::vector<Matrix> lmul, Matrix partial);

/// B = k with the zero derivation.
DerivationAlgebra scalar_algebra(const FieldPtr& field, long grading_modulus2);

/// B = k[t]/(t^r) with deg t = 1; with_derivation sets partial(t) = 1,
/// which is consistent exactly when char k divides r.
DerivationAlgebra truncated_derivation_algebra(const FieldPtr& field, long grading_modulus2,
                                               long r, bool with_derivation);

/// Module over A = H # B: a graded H-module with a compatible B-action.
/// A basis element of B-degree g acts with module degree -g, and
/// X(b m) = partial(b) m + b X(m).
struct SmashModule {
  DerivationAlgebra algebra;
  GradedModule module;
  std::vector<Matrix> action;  // action[i] = action of the i-th B-basis element

  long dim() const { return module.dim(); }
};

std::vector<std::string> validate_smash_module(const SmashModule& m);
SmashModule make_smash_module(DerivationAlgebra algebra, GradedModule module,
                              std::vector<Matrix> action);

/// Forgets the B-action.
GradedModule restrict_to_H(const SmashModule& m);

/// Degree-0 map commuting with both the X- and the B-action.
struct SmashHom {
  SmashModule source, target;
  Matrix mat;
};

std::vector<std::string> smash_hom_violations(const SmashHom& f);
SmashHom make_smash_hom(SmashModule source, SmashModule target, Matrix mat);
SmashHom smash_identity(const SmashModule& m);
SmashHom smash_zero(const SmashModule& source, const SmashModule& target);
SmashHom smash_compose(const SmashHom& g, const SmashHom& f);  // g after f
ModuleHom restrict_to_H(const SmashHom& f);

SmashModule smash_direct_sum(const SmashModule& a, const SmashModule& b);

/// The rank-one free module A = H # B over itself, basis X^i (x) e_j.
SmashModule smash_free(const DerivationAlgebra& b, const FamilyPtr& family);

/// V (x) M for an H-module V; B acts through the M factor (Delta_A is
/// trivial on B).
SmashModule smash_tensor_left(const GradedModule& v, const SmashModule& m);

/// Hs (x) M with the Lambda (x) Id embedding; homotopy-trivial.
std::pair<SmashModule, SmashHom> smash_h_tensor(const SmashModule& m);

/// Unshifted H (x) M (the counit sits in degree 0 on the first factor).
SmashModule smash_free_tensor(const SmashModule& m);

/// Basis of the space of degree-0 A-module maps M -> N.
std::vector<SmashHom> smash_hom_basis(const SmashModule& m, const SmashModule& n);

/// Searches for an A-module map h: Hs (x) M1 -> M2 with
/// h . (Lambda (x) Id) = f; absence certifies that f is nonzero in the
/// homotopy category of A-modules.
std::optional<SmashHom> a_null_homotopy(const SmashHom& f);

/// True iff the identity of M factors through Hs (x) M, i.e. M is a
/// direct summand of a module of the form H (x) N.
bool is_homotopy_trivial(const SmashModule& m);

/// X --u--> Y --v--> Z --w--> TX in the smash category; restriction to H
/// agrees with the stable-module cone.
struct SmashTriangle {
  SmashModule X, Y, Z, TX;
  SmashHom u, v, w;
};

SmashTriangle a_cone(const SmashHom& u);

/// verdict true iff every slash homology of the H-restriction of the
/// cone of f vanishes; slash[a-1] holds the graded ranks for exponent a.
struct QuasiIsoReport {
  bool verdict = false;
  std::vector<std::map<long, long>> slash;
};

QuasiIsoReport is_quasi_iso(const SmashHom& f);

/// Pullback C of s: X -> Y (quasi-iso) and f: Z -> Y over H (x) Y, with
/// s . h_X = f . h_Z up to null-homotopy and h_Z a quasi-isomorphism.
struct OrePullback {
  SmashModule C;
  SmashHom h_X, h_Z;
};

OrePullback ore_pullback(const SmashHom& s, const SmashHom& f);

/// Given f: X -> Y and a quasi-iso s: Y -> Z with s . f null-homotopic,
/// a quasi-isomorphism t: W -> X with f . t null-homotopic. When s f is
/// nonzero on the nose, Y is first augmented by Hs (x) X along the
/// null-homotopy witness to make the composite vanish strictly.
struct OreKill {
  SmashModule W;
  SmashHom t;
};

OreKill ore_kill(const SmashHom& f, const SmashHom& s);

/// Characteristic-2 checks for modules over A = B (x) k[Z_2]: ranks of
/// the differential d, derived triviality (ker d = im d) and homotopy
/// triviality, with the implication homotopy => derived cross-checked.
struct DgReport {
  long dim = 0, rank_d = 0, dim_ker = 0, dim_im = 0;
  bool homotopy_trivial = false, derived_trivial = false;
};

DgReport dg_p2_checks(const SmashModule& m);

}  // namespace hopfolog
