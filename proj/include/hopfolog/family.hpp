#pragma once

#include "hopfolog/matrix.hpp"

namespace hopfolog {

class HopfFamily;
using FamilyPtr = std::shared_ptr<const HopfFamily>;

/// Element of H in the monomial basis, dense coordinates.
using HElem = std::vector<Scalar>;

/// Sparse element of H: (monomial index, coefficient) pairs.
using HTerm = std::pair<long, Scalar>;
using HSparse = std::vector<HTerm>;

/// Structure maps of the Hopf algebra in a fixed monomial basis.
struct HopfAlgebraData {
  FieldPtr field;
  long dim = 0;
  std::vector<std::string> names;
  long unit = 0;  // index of the monomial 1

  /// mult[i][j] = e_i * e_j; in all supported families a product of
  /// monomials is a scalar multiple of a single monomial (or zero).
  std::vector<std::vector<HSparse>> mult;

  struct TensorTerm {
    long left, right;
    Scalar coeff;
  };
  /// delta[i] = comultiplication of e_i as a sum of coeff * e_left (x) e_right.
  std::vector<std::vector<TensorTerm>> delta;

  std::vector<Scalar> counit;
  Matrix antipode;      // column i = S(e_i)
  Matrix antipode_inv;  // column i = S^{-1}(e_i)
  HElem integral;       // fixed left integral Lambda
  std::vector<long> generators;  // monomial indices generating H as an algebra

  HElem zero_elem() const { return HElem(dim, Scalar::zero(field)); }
  HElem basis_elem(long i) const;
  HElem mul_elems(const HElem& a, const HElem& b) const;
  Matrix left_mult_matrix(long monomial) const;
};

/// The free rank-one module H in a graded string basis: degrees, the X
/// action, the position of Lambda, the counit, and the change of basis
/// to/from the monomial presentation.
struct FreeModuleData {
  std::vector<long> deg2;  // doubled degrees (reduced when cyclic)
  Matrix X;
  long lambda_index = 0;
  std::vector<Scalar> counit_row;   // counit on the graded basis
  Matrix graded_from_monomial;
  Matrix monomial_from_graded;
};

/// One of the three Hopf-algebra families the library supports.
///
///  - TruncatedPolynomial: k[X]/(X^{p^m}) over F_p, primitive X, Z- or
///    Z_{p^m}-graded.
///  - Taft: H_n over Q(zeta_{2n}), generators K, X with KX = zeta XK,
///    K^n = 1, X^n = 0; modules are Z_n-graded via the K-eigenvalue.
///  - GroupRingZ2: k[Z_2] in characteristic 2 with structure operator
///    d = g + 1; modules carry the trivial grading.
class HopfFamily : public std::enable_shared_from_this<HopfFamily> {
 public:
  enum class Kind { Truncated, Taft, GroupRingZ2 };

  static FamilyPtr truncated(long p, long m, bool cyclic_grading);
  static FamilyPtr taft(long n);
  static FamilyPtr group_ring_z2();

  Kind kind() const { return kind_; }
  long characteristic_p() const { return p_; }
  long exponent_m() const { return m_; }
  /// Nilpotency order of X: p^m, n, or 2.
  long nilpotency() const { return n_; }
  bool cyclic() const { return grading_modulus2_ != 0; }
  /// Doubled grading modulus: 0 for Z-grading, 2n for Z_n, 2 for trivial.
  long grading_modulus2() const { return grading_modulus2_; }
  const FieldPtr& field() const { return field_; }

  bool same(const HopfFamily& o) const;
  std::string name() const;

  /// Reduces a doubled degree into canonical range for this grading.
  long reduce_deg2(long d2) const;

  /// zeta^{d2/2} for the Taft K-twist (zeta the primitive n-th root);
  /// 1 for the cocommutative families.
  Scalar zeta_pow_half(long d2) const;

  const HopfAlgebraData& algebra() const { return algebra_; }
  const FreeModuleData& free_data() const { return free_; }
  /// Doubled degree of Lambda in the free module.
  long lambda_deg2() const { return free_.deg2[free_.lambda_index]; }

 private:
  HopfFamily() = default;
  void verify_integral() const;

  Kind kind_;
  long p_ = 0, m_ = 0, n_ = 0;
  long grading_modulus2_ = 0;
  FieldPtr field_;
  HopfAlgebraData algebra_;
  FreeModuleData free_;
};

}  // namespace hopfolog
