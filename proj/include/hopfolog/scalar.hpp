#pragma once

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfolog {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Desk-scale bounds. Exceeding them raises ScaleError, never UB.
inline constexpr long kMaxPrime = 97;
inline constexpr long kMaxRootOrder = 64;
inline constexpr long kMaxModuleDim = 4096;

struct ScaleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FieldMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A scalar field: either F_p (p prime) or the cyclotomic number field
/// Q(zeta_n) = Q[x]/Phi_n(x) with exact rational coefficients.
class Field {
 public:
  enum class Kind { Prime, Cyclotomic };

  static FieldPtr prime(long p);
  static FieldPtr cyclotomic(long n);

  Kind kind() const { return kind_; }
  long characteristic() const { return kind_ == Kind::Prime ? param_ : 0; }
  /// p for prime fields, n (the root order) for cyclotomic fields.
  long param() const { return param_; }
  /// Extension degree over the prime field / over Q.
  long degree() const { return kind_ == Kind::Prime ? 1 : long(modulus_.size()) - 1; }
  /// Monic Phi_n, lowest degree first. Empty for prime fields.
  const std::vector<mpq_class>& modulus() const { return modulus_; }

  bool same(const Field& o) const { return kind_ == o.kind_ && param_ == o.param_; }

 private:
  Field(Kind k, long param, std::vector<mpq_class> mod)
      : kind_(k), param_(param), modulus_(std::move(mod)) {}
  Kind kind_;
  long param_;
  std::vector<mpq_class> modulus_;
};

/// n-th cyclotomic polynomial over Z, lowest degree first.
std::vector<mpz_class> cyclotomic_polynomial(long n);

/// An element of a Field. Immutable value type; all arithmetic exact.
class Scalar {
 public:
  Scalar() = default;  // invalid until assigned; field() is null

  static Scalar zero(const FieldPtr& f);
  static Scalar one(const FieldPtr& f);
  static Scalar from_int(const FieldPtr& f, long v);
  static Scalar from_rational(const FieldPtr& f, const mpq_class& q);
  /// The generator zeta (the class of x) of a cyclotomic field.
  static Scalar zeta(const FieldPtr& f);
  /// Polynomial in zeta, lowest degree first; reduced mod Phi_n.
  static Scalar from_poly(const FieldPtr& f, std::vector<mpq_class> coeffs);

  const FieldPtr& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;  // throws on zero
  Scalar pow(long e) const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Residue for prime fields.
  long residue() const;
  /// Coefficient vector (size <= field degree, trailing zeros trimmed).
  const std::vector<mpq_class>& coeffs() const { return poly_; }

  std::string to_string() const;  // "z" denotes the cyclotomic generator

 private:
  FieldPtr field_;
  long res_ = 0;                 // prime-field value, 0 <= res_ < p
  std::vector<mpq_class> poly_;  // cyclotomic coefficients, normalized
  void check_same_field(const Scalar& o) const;
};

/// Parses a scalar literal: an integer for prime fields; for cyclotomic
/// fields a sum of terms like "2/3*z^2 - z + 1".
Scalar parse_scalar(const FieldPtr& f, const std::string& text);

}  // namespace hopfolog
