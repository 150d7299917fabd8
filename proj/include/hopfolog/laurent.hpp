#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace hopfolog {

/// Laurent polynomial in q with half-integer exponents and integer
/// coefficients. Exponents are stored doubled, so q^{k/2} has key k.
class LaurentHalf {
 public:
  LaurentHalf() = default;
  static LaurentHalf one() { return monomial(0, 1); }
  /// coeff * q^{exp2/2}
  static LaurentHalf monomial(long exp2, std::int64_t coeff);

  bool is_zero() const { return terms_.empty(); }
  const std::map<long, std::int64_t>& terms() const { return terms_; }

  LaurentHalf operator+(const LaurentHalf& o) const;
  LaurentHalf operator-(const LaurentHalf& o) const;
  LaurentHalf operator*(const LaurentHalf& o) const;
  bool operator==(const LaurentHalf& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentHalf& o) const { return !(*this == o); }

  /// Reduces all exponents modulo n (doubled lattice modulo 2n), i.e. q^n = 1.
  LaurentHalf reduced_mod(long n) const;

  /// Canonical rendering, e.g. "q^-1/2 + 1 + q".
  std::string to_string() const;

 private:
  std::map<long, std::int64_t> terms_;  // doubled exponent -> coefficient
};

}  // namespace hopfolog
