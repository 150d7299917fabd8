#include "hopfolog/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace hopfolog {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Exact division of integer polynomials, lowest degree first.
// Requires the division to be exact with monic divisor.
std::vector<mpz_class> poly_div_exact(std::vector<mpz_class> num,
                                      const std::vector<mpz_class>& den) {
  std::vector<mpz_class> quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
  long dd = long(den.size()) - 1;
  for (long k = long(num.size()) - 1 - dd; k >= 0; --k) {
    mpz_class c = num[k + dd];  // den is monic
    quot[k] = c;
    if (c == 0) continue;
    for (long j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
  }
  for (const auto& c : num)
    if (c != 0) throw std::logic_error("poly_div_exact: inexact division");
  return quot;
}

// Trims trailing zeros of a rational polynomial.
void trim(std::vector<mpq_class>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// Reduces a rational polynomial modulo the monic modulus, in place.
void reduce_mod(std::vector<mpq_class>& v, const std::vector<mpq_class>& mod) {
  long dm = long(mod.size()) - 1;
  for (long k = long(v.size()) - 1; k >= dm; --k) {
    mpq_class c = v[k];
    if (c == 0) continue;
    v[k] = 0;
    for (long j = 0; j < dm; ++j) v[k - dm + j] -= c * mod[j];
  }
  if (long(v.size()) > dm) v.resize(dm);
  trim(v);
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(long n) {
  // Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d.
  static std::map<long, std::vector<mpz_class>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::function<std::vector<mpz_class>(long)> phi = [&](long m) -> std::vector<mpz_class> {
    auto c = cache.find(m);
    if (c != cache.end()) return c->second;
    std::vector<mpz_class> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (long d = 1; d < m; ++d)
      if (m % d == 0) num = poly_div_exact(std::move(num), phi(d));
    cache[m] = num;
    return num;
  };
  return phi(n);
}

FieldPtr Field::prime(long p) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime: " + std::to_string(p));
  if (p > kMaxPrime) throw ScaleError("prime exceeds desk-scale bound p <= 97");
  return FieldPtr(new Field(Kind::Prime, p, {}));
}

FieldPtr Field::cyclotomic(long n) {
  if (n < 2) throw std::invalid_argument("root order must be >= 2");
  if (n > kMaxRootOrder) throw ScaleError("root order exceeds desk-scale bound n <= 64");
  auto zp = cyclotomic_polynomial(n);
  std::vector<mpq_class> mod(zp.begin(), zp.end());
  return FieldPtr(new Field(Kind::Cyclotomic, n, std::move(mod)));
}

void Scalar::check_same_field(const Scalar& o) const {
  if (!field_ || !o.field_ || !field_->same(*o.field_))
    throw FieldMismatch("scalars over different fields");
}

Scalar Scalar::zero(const FieldPtr& f) {
  Scalar s;
  s.field_ = f;
  return s;
}

Scalar Scalar::one(const FieldPtr& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const FieldPtr& f, long v) {
  Scalar s;
  s.field_ = f;
  if (f->kind() == Field::Kind::Prime) {
    long p = f->param();
    s.res_ = ((v % p) + p) % p;
  } else if (v != 0) {
    s.poly_ = {mpq_class(v)};
  }
  return s;
}

Scalar Scalar::from_rational(const FieldPtr& f, const mpq_class& q) {
  if (f->kind() != Field::Kind::Cyclotomic)
    throw std::invalid_argument("rational scalars require a cyclotomic field");
  Scalar s;
  s.field_ = f;
  if (q != 0) s.poly_ = {q};
  return s;
}

Scalar Scalar::zeta(const FieldPtr& f) {
  if (f->kind() != Field::Kind::Cyclotomic)
    throw std::invalid_argument("zeta requires a cyclotomic field");
  return from_poly(f, {0, 1});
}

Scalar Scalar::from_poly(const FieldPtr& f, std::vector<mpq_class> coeffs) {
  if (f->kind() != Field::Kind::Cyclotomic)
    throw std::invalid_argument("polynomial scalars require a cyclotomic field");
  Scalar s;
  s.field_ = f;
  reduce_mod(coeffs, f->modulus());
  s.poly_ = std::move(coeffs);
  return s;
}

bool Scalar::is_zero() const {
  if (!field_) throw std::logic_error("uninitialized scalar");
  return field_->kind() == Field::Kind::Prime ? res_ == 0 : poly_.empty();
}

bool Scalar::is_one() const {
  if (field_->kind() == Field::Kind::Prime) return res_ == 1 % field_->param();
  return poly_.size() == 1 && poly_[0] == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  Scalar r;
  r.field_ = field_;
  if (field_->kind() == Field::Kind::Prime) {
    r.res_ = (res_ + o.res_) % field_->param();
  } else {
    r.poly_ = poly_;
    if (r.poly_.size() < o.poly_.size()) r.poly_.resize(o.poly_.size(), 0);
    for (size_t i = 0; i < o.poly_.size(); ++i) r.poly_[i] += o.poly_[i];
    trim(r.poly_);
  }
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  Scalar r;
  r.field_ = field_;
  if (field_->kind() == Field::Kind::Prime) {
    r.res_ = (field_->param() - res_) % field_->param();
  } else {
    r.poly_ = poly_;
    for (auto& c : r.poly_) c = -c;
  }
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  Scalar r;
  r.field_ = field_;
  if (field_->kind() == Field::Kind::Prime) {
    r.res_ = (res_ * o.res_) % field_->param();
    return r;
  }
  if (poly_.empty() || o.poly_.empty()) return r;
  std::vector<mpq_class> prod(poly_.size() + o.poly_.size() - 1, 0);
  for (size_t i = 0; i < poly_.size(); ++i) {
    if (poly_[i] == 0) continue;
    for (size_t j = 0; j < o.poly_.size(); ++j) {
      if (o.poly_[j] == 0) continue;
      prod[i + j] += poly_[i] * o.poly_[j];
    }
  }
  reduce_mod(prod, field_->modulus());
  r.poly_ = std::move(prod);
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar r;
  r.field_ = field_;
  if (field_->kind() == Field::Kind::Prime) {
    long p = field_->param();
    // extended Euclid on (res_, p)
    long a = res_, b = p, x0 = 1, x1 = 0;
    while (b != 0) {
      long q = a / b;
      long t = a - q * b;
      a = b;
      b = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    r.res_ = ((x0 % p) + p) % p;
    return r;
  }
  // Extended Euclid in Q[x] for gcd(poly, Phi_n) = 1.
  std::vector<mpq_class> r0 = field_->modulus(), r1 = poly_;
  std::vector<mpq_class> s0 = {}, s1 = {mpq_class(1)};  // coefficients of poly_
  auto deg = [](const std::vector<mpq_class>& v) { return long(v.size()) - 1; };
  while (deg(r1) > 0) {
    // divide r0 by r1
    std::vector<mpq_class> rem = r0, quot(std::max<long>(deg(r0) - deg(r1) + 1, 0), 0);
    mpq_class lead = r1.back();
    for (long k = deg(rem) - deg(r1); k >= 0; --k) {
      if (long(rem.size()) - 1 < k + deg(r1)) continue;
      mpq_class c = rem[k + deg(r1)] / lead;
      quot[k] = c;
      if (c == 0) continue;
      for (long j = 0; j <= deg(r1); ++j) rem[k + j] -= c * r1[j];
      trim(rem);
    }
    // s_next = s0 - quot * s1
    std::vector<mpq_class> snext = s0;
    if (!quot.empty() && !s1.empty()) {
      std::vector<mpq_class> qs(quot.size() + s1.size() - 1, 0);
      for (size_t i = 0; i < quot.size(); ++i)
        for (size_t j = 0; j < s1.size(); ++j) qs[i + j] += quot[i] * s1[j];
      if (snext.size() < qs.size()) snext.resize(qs.size(), 0);
      for (size_t i = 0; i < qs.size(); ++i) snext[i] -= qs[i];
      trim(snext);
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(snext);
  }
  if (r1.empty()) throw std::logic_error("modulus not irreducible?");
  mpq_class inv_lead = 1 / r1[0];
  for (auto& c : s1) c *= inv_lead;
  reduce_mod(s1, field_->modulus());
  r.poly_ = std::move(s1);
  return r;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar acc = one(field_), base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  check_same_field(o);
  if (field_->kind() == Field::Kind::Prime) return res_ == o.res_;
  return poly_ == o.poly_;
}

long Scalar::residue() const {
  if (field_->kind() != Field::Kind::Prime)
    throw std::logic_error("residue() on a cyclotomic scalar");
  return res_;
}

std::string Scalar::to_string() const {
  if (field_->kind() == Field::Kind::Prime) return std::to_string(res_);
  if (poly_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (long k = long(poly_.size()) - 1; k >= 0; --k) {
    const mpq_class& c = poly_[k];
    if (c == 0) continue;
    mpq_class a = c;
    if (!first) {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool unit_coeff = (a == 1 || a == -1) && k > 0;
    if (a == -1 && k > 0 && out.str().empty())
      out << "-";
    else if (!unit_coeff)
      out << a.get_str();
    if (k > 0) {
      if (!unit_coeff) out << "*";
      out << "z";
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

Scalar parse_scalar(const FieldPtr& f, const std::string& text) {
  // Grammar: term (('+'|'-') term)*;  term: [rat] ['*'] ['z' ['^' int]]
  size_t i = 0;
  std::vector<mpq_class> acc;
  auto add_term = [&](const mpq_class& c, long k) {
    if (long(acc.size()) <= k) acc.resize(k + 1, 0);
    acc[k] += c;
  };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  bool expect_term = true;
  long sign = 1;
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    char ch = text[i];
    if (ch == '+' || ch == '-') {
      if (expect_term && ch == '-') sign = -sign;
      else if (expect_term && ch == '+') {
      } else {
        sign = (ch == '-') ? -1 : 1;
        expect_term = true;
      }
      ++i;
      continue;
    }
    // parse one term
    mpq_class coeff = 1;
    bool saw_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t j = i;
      while (j < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/'))
        ++j;
      coeff = mpq_class(text.substr(i, j - i));
      coeff.canonicalize();
      i = j;
      saw_coeff = true;
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    long expo = 0;
    if (i < text.size() && text[i] == 'z') {
      ++i;
      expo = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i) throw std::invalid_argument("bad exponent in scalar literal: " + text);
        expo = std::stol(text.substr(i, j - i));
        i = j;
      }
    } else if (!saw_coeff) {
      throw std::invalid_argument("bad scalar literal: " + text);
    }
    add_term(sign * coeff, expo);
    sign = 1;
    expect_term = false;
  }
  if (expect_term && acc.empty() && !text.empty()) {
    // text was only signs/whitespace
    throw std::invalid_argument("bad scalar literal: " + text);
  }
  if (f->kind() == Field::Kind::Prime) {
    for (size_t k = 1; k < acc.size(); ++k)
      if (acc[k] != 0)
        throw std::invalid_argument("'z' not allowed in prime-field literal: " + text);
    mpq_class c = acc.empty() ? mpq_class(0) : acc[0];
    if (c.get_den() != 1) {
      // a/b means a * b^{-1} mod p
      Scalar num = Scalar::from_int(f, mpz_class(c.get_num()).get_si());
      Scalar den = Scalar::from_int(f, mpz_class(c.get_den()).get_si());
      return num * den.inverse();
    }
    return Scalar::from_int(f, mpz_class(c.get_num()).get_si());
  }
  return Scalar::from_poly(f, std::move(acc));
}

}  // namespace hopfolog
