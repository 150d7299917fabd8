#include "hopfolog/laurent.hpp"

#include <sstream>

namespace hopfolog {

LaurentHalf LaurentHalf::monomial(long exp2, std::int64_t coeff) {
  LaurentHalf p;
  if (coeff != 0) p.terms_[exp2] = coeff;
  return p;
}

LaurentHalf LaurentHalf::operator+(const LaurentHalf& o) const {
  LaurentHalf r = *this;
  for (const auto& [e, c] : o.terms_) {
    auto it = r.terms_.find(e);
    if (it == r.terms_.end()) {
      r.terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) r.terms_.erase(it);
    }
  }
  return r;
}

LaurentHalf LaurentHalf::operator-(const LaurentHalf& o) const {
  LaurentHalf neg;
  for (const auto& [e, c] : o.terms_) neg.terms_[e] = -c;
  return *this + neg;
}

LaurentHalf LaurentHalf::operator*(const LaurentHalf& o) const {
  LaurentHalf r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      auto& slot = r.terms_[e1 + e2];
      slot += c1 * c2;
      if (slot == 0) r.terms_.erase(e1 + e2);
    }
  return r;
}

LaurentHalf LaurentHalf::reduced_mod(long n) const {
  LaurentHalf r;
  long m2 = 2 * n;
  for (const auto& [e, c] : terms_) {
    long re = ((e % m2) + m2) % m2;
    auto& slot = r.terms_[re];
    slot += c;
    if (slot == 0) r.terms_.erase(re);
  }
  return r;
}

std::string LaurentHalf::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::int64_t a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    if (e == 0) {
      out << a;
    } else {
      if (a != 1) out << a << "*";
      out << "q";
      if (e != 2) {
        out << "^";
        if (e % 2 == 0)
          out << (e / 2);
        else
          out << e << "/2";
      }
    }
  }
  return out.str();
}

}  // namespace hopfolog
