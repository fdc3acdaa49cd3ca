#include "qtchar/laurent.hpp"

#include "qtchar/errors.hpp"

#include <sstream>

namespace qtchar {

IntLaurent::IntLaurent(BigInt constant) {
  if (constant != 0) c_.emplace(0, std::move(constant));
}

IntLaurent::IntLaurent(Exp exponent, BigInt coefficient) {
  if (coefficient != 0) c_.emplace(exponent, std::move(coefficient));
}

bool IntLaurent::is_one() const {
  return c_.size() == 1 && c_.begin()->first == 0 && c_.begin()->second == 1;
}

bool IntLaurent::is_constant() const {
  return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0);
}

BigInt IntLaurent::coeff(Exp e) const {
  auto it = c_.find(e);
  return it == c_.end() ? BigInt(0) : it->second;
}

IntLaurent::Exp IntLaurent::min_exp() const {
  if (c_.empty()) fail("EmptyLaurent", "min_exp of zero polynomial");
  return c_.begin()->first;
}

IntLaurent::Exp IntLaurent::max_exp() const {
  if (c_.empty()) fail("EmptyLaurent", "max_exp of zero polynomial");
  return c_.rbegin()->first;
}

void IntLaurent::add_term(Exp e, const BigInt& a) {
  if (a == 0) return;
  auto [it, inserted] = c_.emplace(e, a);
  if (!inserted) {
    it->second += a;
    if (it->second == 0) c_.erase(it);
  }
}

IntLaurent& IntLaurent::operator+=(const IntLaurent& o) {
  for (const auto& [e, a] : o.c_) add_term(e, a);
  return *this;
}

IntLaurent& IntLaurent::operator-=(const IntLaurent& o) {
  for (const auto& [e, a] : o.c_) add_term(e, -a);
  return *this;
}

IntLaurent IntLaurent::operator+(const IntLaurent& o) const {
  IntLaurent r = *this;
  r += o;
  return r;
}

IntLaurent IntLaurent::operator-(const IntLaurent& o) const {
  IntLaurent r = *this;
  r -= o;
  return r;
}

IntLaurent IntLaurent::operator-() const {
  IntLaurent r;
  for (const auto& [e, a] : c_) r.c_.emplace(e, -a);
  return r;
}

IntLaurent IntLaurent::operator*(const IntLaurent& o) const {
  IntLaurent r;
  for (const auto& [e1, a1] : c_)
    for (const auto& [e2, a2] : o.c_) r.add_term(e1 + e2, a1 * a2);
  return r;
}

IntLaurent& IntLaurent::operator*=(const IntLaurent& o) {
  *this = *this * o;
  return *this;
}

IntLaurent IntLaurent::operator*(const BigInt& k) const {
  IntLaurent r;
  if (k == 0) return r;
  for (const auto& [e, a] : c_) r.c_.emplace(e, a * k);
  return r;
}

IntLaurent IntLaurent::shifted(Exp k) const {
  IntLaurent r;
  for (const auto& [e, a] : c_) r.c_.emplace(e + k, a);
  return r;
}

IntLaurent IntLaurent::bar() const {
  IntLaurent r;
  for (const auto& [e, a] : c_) r.c_.emplace(-e, a);
  return r;
}

BigInt IntLaurent::eval_one() const {
  BigInt s = 0;
  for (const auto& [e, a] : c_) s += a;
  return s;
}

std::string IntLaurent::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, a] : c_) {
    BigInt mag = a < 0 ? BigInt(-a) : a;
    if (first) {
      if (a < 0) out << "-";
      first = false;
    } else {
      out << (a < 0 ? " - " : " + ");
    }
    bool unit = (mag == 1);
    if (e == 0) {
      out << mag.str();
    } else {
      if (!unit) out << mag.str() << "*";
      out << var;
      if (e != 1) out << "^" << e;
    }
  }
  return out.str();
}

IntLaurent quantum_integer(std::int64_t l) {
  if (l == 0) return IntLaurent::zero();
  bool neg = l < 0;
  std::int64_t n = neg ? -l : l;
  IntLaurent r;
  for (std::int64_t e = -n + 1; e <= n - 1; e += 2) r.add_term(e, neg ? -1 : 1);
  return r;
}

std::pair<IntLaurent, IntLaurent> split_sym_neg(const IntLaurent& c) {
  IntLaurent mu;
  for (const auto& [e, a] : c.terms()) {
    if (e >= 0) {
      mu.add_term(e, a);
      if (e > 0) mu.add_term(-e, a);
    }
  }
  return {mu, c - mu};
}

} // namespace qtchar
