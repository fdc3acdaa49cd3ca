#ifndef QTCHAR_LAURENT_HPP
#define QTCHAR_LAURENT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace qtchar {

using BigInt = boost::multiprecision::cpp_int;

/// Sparse univariate Laurent polynomial with exact integer coefficients.
/// Shared by the t-coefficient arithmetic and the z-matrix arithmetic;
/// no zero coefficient is ever stored, so map equality is canonical.
class IntLaurent {
public:
  using Exp = std::int64_t;
  using Map = std::map<Exp, BigInt>;

  IntLaurent() = default;
  explicit IntLaurent(BigInt constant);
  IntLaurent(Exp exponent, BigInt coefficient);

  static IntLaurent zero() { return IntLaurent(); }
  static IntLaurent one() { return IntLaurent(BigInt(1)); }
  /// The monomial t^e (or z^e; the variable name is up to the caller).
  static IntLaurent power(Exp e) { return IntLaurent(e, BigInt(1)); }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  /// True when the support is {0}, i.e. the value is a plain integer.
  bool is_constant() const;

  BigInt coeff(Exp e) const;
  const Map& terms() const { return c_; }
  Exp min_exp() const; // requires nonzero
  Exp max_exp() const; // requires nonzero

  IntLaurent& operator+=(const IntLaurent& o);
  IntLaurent& operator-=(const IntLaurent& o);
  IntLaurent operator+(const IntLaurent& o) const;
  IntLaurent operator-(const IntLaurent& o) const;
  IntLaurent operator-() const;
  IntLaurent operator*(const IntLaurent& o) const;
  IntLaurent& operator*=(const IntLaurent& o);
  IntLaurent operator*(const BigInt& k) const;

  bool operator==(const IntLaurent& o) const { return c_ == o.c_; }
  bool operator!=(const IntLaurent& o) const { return c_ != o.c_; }
  bool operator<(const IntLaurent& o) const { return c_ < o.c_; }

  /// Multiply by t^k (exponent shift).
  IntLaurent shifted(Exp k) const;
  /// t -> t^{-1}; involutive, multiplicative.
  IntLaurent bar() const;
  /// Evaluate at the variable = 1 (sum of coefficients).
  BigInt eval_one() const;

  void add_term(Exp e, const BigInt& a);

  /// Rendered as e.g. "t^-2 + 3 - t^3", ascending exponents.
  std::string to_string(const std::string& var = "t") const;

private:
  Map c_;
};

inline IntLaurent operator*(const BigInt& k, const IntLaurent& p) { return p * k; }

/// [l]_z = (z^l - z^{-l})/(z - z^{-1}); [0] = 0 and [-l] = -[l].
IntLaurent quantum_integer(std::int64_t l);

/// Unique splitting c = mu + p with mu(t)=mu(t^{-1}) and p supported on
/// strictly negative exponents: mu_k = mu_{-k} = c_k for k >= 0 and
/// p_{-k} = c_{-k} - c_k for k > 0.
std::pair<IntLaurent, IntLaurent> split_sym_neg(const IntLaurent& c);

} // namespace qtchar

#endif
