#ifndef QTCHAR_YALGEBRA_HPP
#define QTCHAR_YALGEBRA_HPP

#include "qtchar/cartan.hpp"
#include "qtchar/laurent.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qtchar {

struct GenIndex {
  int i;          // node, 0-based internally
  std::int64_t l; // spectral index, in Z (s = 0) or 0..s-1
  auto operator<=>(const GenIndex&) const = default;
};

/// Commutative shadow of a Y~/A~^{-1}-monomial: (i,l) -> y-exponent and
/// (i,l) -> v-exponent, both sparse.  deg = sum of v-exponents.
class ExponentVector {
public:
  using Entries = std::vector<std::pair<GenIndex, int>>; // sorted by index

  ExponentVector() = default;

  static ExponentVector y_gen(int i, std::int64_t l, int e = 1);
  static ExponentVector a_gen(int i, std::int64_t l, int e = 1);

  int y(int i, std::int64_t l) const { return get(y_, {i, l}); }
  int v(int i, std::int64_t l) const { return get(v_, {i, l}); }
  const Entries& y_entries() const { return y_; }
  const Entries& v_entries() const { return v_; }

  void add_y(int i, std::int64_t l, int e) { bump(y_, {i, l}, e); }
  void add_v(int i, std::int64_t l, int e) { bump(v_, {i, l}, e); }

  ExponentVector operator+(const ExponentVector& o) const;
  ExponentVector operator-() const;

  bool empty() const { return y_.empty() && v_.empty(); }
  /// Grading deg = sum of v-exponents (each A~^{-1} counts 1).
  std::int64_t degree() const;
  bool pure_y() const { return v_.empty(); }

  std::int64_t min_l() const; // over the whole support; requires nonempty
  std::int64_t max_l() const;

  bool operator==(const ExponentVector& o) const { return y_ == o.y_ && v_ == o.v_; }
  bool operator!=(const ExponentVector& o) const { return !(*this == o); }
  /// Lexicographic on the sorted (kind, i, l, exponent) serialization;
  /// degree-blind (see MonomialOrder for the sweep order).
  bool lex_less(const ExponentVector& o) const;

  std::string to_string(bool one_based = true) const;

private:
  static int get(const Entries& m, GenIndex k);
  static void bump(Entries& m, GenIndex k, int e);
  Entries y_, v_;
};

/// Total order refining the partial order: ascending deg, then lex.
struct MonomialOrder {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const {
    auto da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.lex_less(b);
  }
};

/// Commutative Laurent monomial in the Y variables (image of pi-hat).
using YMonomial = std::vector<std::pair<GenIndex, int>>; // sorted, exps != 0
using YLaurent = std::map<YMonomial, BigInt>;

std::string y_monomial_to_string(const YMonomial& m);
std::string y_laurent_to_string(const YLaurent& p);

enum class BicharMode { Standard, Primed };

/// Immutable evaluation context: Cartan data, the index regime
/// (s = 0 generic, s >= 1 periodic), the bicharacter mode, and the t = 1
/// collapse switch used for classical shadows.
class AlgebraContext {
public:
  static AlgebraContext make(CartanData cd, int s = 0,
                             BicharMode mode = BicharMode::Standard,
                             bool t_one = false);

  const CartanData& cartan() const { return cd_; }
  int n() const { return cd_.n(); }
  int s() const { return s_; }
  bool periodic() const { return s_ >= 1; }
  BicharMode mode() const { return mode_; }
  bool t_one() const { return t_one_; }
  int r(int i) const { return cd_.r(i); }

  std::int64_t reduce(std::int64_t l) const {
    return s_ == 0 ? l : ((l % s_) + s_) % s_;
  }
  ExponentVector reduce(const ExponentVector& e) const;

  /// Stencil of the u-character: row i of C(z) (or C'(z) in primed mode)
  /// as (z-exponent, coefficient) pairs per column j.
  const std::vector<std::pair<std::int64_t, std::int64_t>>& stencil(int i, int j) const {
    return stencil_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  /// Same-radius bound: generators at index distance > radius never interact.
  std::int64_t interaction_radius() const { return radius_; }

  /// Twin context with s = 0 (used by tau/D computations on Z-indexed data).
  const AlgebraContext& generic() const { return s_ == 0 ? *this : *generic_; }

  IntLaurent norm(IntLaurent c) const {
    return t_one_ ? IntLaurent(c.eval_one()) : std::move(c);
  }
  IntLaurent tpow(std::int64_t k) const {
    return t_one_ ? IntLaurent::one() : IntLaurent::power(k);
  }

  void require_root_of_unity() const;      // s >= 1
  void require_generic() const;            // s == 0
  void require_large_s() const;            // s > 2 r^vee

private:
  CartanData cd_;
  int s_ = 0;
  BicharMode mode_ = BicharMode::Standard;
  bool t_one_ = false;
  std::int64_t radius_ = 1;
  std::vector<std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>>> stencil_;
  std::shared_ptr<const AlgebraContext> generic_;
};

/// u_{i,l}(e) = y_{i,l}(e) - sum_j (C_{i,j}(z))_op V_{j,l}(e).
int u_character(const AlgebraContext& ctx, const ExponentVector& e, int i, std::int64_t l);
std::map<GenIndex, int> u_all(const AlgebraContext& ctx, const ExponentVector& e);

std::int64_t d1(const AlgebraContext& ctx, const ExponentVector& e1,
                const ExponentVector& e2);
std::int64_t d2(const AlgebraContext& ctx, const ExponentVector& e1,
                const ExponentVector& e2);

bool i_dominant(const AlgebraContext& ctx, const ExponentVector& e, int i);
bool dominant(const AlgebraContext& ctx, const ExponentVector& e);
bool i_antidominant(const AlgebraContext& ctx, const ExponentVector& e, int i);
bool antidominant(const AlgebraContext& ctx, const ExponentVector& e);

/// alpha(e) = d1(e,e): t^{alpha} b(e) is the bar-fixed normalization.
std::int64_t alpha_invariant(const AlgebraContext& ctx, const ExponentVector& e);

/// Closed formula for the phase gamma with t^gamma (->-ordered product of e)
/// landing in the canonical basis; valid when B(z) is symmetric.
std::int64_t gamma_arrow(const AlgebraContext& ctx, const ExponentVector& e);

/// Finite linear combination of canonical basis elements b(e), coefficients
/// in Z[t^{+-}].  b(e) is the commutative dot-product of the bar-fixed
/// generators Y~_{i,l} and t A~_{i,l}^{-1}; the twisted product is
/// b(e1) b(e2) = t^{d1(e1,e2)+d2(e1,e2)} b(e1+e2).
class AlgebraElement {
public:
  using Terms = std::map<ExponentVector, IntLaurent, MonomialOrder>;

  AlgebraElement() = default;
  static AlgebraElement one() { return monomial(ExponentVector{}, IntLaurent::one()); }
  static AlgebraElement monomial(ExponentVector e, IntLaurent c);

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  IntLaurent coeff(const ExponentVector& e) const;
  std::int64_t max_term_degree() const; // 0 for the zero element

  void add_term(const ExponentVector& e, const IntLaurent& c);
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement operator+(const AlgebraElement& o) const;
  AlgebraElement operator-(const AlgebraElement& o) const;
  AlgebraElement operator*(const IntLaurent& c) const;
  AlgebraElement operator-() const;
  bool operator==(const AlgebraElement& o) const { return t_ == o.t_; }
  bool operator!=(const AlgebraElement& o) const { return t_ != o.t_; }

  /// Drop all terms of degree > max_degree (no-op when max_degree < 0).
  AlgebraElement truncated(std::int64_t max_degree) const;

  std::string to_string() const;

private:
  Terms t_;
};

/// Twisted product; max_degree >= 0 truncates the result.
AlgebraElement multiply(const AlgebraContext& ctx, const AlgebraElement& a,
                        const AlgebraElement& b, std::int64_t max_degree = -1);
/// Z[t^{+-}]-antilinear antimultiplicative involution.
AlgebraElement bar(const AlgebraContext& ctx, const AlgebraElement& a);
/// Inverse of a one-term element.
AlgebraElement invert_monomial(const AlgebraContext& ctx, const AlgebraElement& a);

/// Generators as elements: Y~_{i,l} = b(e_Y), A~_{i,l}^{-1} = t^{-1} b(e_A).
AlgebraElement gen_y(const AlgebraContext& ctx, int i, std::int64_t l, int power = 1);
AlgebraElement gen_a_inv(const AlgebraContext& ctx, int i, std::int64_t l, int power = 1);

/// Monomial grammar: `t^<int>`, `Y[<i>,<l>]`, `A[<i>,<l>]^-1`, separated by
/// `*` or whitespace, optional `^<int>` powers; `Y[<l>]`/`A[<l>]^-1` when
/// the rank is 1.  Indices are 1-based on the surface, reduced mod s.
AlgebraElement word_to_element(const AlgebraContext& ctx, const std::string& word);

/// Index translation y_{i,l}(out) = y_{i,l+k}(e).  The context-checked
/// overload rejects periodic contexts (shifts live on Z-indexed vectors);
/// the raw overload is for Z-side internals.
ExponentVector shift(const ExponentVector& e, std::int64_t k);
ExponentVector shift(const AlgebraContext& ctx, const ExponentVector& e,
                     std::int64_t k);

/// Folding p_s onto Z/sZ (sums exponents over each congruence class).
ExponentVector fold_ps(const AlgebraContext& ctx, const ExponentVector& e);

/// Periodized bicharacters D and their strictly-negative-shift parts;
/// e1, e2 are Z-indexed vectors, ctx must have s >= 1.
std::int64_t big_d1(const AlgebraContext& ctx, const ExponentVector& e1,
                    const ExponentVector& e2);
std::int64_t big_d2(const AlgebraContext& ctx, const ExponentVector& e1,
                    const ExponentVector& e2);
std::int64_t d1_minus(const AlgebraContext& ctx, const ExponentVector& e);
std::int64_t d2_minus(const AlgebraContext& ctx, const ExponentVector& e);

/// tau_{s,t}: term-wise coefficient * t^{D1^-(e)+D2^-(e)} attached to
/// b(p_s(e)).  Input is over Z; ctx must have s > 2 r^vee.
AlgebraElement tau_st(const AlgebraContext& ctx, const AlgebraElement& a);

/// Same map evaluated by its defining slice-ordered products (independent
/// route used for cross-checks and the tau route of chi_eps_t).
AlgebraElement tau_st_ordered(const AlgebraContext& ctx, const AlgebraElement& a);

/// pi-hat: t -> 1 and b(e) -> prod Y_{i,l}^{u_{i,l}(e)}.
YLaurent pi_hat(const AlgebraContext& ctx, const AlgebraElement& a);
YMonomial pi_hat_monomial(const AlgebraContext& ctx, const ExponentVector& e);

} // namespace qtchar

#endif
