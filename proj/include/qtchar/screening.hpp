#ifndef QTCHAR_SCREENING_HPP
#define QTCHAR_SCREENING_HPP

#include "qtchar/yalgebra.hpp"

#include <map>
#include <optional>
#include <string>

namespace qtchar {

/// Element of the screening bimodule for a fixed node i, in normal form:
/// a sum of coeff * b(e) * S~_{i,l}, keyed by (monomial, screening index).
class ScreeningElement {
public:
  struct Key {
    ExponentVector e;
    std::int64_t l;
    bool operator<(const Key& o) const {
      if (l != o.l) return l < o.l;
      MonomialOrder ord;
      if (ord(e, o.e)) return true;
      if (ord(o.e, e)) return false;
      return false;
    }
  };
  using Terms = std::map<Key, IntLaurent>;

  explicit ScreeningElement(int i = 0) : i_(i) {}

  int node() const { return i_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(const ExponentVector& e, std::int64_t l, const IntLaurent& c);
  ScreeningElement& operator+=(const ScreeningElement& o);
  ScreeningElement& operator-=(const ScreeningElement& o);

  std::string to_string() const;

private:
  int i_;
  Terms t_;
};

/// One rewrite step S~_{i,l} -> t^c A~_{i,l+r_i}^{-1} S~_{i,l+2r_i} applied
/// to a single term; c is -2 when s divides 2 r_i, else -1.  Returns the
/// replacement as (element, new screening index).
std::pair<AlgebraElement, std::int64_t> screening_rewrite_once(
    const AlgebraContext& ctx, int i, const AlgebraElement& mono, std::int64_t l);

/// Kernel generator E-bar_{i,t}(M) for an i-dominant monomial M = b(e):
/// M (prod Y~^u)^{-1} <-prod_l (Y~_{i,l}(1 + t A~_{i,l+r_i}^{-1}))^{u_{i,l}}.
/// At s >= 1 the ordered product runs over the window l = s-1 .. 0.
AlgebraElement e_it(const AlgebraContext& ctx, const ExponentVector& e, int i);

/// Deformed screening operator, normal-formed; generic contexts only
/// (the s >= 1 bimodule has torsion, use kernel_decompose there).
ScreeningElement apply_screening(const AlgebraContext& ctx, const AlgebraElement& a,
                                 int i);

struct KernelDecomposition {
  bool in_kernel = false;
  /// Coefficients on the E-bar_{i,t}(M) basis, keyed by the i-dominant head.
  std::map<ExponentVector, IntLaurent, MonomialOrder> coeffs;
  /// First non-i-dominant leading monomial when not in the kernel.
  std::optional<ExponentVector> witness;
};

/// Greedy triangular elimination against the E-bar_{i,t} basis; works for
/// s = 0 and s >= 1.  Degree-truncated inputs decompose up to max_degree.
KernelDecomposition kernel_decompose(const AlgebraContext& ctx, const AlgebraElement& a,
                                     int i, std::int64_t max_degree = -1);

} // namespace qtchar

#endif
