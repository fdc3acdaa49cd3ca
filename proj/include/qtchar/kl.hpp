#ifndef QTCHAR_KL_HPP
#define QTCHAR_KL_HPP

#include "qtchar/charalg.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace qtchar {

/// Bar-fixed dominant monomial t^{alpha(e)} b(e).
struct NormalizedMonomial {
  ExponentVector e;
  std::int64_t alpha = 0;
  std::string to_string() const;
};

/// Tie-break among equal-degree monomials when ordering the basis; the
/// default refines by the lexicographic serialization.  A different
/// degree-compatible order must reproduce identical P and L (uniqueness).
using TieBreak = std::function<bool(const ExponentVector&, const ExponentVector&)>;

struct KLResult {
  NormalizedMonomial seed;
  /// Dominant closure in ascending (degree, tie-break) order; index 0 = seed.
  std::vector<NormalizedMonomial> basis;
  /// P[(b,a)]: coefficient of L(basis[b]) in ->E_t(basis[a]); strictly
  /// negative t-support for b != a, 1 on the diagonal by convention.
  std::map<std::pair<std::size_t, std::size_t>, IntLaurent> p;
  /// mu[(b,a)]: bar-symmetric coefficients of F-hat(basis[b]) in L(basis[a]).
  std::map<std::pair<std::size_t, std::size_t>, IntLaurent> mu;
  std::vector<AlgebraElement> l_elems;    // L(basis[a])
  std::vector<AlgebraElement> fhat_elems; // F-hat(basis[a])
  std::vector<AlgebraElement> e_elems;    // ->E_t(basis[a])
  AlgoStatus status = AlgoStatus::Complete;
  std::int64_t max_degree = 0;
  bool closure_certified = false; // finite bound certified the closure
  /// Non-finite case: a positive integer null combination of the rows of C
  /// certifies finitely many dominant monomials per level; when the bounded
  /// search finds none the computation proceeds uncertified.
  bool level_finiteness_certified = false;
};

/// Dominant monomials occurring in ->E_t(seed) and, transitively, in the
/// expansions of those, up to max_degree; ascending order.  For finite
/// Cartan matrices the per-i bound C^{-1}U - V >= 0 is verified and used
/// to certify completeness (TruncationInsufficient when it cannot).
std::vector<NormalizedMonomial> dominant_closure(CharacterEngine& eng,
                                                 const ExponentVector& seed,
                                                 std::int64_t max_degree);

/// F-hat at s >= 1 built by subtracting ->E_t of lower dominant monomials
/// until the seed is the unique dominant monomial (also exposed for finite
/// inputs, where it agrees with the sweep by uniqueness).
CharacterSeries ft_s_nonfinite(CharacterEngine& eng, const NormalizedMonomial& seed,
                               std::int64_t max_degree);

/// Triangular bar-invariant decomposition ->E_t(m) = L(m) + sum P L(m');
/// handles s = 0 (sweep-based F-hat) and s >= 1 (subtraction-based).
KLResult kl_decompose(CharacterEngine& eng, const NormalizedMonomial& seed,
                      std::int64_t max_degree, const TieBreak& tiebreak = nullptr);

/// Non-finite root-of-unity variant: truncated closure, level bookkeeping,
/// and the finiteness certificate of the positive-null-vector condition.
/// ConditionUnverified is reported through closure_certified = false.
KLResult kl_nonfinite(CharacterEngine& eng, const NormalizedMonomial& seed,
                      std::int64_t max_degree, const TieBreak& tiebreak = nullptr);

/// Collapsed polynomial for commutative dominant Y-monomials m' and m:
/// sum of P_{M',M} over lifts M' with pi-hat image m' at the minimal level
/// k(m,m'); M is the pure-Y lift of m.  Returns the polynomial and k.
std::pair<IntLaurent, std::int64_t> collapsed_p(CharacterEngine& eng,
                                                const YMonomial& m_to,
                                                const YMonomial& m_from,
                                                std::int64_t max_degree);

NormalizedMonomial normalize_seed(const AlgebraContext& ctx, const ExponentVector& e);

} // namespace qtchar

#endif
