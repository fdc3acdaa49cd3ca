#ifndef QTCHAR_CHARALG_HPP
#define QTCHAR_CHARALG_HPP

#include "qtchar/screening.hpp"
#include "qtchar/yalgebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qtchar {

/// Monomial of the Grothendieck-ring side: sparse (i,l) -> nonneg exponent.
class RepMonomial {
public:
  using Entries = std::vector<std::pair<GenIndex, int>>;

  RepMonomial() = default;
  static RepMonomial x_gen(int i, std::int64_t l, int e = 1);

  const Entries& entries() const { return x_; }
  bool empty() const { return x_.empty(); }
  void add(int i, std::int64_t l, int e);

  RepMonomial operator*(const RepMonomial& o) const;
  bool operator==(const RepMonomial& o) const { return x_ == o.x_; }
  bool operator<(const RepMonomial& o) const { return x_ < o.x_; }

  std::string to_string() const;

private:
  Entries x_;
};

using RepElement = std::map<RepMonomial, IntLaurent>;

/// `X[<i>,<l>]` tokens with optional `^<int>` powers, `*` or space separated.
RepMonomial parse_rep_monomial(const AlgebraContext& ctx, const std::string& text);

enum class AlgoStatus { Complete, Truncated, Inconsistent, DominantCollision };

std::string to_string(AlgoStatus st);

/// Degree-truncated element with a completeness flag and seed metadata.
struct CharacterSeries {
  AlgebraElement element;
  std::int64_t max_degree = 0;
  bool complete = false;
  ExponentVector seed;
};

struct FtResult {
  CharacterSeries series;
  AlgoStatus status = AlgoStatus::Complete;
  std::optional<ExponentVector> witness; // set when status == Inconsistent
  /// First dominant non-seed monomial whose coefficient was forced nonzero
  /// before the minimality rule zeroed it.  Informational: the sweep
  /// compensates through the i-ledgers and stays exact; whether this can
  /// happen for finite-type seeds is the open finiteness question, so the
  /// event is reported rather than resolved.
  std::optional<ExponentVector> collision;
};

enum class EpsRoute { Tau, Axquat };

struct ProbeReport {
  AlgoStatus status = AlgoStatus::Complete;
  std::int64_t completed_degree = 0; // meaningful when status == Complete
  std::int64_t max_degree = 0;
  std::optional<ExponentVector> witness;
  std::optional<ExponentVector> collision;
  std::optional<ExponentVector> antidominant;
  std::size_t monomial_count = 0;
  bool null_vector_found = false;  // positive alpha with sum alpha_j L_j = 0
  bool u_sum_invariant_ok = false; // sum_i alpha_i u_i(A-part) == 0 everywhere
};

/// Runs the deformed algorithm and the character constructions on top of a
/// fixed context; fundamental series are cached per (i,l).  Contexts and
/// elements are immutable values, but an engine owns its caches: use one
/// engine per concurrent computation.
class CharacterEngine {
public:
  explicit CharacterEngine(AlgebraContext ctx, bool cc_override = false)
      : ctx_(std::move(ctx)), cc_override_(cc_override) {}

  const AlgebraContext& ctx() const { return ctx_; }
  const AlgebraContext& generic_ctx() const { return ctx_.generic(); }

  /// Deformed algorithm sweep from a dominant seed (generic context).
  /// Inconsistent inputs come back as a status, not a throw.
  FtResult ft_run(const ExponentVector& seed, std::int64_t max_degree);
  /// Same, throwing on Inconsistent (used by the character constructions).
  CharacterSeries ft(const ExponentVector& seed, std::int64_t max_degree);

  /// F-hat of the fundamental Y~_{i,l}, cached; generic context.
  const CharacterSeries& fundamental(int i, std::int64_t l, std::int64_t max_degree);

  /// chi_{q,t} of a Rep monomial (s = 0): ascending-l ordered product of
  /// fundamental series.
  CharacterSeries chi_qt(const RepMonomial& m, std::int64_t max_degree);

  /// Standard-module series ->E_t for a dominant monomial coeff * b(e);
  /// generic contexts use the ordered product of fundamentals, periodic
  /// contexts lift to the window, push through tau and fix the prefactor.
  CharacterSeries e_t(const ExponentVector& e, const IntLaurent& coeff,
                      std::int64_t max_degree);

  /// epsilon,t-character of a Rep^s monomial (s > 2 r^vee); the two routes
  /// are computed by independent paths and must agree.
  CharacterSeries chi_eps_t(const RepMonomial& m, std::int64_t max_degree,
                            EpsRoute route = EpsRoute::Tau);

  /// Deformed product on Rep_t via head decomposition and pullback.
  RepElement star_product(const RepElement& a, const RepElement& b,
                          std::int64_t max_degree);

  /// Triangular expansion of a series over the ->E_t family of its dominant
  /// heads: returns head -> coefficient; throws TruncationInsufficient when
  /// a nonzero residual survives a complete decomposition.
  std::map<ExponentVector, IntLaurent, MonomialOrder> decompose_over_et(
      const CharacterSeries& s);

  ProbeReport stops_probe(const ExponentVector& seed, std::int64_t max_degree);

private:
  CharacterSeries e_t_window(const ExponentVector& pure_y, std::int64_t max_degree);

  AlgebraContext ctx_;
  bool cc_override_;
  std::map<std::pair<int, std::int64_t>, CharacterSeries> fundamentals_;
  std::int64_t fundamentals_degree_ = -1;
};

RepElement rep_scale(const RepElement& a, const IntLaurent& c);

/// Positive integer vector alpha with sum_j alpha_j C_{j,i} = 0 for all i,
/// when the left kernel is one-dimensional and sign-definite (the affine
/// situation); nullopt otherwise.
std::optional<std::vector<BigInt>> positive_left_null(const IntMatrix& c);

} // namespace qtchar

#endif
