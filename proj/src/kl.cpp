#include "qtchar/kl.hpp"

#include "qtchar/errors.hpp"
#include "qtchar/rational.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qtchar {

std::string NormalizedMonomial::to_string() const {
  if (alpha == 0) return e.to_string();
  std::ostringstream out;
  out << "t^" << alpha;
  if (!e.empty()) out << "*" << e.to_string();
  return out.str();
}

NormalizedMonomial normalize_seed(const AlgebraContext& ctx, const ExponentVector& e) {
  return {e, alpha_invariant(ctx, e)};
}

namespace {

// Total exponent bound from C^{-1}U - V >= 0 (finite type).  Returns the
// per-i caps, or nullopt when C is singular.
std::optional<std::vector<Rational>> v_caps(const CartanData& cd,
                                            const std::vector<BigInt>& u_totals) {
  const std::size_t n = static_cast<std::size_t>(cd.n());
  // exact Gauss-Jordan on [C | U]
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      a[i][j] = Rational(cd.c(static_cast<int>(i), static_cast<int>(j)));
    a[i][n] = Rational(u_totals[i]);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    Rational d = a[col][col];
    for (std::size_t j = col; j <= n; ++j) a[col][j] = a[col][j] / d;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col) continue;
      Rational f = a[row][col];
      if (f.is_zero()) continue;
      for (std::size_t j = col; j <= n; ++j) a[row][j] -= f * a[col][j];
    }
  }
  std::vector<Rational> caps;
  for (std::size_t i = 0; i < n; ++i) caps.push_back(a[i][n]);
  return caps;
}

struct ClosureInfo {
  std::vector<NormalizedMonomial> members;
  bool certified = false;
};

ClosureInfo closure_impl(CharacterEngine& eng, const ExponentVector& seed,
                         std::int64_t max_degree) {
  const AlgebraContext& ctx = eng.ctx();
  if (!dominant(ctx, seed)) fail("NotDominant", "dominant_closure needs a dominant seed");

  ClosureInfo out;
  bool finite = ctx.cartan().flags().finite_type;
  std::optional<std::vector<Rational>> caps;
  std::int64_t cap_total = -1;
  if (finite) {
    std::vector<BigInt> u_totals(static_cast<std::size_t>(ctx.n()), 0);
    for (const auto& [k, u] : u_all(ctx, seed)) u_totals[static_cast<std::size_t>(k.i)] += u;
    caps = v_caps(ctx.cartan(), u_totals);
    if (caps) {
      Rational total;
      for (const auto& c : *caps) total += c;
      // floor of the rational bound
      BigInt fl = total.num() / total.den();
      if (Rational(fl) > total) fl -= 1;
      cap_total = static_cast<std::int64_t>(fl);
      if (cap_total > max_degree)
        fail("TruncationInsufficient",
             "the dominance bound allows degree " + std::to_string(cap_total) +
                 " > max_degree " + std::to_string(max_degree));
      out.certified = true;
    }
  }

  std::set<ExponentVector, MonomialOrder> seen, pending;
  pending.insert(seed);
  seen.insert(seed);
  std::vector<ExponentVector> members;
  while (!pending.empty()) {
    ExponentVector m = *pending.begin();
    pending.erase(pending.begin());
    members.push_back(m);
    CharacterSeries et = eng.e_t(m, IntLaurent::one(), max_degree);
    out.certified = out.certified && et.complete;
    for (const auto& [e, c] : et.element.terms()) {
      if (e.degree() > max_degree || !dominant(ctx, e)) continue;
      // per-i certificate check in the finite case
      if (caps) {
        std::vector<std::int64_t> vt(static_cast<std::size_t>(ctx.n()), 0);
        ExponentVector rel = e + (-seed);
        for (const auto& [k, x] : rel.v_entries()) vt[static_cast<std::size_t>(k.i)] += x;
        for (int i = 0; i < ctx.n(); ++i)
          if (Rational(BigInt(vt[static_cast<std::size_t>(i)])) > (*caps)[static_cast<std::size_t>(i)])
            fail("BoundViolated", "dominant monomial exceeds the C^{-1}U cap");
      }
      if (seen.insert(e).second) pending.insert(e);
    }
  }
  std::sort(members.begin(), members.end(), MonomialOrder{});
  for (const auto& e : members) out.members.push_back(normalize_seed(ctx, e));
  return out;
}

} // namespace

std::vector<NormalizedMonomial> dominant_closure(CharacterEngine& eng,
                                                 const ExponentVector& seed,
                                                 std::int64_t max_degree) {
  return closure_impl(eng, seed, max_degree).members;
}

namespace {

IntLaurent normalized_coeff(const AlgebraElement& x, const NormalizedMonomial& m) {
  // coefficient relative to t^{alpha} b(e)
  return x.coeff(m.e).shifted(-m.alpha);
}

struct Solver {
  CharacterEngine& eng;
  std::int64_t max_degree;
  std::vector<NormalizedMonomial> basis;
  std::vector<AlgebraElement> e_elems;
  std::vector<AlgebraElement> fhat;

  // expand x over the F-hat family; returns coefficients indexed by basis
  std::vector<IntLaurent> expand(const AlgebraElement& x) const {
    std::vector<IntLaurent> c(basis.size());
    AlgebraElement residual = x;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      IntLaurent cb = normalized_coeff(residual, basis[b]);
      c[b] = cb;
      // F-hat[b] already heads with t^{alpha_b}
      if (!cb.is_zero()) residual -= fhat[b] * cb;
    }
    // residual may retain monomials beyond max_degree bookkeeping only
    for (const auto& [e, cc] : residual.terms())
      if (dominant(eng.ctx(), e) && e.degree() <= max_degree)
        fail("Internal", "F-hat expansion left a dominant residual at " + e.to_string());
    return c;
  }
};

KLResult kl_impl(CharacterEngine& eng, const NormalizedMonomial& seed,
                 std::int64_t max_degree, const TieBreak& tiebreak, bool require_finite) {
  const AlgebraContext& ctx = eng.ctx();
  if (ctx.periodic()) ctx.require_large_s();
  if (require_finite && ctx.periodic() && !ctx.cartan().flags().finite_type)
    fail("ModeUnsupported", "finite-case decomposition needs a finite Cartan matrix; "
                            "use the non-finite variant");
  if (seed.alpha != alpha_invariant(ctx, seed.e))
    fail("NotBarFixed", "the seed must be the bar-fixed normalization t^{alpha} b(e)");

  ClosureInfo closure = closure_impl(eng, seed.e, max_degree);

  KLResult out;
  out.seed = seed;
  out.max_degree = max_degree;
  out.closure_certified = closure.certified;
  out.basis = std::move(closure.members);
  if (tiebreak) {
    std::sort(out.basis.begin(), out.basis.end(),
              [&](const NormalizedMonomial& a, const NormalizedMonomial& b) {
                if (a.e.degree() != b.e.degree()) return a.e.degree() < b.e.degree();
                return tiebreak(a.e, b.e);
              });
  }
  const std::size_t n = out.basis.size();
  if (n == 0 || !(out.basis[0].e == seed.e))
    fail("Internal", "seed is not the head of its own closure");

  // ->E_t for every member, normalized head coefficient t^{alpha}
  for (const auto& m : out.basis)
    out.e_elems.push_back(eng.e_t(m.e, IntLaurent::power(m.alpha), max_degree).element);

  // F-hat per member: sweep at s = 0, subtraction at s >= 1
  Solver solver{eng, max_degree, out.basis, out.e_elems, {}};
  if (!ctx.periodic()) {
    for (const auto& m : out.basis) {
      CharacterSeries f = eng.ft(m.e, max_degree);
      out.fhat_elems.push_back(f.element * IntLaurent::power(m.alpha));
      if (!f.complete && out.status == AlgoStatus::Complete)
        out.status = AlgoStatus::Truncated;
    }
  } else {
    // descending: F-hat(m_a) = E(m_a) - sum_{b>a} coeff * E(m_b), iterated
    out.fhat_elems.resize(n);
    for (std::size_t a = n; a-- > 0;) {
      AlgebraElement residual = out.e_elems[a];
      for (std::size_t b = a + 1; b < n; ++b) {
        IntLaurent cb = normalized_coeff(residual, out.basis[b]);
        if (!cb.is_zero()) residual -= out.fhat_elems[b] * cb;
      }
      out.fhat_elems[a] = std::move(residual);
    }
  }
  solver.fhat = out.fhat_elems;

  if (!closure.certified && out.status == AlgoStatus::Complete)
    out.status = AlgoStatus::Truncated;

  // expansion matrix c[b][a]: ->E_t(m_a) over F-hat(m_b)
  std::vector<std::vector<IntLaurent>> cmat;
  for (std::size_t a = 0; a < n; ++a) cmat.push_back(solver.expand(out.e_elems[a]));

  // triangular bar-invariant solve, seeds processed bottom-up
  for (std::size_t a = n; a-- > 0;) {
    out.p[{a, a}] = IntLaurent::one();
    out.mu[{a, a}] = IntLaurent::one();
    for (std::size_t b = a + 1; b < n; ++b) {
      IntLaurent x = cmat[a][b];
      for (std::size_t e = a + 1; e < b; ++e) {
        auto pit = out.p.find({e, a});
        auto mit = out.mu.find({b, e});
        if (pit != out.p.end() && mit != out.mu.end())
          x -= pit->second * mit->second;
      }
      auto [mu_part, p_part] = split_sym_neg(x);
      if (!mu_part.is_zero()) out.mu[{b, a}] = mu_part;
      if (!p_part.is_zero()) out.p[{b, a}] = p_part;
    }
  }

  // L(m_a) = sum_b mu[b][a] F-hat(m_b)
  for (std::size_t a = 0; a < n; ++a) {
    AlgebraElement l = out.fhat_elems[a];
    for (std::size_t b = a + 1; b < n; ++b) {
      auto it = out.mu.find({b, a});
      if (it != out.mu.end()) l += out.fhat_elems[b] * it->second;
    }
    out.l_elems.push_back(std::move(l));
  }
  return out;
}

} // namespace

CharacterSeries ft_s_nonfinite(CharacterEngine& eng, const NormalizedMonomial& seed,
                               std::int64_t max_degree) {
  const AlgebraContext& ctx = eng.ctx();
  ctx.require_large_s();
  if (ctx.mode() != BicharMode::Standard)
    fail("ModeUnsupported", "F-hat^s needs B(z) symmetric");

  CharacterSeries out;
  out.max_degree = max_degree;
  out.seed = seed.e;
  CharacterSeries head = eng.e_t(seed.e, IntLaurent::power(seed.alpha), max_degree);
  AlgebraElement residual = head.element;
  bool all_complete = head.complete;
  // subtract ->E_t of every lower dominant monomial, ascending
  std::set<ExponentVector, MonomialOrder> done{seed.e};
  bool progress = true;
  while (progress) {
    progress = false;
    for (const auto& [e, c] : residual.terms()) {
      if (done.count(e) || !dominant(ctx, e)) continue;
      NormalizedMonomial m = normalize_seed(ctx, e);
      IntLaurent lambda = c.shifted(-m.alpha);
      CharacterSeries lower = eng.e_t(e, IntLaurent::power(m.alpha), max_degree);
      all_complete = all_complete && lower.complete;
      residual -= lower.element * lambda;
      done.insert(e);
      progress = true;
      break; // restart: the subtraction may reorder the leading terms
    }
  }
  out.element = std::move(residual);
  out.complete = all_complete;
  return out;
}

KLResult kl_decompose(CharacterEngine& eng, const NormalizedMonomial& seed,
                      std::int64_t max_degree, const TieBreak& tiebreak) {
  return kl_impl(eng, seed, max_degree, tiebreak, /*require_finite=*/true);
}

KLResult kl_nonfinite(CharacterEngine& eng, const NormalizedMonomial& seed,
                      std::int64_t max_degree, const TieBreak& tiebreak) {
  const AlgebraContext& ctx = eng.ctx();
  ctx.require_large_s();
  KLResult out = kl_impl(eng, seed, max_degree, tiebreak, /*require_finite=*/false);
  // finiteness-per-level certificate: a positive integer combination of the
  // rows of C summing to zero bounds the dominant count per degree
  out.level_finiteness_certified =
      positive_left_null(ctx.cartan().c()).has_value() ||
      ctx.cartan().flags().finite_type;
  return out;
}


namespace {

// Smallest k such that some dominant monomial of the form m * (k A-factors)
// has the given pi-hat image; existence in the monomial lattice, not mere
// occurrence in a computed series, defines the level.
std::int64_t minimal_lift_depth(const AlgebraContext& ctx, const ExponentVector& base,
                                const YMonomial& target, std::int64_t max_depth) {
  std::vector<GenIndex> slots;
  for (int i = 0; i < ctx.n(); ++i)
    for (std::int64_t l = 0; l < ctx.s(); ++l) slots.push_back({i, l});
  if (pi_hat_monomial(ctx, base) == target) return 0;
  std::vector<ExponentVector> level{base};
  for (std::int64_t k = 1; k <= max_depth; ++k) {
    std::vector<ExponentVector> next;
    std::set<ExponentVector, MonomialOrder> seen;
    for (const auto& e : level)
      for (const auto& g : slots) {
        ExponentVector cand = e;
        cand.add_v(g.i, g.l, 1);
        if (seen.insert(cand).second) next.push_back(cand);
      }
    for (const auto& e : next)
      if (dominant(ctx, e) && pi_hat_monomial(ctx, e) == target) return k;
    level = std::move(next);
  }
  return -1;
}

} // namespace

std::pair<IntLaurent, std::int64_t> collapsed_p(CharacterEngine& eng,
                                                const YMonomial& m_to,
                                                const YMonomial& m_from,
                                                std::int64_t max_degree) {
  const AlgebraContext& ctx = eng.ctx();
  ctx.require_large_s();
  // pure-Y lift of the source
  ExponentVector lift;
  for (const auto& [k, u] : m_from) {
    if (u < 0) fail("NotDominant", "collapsed polynomials need dominant monomials");
    lift.add_y(k.i, ctx.reduce(k.l), u);
  }
  std::int64_t kmin = minimal_lift_depth(ctx, lift, m_to, max_degree);
  if (kmin < 0)
    fail("TruncationInsufficient",
         "no dominant lift of the target exists within max_degree " +
             std::to_string(max_degree));
  if (kmin == 0) return {IntLaurent::one(), 0}; // diagonal convention
  KLResult kl = kl_nonfinite(eng, normalize_seed(ctx, lift), max_degree);
  IntLaurent total; // lifts at the minimal level absent from the family add 0
  for (std::size_t b = 1; b < kl.basis.size(); ++b) {
    if (kl.basis[b].e.degree() - lift.degree() != kmin) continue;
    if (pi_hat_monomial(ctx, kl.basis[b].e) != m_to) continue;
    auto it = kl.p.find({b, 0});
    if (it != kl.p.end()) total += it->second;
  }
  return {total, kmin};
}

} // namespace qtchar
