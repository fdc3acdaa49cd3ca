#include "qtchar/charalg.hpp"

#include "qtchar/errors.hpp"
#include "qtchar/rational.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace qtchar {

// ------------------------------------------------------------ Rep monomials

RepMonomial RepMonomial::x_gen(int i, std::int64_t l, int e) {
  RepMonomial m;
  m.add(i, l, e);
  return m;
}

void RepMonomial::add(int i, std::int64_t l, int e) {
  if (e == 0) return;
  GenIndex k{i, l};
  auto it = std::lower_bound(x_.begin(), x_.end(), k,
                             [](const auto& p, GenIndex q) { return p.first < q; });
  if (it != x_.end() && it->first == k) {
    it->second += e;
    if (it->second == 0) x_.erase(it);
  } else {
    x_.insert(it, {k, e});
  }
  if (!x_.empty() && x_.back().second < 0)
    fail("NegativeRepExponent", "Rep monomials carry nonnegative exponents");
}

RepMonomial RepMonomial::operator*(const RepMonomial& o) const {
  RepMonomial m = *this;
  for (const auto& [k, e] : o.x_) m.add(k.i, k.l, e);
  return m;
}

std::string RepMonomial::to_string() const {
  if (x_.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, e] : x_) {
    if (!first) out << "*";
    first = false;
    out << "X[" << (k.i + 1) << "," << k.l << "]";
    if (e != 1) out << "^" << e;
  }
  return out.str();
}

RepMonomial parse_rep_monomial(const AlgebraContext& ctx, const std::string& text) {
  RepMonomial m;
  std::size_t p = 0;
  auto skip = [&] {
    while (p < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[p])) || text[p] == '*'))
      ++p;
  };
  auto read_int = [&]() -> std::int64_t {
    std::size_t q = p;
    if (q < text.size() && (text[q] == '-' || text[q] == '+')) ++q;
    std::size_t d = q;
    while (q < text.size() && std::isdigit(static_cast<unsigned char>(text[q]))) ++q;
    if (q == d) fail("ParseError", "expected integer in Rep monomial");
    std::int64_t v = std::stoll(text.substr(p, q - p));
    p = q;
    return v;
  };
  skip();
  while (p < text.size()) {
    if (text[p] != 'X') fail("ParseError", "Rep monomials are products of X[i,l]");
    ++p;
    if (p >= text.size() || text[p] != '[') fail("ParseError", "expected '['");
    ++p;
    std::int64_t first = read_int();
    int i;
    std::int64_t l;
    if (p < text.size() && text[p] == ',') {
      ++p;
      l = read_int();
      i = static_cast<int>(first) - 1;
    } else if (ctx.n() == 1) {
      i = 0;
      l = first;
    } else {
      fail("ParseError", "X[i,l] needs both indices when the rank is > 1");
    }
    if (p >= text.size() || text[p] != ']') fail("ParseError", "expected ']'");
    ++p;
    std::int64_t pw = 1;
    if (p < text.size() && text[p] == '^') {
      ++p;
      pw = read_int();
    }
    if (i < 0 || i >= ctx.n()) fail("ParseError", "node index out of range");
    if (pw < 0) fail("ParseError", "Rep exponents are nonnegative");
    m.add(i, ctx.reduce(l), static_cast<int>(pw));
    skip();
  }
  return m;
}

std::string to_string(AlgoStatus st) {
  switch (st) {
  case AlgoStatus::Complete: return "Complete";
  case AlgoStatus::Truncated: return "Truncated";
  case AlgoStatus::Inconsistent: return "Inconsistent";
  case AlgoStatus::DominantCollision: return "DominantCollision";
  }
  return "?";
}

// ------------------------------------------------------------------ sweep

FtResult CharacterEngine::ft_run(const ExponentVector& seed, std::int64_t max_degree) {
  const AlgebraContext& g = generic_ctx();
  if (ctx_.mode() != BicharMode::Standard)
    fail("ModeUnsupported", "the character algorithms run on the standard bicharacters");
  if (!ctx_.cartan().flags().cc_le3 && !cc_override_)
    fail("PreconditionCCLe3",
         "the algorithm needs C_{i,j}C_{j,i} <= 3; pass the override to force");
  if (!dominant(g, seed)) fail("NotDominant", "the seed monomial must be dominant");

  FtResult res;
  res.series.max_degree = max_degree;
  res.series.seed = seed;

  const int n = g.n();
  std::vector<AlgebraElement> acc(static_cast<std::size_t>(n)); // sum a^{(i)}[M] E-bar(M)
  AlgebraElement result;
  std::set<ExponentVector, MonomialOrder> pending, seen;
  pending.insert(seed);
  seen.insert(seed);
  bool clipped = false;

  while (!pending.empty()) {
    ExponentVector m = *pending.begin();
    pending.erase(pending.begin());

    std::vector<IntLaurent> c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = acc[static_cast<std::size_t>(i)].coeff(m);

    std::vector<int> nondom;
    for (int i = 0; i < n; ++i)
      if (!i_dominant(g, m, i)) nondom.push_back(i);

    IntLaurent val;
    if (m == seed) {
      val = IntLaurent::one();
    } else if (!nondom.empty()) {
      val = c[static_cast<std::size_t>(nondom.front())];
      for (std::size_t k = 1; k < nondom.size(); ++k)
        if (c[static_cast<std::size_t>(nondom[k])] != val) {
          res.status = AlgoStatus::Inconsistent;
          res.witness = m;
          res.series.element = result;
          res.series.complete = false;
          return res;
        }
    } else {
      // dominant monomial other than the seed: minimality forces 0; the
      // nonzero forced value is absorbed by the i-ledgers and reported
      val = IntLaurent::zero();
      for (int i = 0; i < n; ++i)
        if (!c[static_cast<std::size_t>(i)].is_zero() && !res.collision)
          res.collision = m;
    }
    result.add_term(m, val);

    for (int i = 0; i < n; ++i) {
      if (!nondom.empty() &&
          std::find(nondom.begin(), nondom.end(), i) != nondom.end())
        continue;
      IntLaurent delta = val - c[static_cast<std::size_t>(i)];
      if (delta.is_zero()) continue;
      AlgebraElement expansion = e_it(g, m, i) * delta;
      for (const auto& [e2, c2] : expansion.terms()) {
        if (e2.degree() > max_degree) {
          clipped = true;
          continue;
        }
        acc[static_cast<std::size_t>(i)].add_term(e2, c2);
        if (seen.insert(e2).second) pending.insert(e2);
      }
    }
  }

  res.series.element = result;
  res.series.complete = !clipped && (res.status == AlgoStatus::Complete);
  if (clipped && res.status == AlgoStatus::Complete) res.status = AlgoStatus::Truncated;
  return res;
}

CharacterSeries CharacterEngine::ft(const ExponentVector& seed, std::int64_t max_degree) {
  FtResult r = ft_run(seed, max_degree);
  if (r.status == AlgoStatus::Inconsistent)
    fail("Inconsistent", "deformed algorithm is not well defined at monomial " +
                             (r.witness ? r.witness->to_string() : std::string("?")));
  return std::move(r.series);
}

const CharacterSeries& CharacterEngine::fundamental(int i, std::int64_t l,
                                                    std::int64_t max_degree) {
  if (fundamentals_degree_ != max_degree) {
    fundamentals_.clear();
    fundamentals_degree_ = max_degree;
  }
  auto key = std::make_pair(i, l);
  auto it = fundamentals_.find(key);
  if (it != fundamentals_.end()) return it->second;

  // translation invariance: compute at l = 0 once and shift
  auto base_key = std::make_pair(i, static_cast<std::int64_t>(0));
  auto bit = fundamentals_.find(base_key);
  if (bit == fundamentals_.end()) {
    CharacterSeries s = ft(ExponentVector::y_gen(i, 0), max_degree);
    bit = fundamentals_.emplace(base_key, std::move(s)).first;
  }
  if (l == 0) return bit->second;

  CharacterSeries shifted_series;
  shifted_series.max_degree = max_degree;
  shifted_series.complete = bit->second.complete;
  shifted_series.seed = ExponentVector::y_gen(i, l);
  for (const auto& [e, c] : bit->second.element.terms())
    shifted_series.element.add_term(shift(e, -l), c);
  return fundamentals_.emplace(key, std::move(shifted_series)).first->second;
}

namespace {

CharacterSeries multiply_series(const AlgebraContext& ctx, const CharacterSeries& a,
                                const CharacterSeries& b, std::int64_t max_degree) {
  CharacterSeries out;
  out.max_degree = max_degree;
  out.element = multiply(ctx, a.element, b.element, max_degree);
  out.complete = a.complete && b.complete &&
                 a.element.max_term_degree() + b.element.max_term_degree() <= max_degree;
  return out;
}

} // namespace

CharacterSeries CharacterEngine::chi_qt(const RepMonomial& m, std::int64_t max_degree) {
  const AlgebraContext& g = generic_ctx();
  CharacterSeries acc;
  acc.max_degree = max_degree;
  acc.element = AlgebraElement::one();
  acc.complete = true;
  // ->prod over ascending l, ascending i within a level
  std::vector<std::pair<GenIndex, int>> factors(m.entries().begin(), m.entries().end());
  std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) {
    if (a.first.l != b.first.l) return a.first.l < b.first.l;
    return a.first.i < b.first.i;
  });
  ExponentVector head;
  for (const auto& [k, x] : factors) {
    head.add_y(k.i, k.l, x);
    const CharacterSeries& f = fundamental(k.i, k.l, max_degree);
    for (int p = 0; p < x; ++p) acc = multiply_series(g, acc, f, max_degree);
  }
  acc.seed = head;
  return acc;
}

CharacterSeries CharacterEngine::e_t(const ExponentVector& e, const IntLaurent& coeff,
                                     std::int64_t max_degree) {
  if (!dominant(ctx_, e)) fail("NotDominant", "->E_t needs a dominant monomial");
  if (!ctx_.periodic()) {
    const AlgebraContext& g = generic_ctx();
    auto u = u_all(g, e);
    ExponentVector yu;
    for (const auto& [k, x] : u) yu.add_y(k.i, k.l, x);
    CharacterSeries acc;
    acc.max_degree = max_degree;
    acc.complete = true;
    acc.seed = e;
    acc.element = multiply(g, AlgebraElement::monomial(e, coeff),
                           AlgebraElement::monomial(-yu, IntLaurent::one()));
    std::vector<std::pair<GenIndex, int>> factors(u.begin(), u.end());
    std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) {
      if (a.first.l != b.first.l) return a.first.l < b.first.l;
      return a.first.i < b.first.i;
    });
    for (const auto& [k, x] : factors) {
      const CharacterSeries& f = fundamental(k.i, k.l, max_degree);
      for (int p = 0; p < x; ++p) acc = multiply_series(ctx_, acc, f, max_degree);
    }
    return acc;
  }

  // root of unity: lift to the window l = 0..s-1, run generically, fold
  ctx_.require_large_s();
  auto u = u_all(ctx_, e);
  ExponentVector window; // pure-Y lift M over Z
  for (const auto& [k, x] : u) {
    if (x < 0) fail("NotDominant", "->E_t needs a dominant monomial");
    window.add_y(k.i, ctx_.reduce(k.l), x); // representatives already in 0..s-1
  }
  CharacterSeries generic_series = e_t_window(window, max_degree);
  AlgebraElement folded = tau_st(ctx_, generic_series.element);

  // prefactor coeff * b(e) * tau(M)^{-1}; tau of a pure-Y monomial is exact
  AlgebraElement tau_m_inv = invert_monomial(
      ctx_, AlgebraElement::monomial(fold_ps(ctx_, window), IntLaurent::one()));
  CharacterSeries out;
  out.max_degree = max_degree;
  // the prefactor carries deg(e); clipping it against max_degree matters
  out.complete = generic_series.complete &&
                 e.degree() + folded.max_term_degree() <= max_degree;
  out.seed = e;
  out.element = multiply(ctx_, multiply(ctx_, AlgebraElement::monomial(e, coeff), tau_m_inv),
                         folded, max_degree);
  return out;
}

CharacterSeries CharacterEngine::e_t_window(const ExponentVector& pure_y,
                                            std::int64_t max_degree) {
  const AlgebraContext& g = generic_ctx();
  CharacterSeries acc;
  acc.max_degree = max_degree;
  acc.complete = true;
  acc.seed = pure_y;
  acc.element = AlgebraElement::one();
  std::vector<std::pair<GenIndex, int>> factors(pure_y.y_entries().begin(),
                                                pure_y.y_entries().end());
  std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) {
    if (a.first.l != b.first.l) return a.first.l < b.first.l;
    return a.first.i < b.first.i;
  });
  for (const auto& [k, x] : factors) {
    const CharacterSeries& f = fundamental(k.i, k.l, max_degree);
    for (int p = 0; p < x; ++p) acc = multiply_series(g, acc, f, max_degree);
  }
  return acc;
}

CharacterSeries CharacterEngine::chi_eps_t(const RepMonomial& m, std::int64_t max_degree,
                                           EpsRoute route) {
  ctx_.require_large_s();
  if (ctx_.mode() != BicharMode::Standard)
    fail("ModeUnsupported", "epsilon,t-characters need B(z) symmetric");
  RepMonomial lift;
  for (const auto& [k, x] : m.entries()) lift.add(k.i, ctx_.reduce(k.l), x);
  CharacterSeries chiq = chi_qt(lift, max_degree);
  CharacterSeries out;
  out.max_degree = max_degree;
  out.complete = chiq.complete;
  out.seed = fold_ps(ctx_, chiq.seed);
  out.element = route == EpsRoute::Tau ? tau_st_ordered(ctx_, chiq.element)
                                       : tau_st(ctx_, chiq.element);
  return out;
}

std::map<ExponentVector, IntLaurent, MonomialOrder> CharacterEngine::decompose_over_et(
    const CharacterSeries& s) {
  std::map<ExponentVector, IntLaurent, MonomialOrder> heads;
  AlgebraElement residual = s.element;
  while (!residual.is_zero()) {
    const auto& [lead, c] = *residual.terms().begin();
    if (!dominant(ctx_, lead))
      fail("TruncationInsufficient",
           "non-dominant leading monomial in an ->E_t decomposition: " +
               lead.to_string());
    heads[lead] += c;
    CharacterSeries et = e_t(lead, IntLaurent::one(), s.max_degree);
    residual -= et.element * c;
  }
  return heads;
}

RepElement rep_scale(const RepElement& a, const IntLaurent& c) {
  RepElement out;
  if (c.is_zero()) return out;
  for (const auto& [m, x] : a) out.emplace(m, x * c);
  return out;
}

RepElement CharacterEngine::star_product(const RepElement& a, const RepElement& b,
                                         std::int64_t max_degree) {
  if (!ctx_.cartan().flags().finite_type && ctx_.periodic())
    fail("ModeUnsupported", "star product needs C finite or s = 0");
  auto chi_of = [&](const RepElement& r) {
    CharacterSeries acc;
    acc.max_degree = max_degree;
    acc.complete = true;
    for (const auto& [m, c] : r) {
      CharacterSeries one = ctx_.periodic() ? chi_eps_t(m, max_degree, EpsRoute::Axquat)
                                            : chi_qt(m, max_degree);
      acc.element += one.element * c;
      acc.complete = acc.complete && one.complete;
    }
    return acc;
  };
  CharacterSeries fa = chi_of(a), fb = chi_of(b);
  if (!fa.complete || !fb.complete)
    fail("TruncationInsufficient",
         "star product needs complete factors at this max_degree");
  CharacterSeries prod = multiply_series(ctx_, fa, fb, max_degree);
  if (!prod.complete)
    fail("TruncationInsufficient", "product exceeds max_degree; raise it");
  auto heads = decompose_over_et(prod);
  RepElement out;
  for (const auto& [e, c] : heads) {
    RepMonomial xm;
    for (const auto& [k, u] : u_all(ctx_, e)) xm.add(k.i, k.l, u);
    auto [it, fresh] = out.emplace(std::move(xm), c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return out;
}

// ------------------------------------------------------------------- probe

std::optional<std::vector<BigInt>> positive_left_null(const IntMatrix& c) {
  const std::size_t n = c.size();
  // solve x^T C = 0 by exact elimination on C^T
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(c[j][i]);
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < n; ++col) {
    std::size_t piv = rank;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[rank]);
    Rational d = a[rank][col];
    for (auto& x : a[rank]) x = x / d;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == rank) continue;
      Rational f = a[row][col];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) a[row][j] -= f * a[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  if (n - rank != 1) return std::nullopt; // only 1-dim kernels are certified
  std::vector<bool> is_pivot(n, false);
  for (std::size_t col : pivot_col) is_pivot[col] = true;
  std::size_t free_col = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_col = j;
  std::vector<Rational> x(n);
  x[free_col] = Rational(1);
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = -a[r][free_col];
  BigInt lcm = 1;
  for (const auto& v : x) lcm = boost::multiprecision::lcm(lcm, v.den());
  std::vector<BigInt> out;
  bool pos = true, neg = true;
  for (const auto& v : x) {
    BigInt w = v.num() * (lcm / v.den());
    pos = pos && w > 0;
    neg = neg && w < 0;
    out.push_back(w);
  }
  if (neg)
    for (auto& w : out) w = -w;
  if (!(pos || neg)) return std::nullopt;
  return out;
}

ProbeReport CharacterEngine::stops_probe(const ExponentVector& seed,
                                         std::int64_t max_degree) {
  ProbeReport rep;
  rep.max_degree = max_degree;
  FtResult run = ft_run(seed, max_degree);
  rep.status = run.status;
  rep.witness = run.witness;
  rep.collision = run.collision;
  rep.monomial_count = run.series.element.size();
  if (run.status == AlgoStatus::Complete)
    rep.completed_degree = run.series.element.max_term_degree();
  for (const auto& [e, c] : run.series.element.terms())
    if (antidominant(generic_ctx(), e) && !e.empty()) {
      rep.antidominant = e;
      break;
    }

  auto alpha = positive_left_null(ctx_.cartan().c());
  rep.null_vector_found = alpha.has_value();
  if (alpha) {
    rep.u_sum_invariant_ok = true;
    const AlgebraContext& g = generic_ctx();
    for (const auto& [e, c] : run.series.element.terms()) {
      ExponentVector apart;
      for (const auto& [k, x] : e.v_entries()) apart.add_v(k.i, k.l, x);
      BigInt acc = 0;
      for (const auto& [k, u] : u_all(g, apart)) acc += (*alpha)[static_cast<std::size_t>(k.i)] * u;
      if (acc != 0) {
        rep.u_sum_invariant_ok = false;
        break;
      }
    }
  }
  return rep;
}

} // namespace qtchar
