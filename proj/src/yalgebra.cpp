#include "qtchar/yalgebra.hpp"

#include "qtchar/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qtchar {

// ---------------------------------------------------------------- vectors

int ExponentVector::get(const Entries& m, GenIndex k) {
  auto it = std::lower_bound(m.begin(), m.end(), k,
                             [](const auto& p, GenIndex q) { return p.first < q; });
  return (it != m.end() && it->first == k) ? it->second : 0;
}

void ExponentVector::bump(Entries& m, GenIndex k, int e) {
  if (e == 0) return;
  auto it = std::lower_bound(m.begin(), m.end(), k,
                             [](const auto& p, GenIndex q) { return p.first < q; });
  if (it != m.end() && it->first == k) {
    it->second += e;
    if (it->second == 0) m.erase(it);
  } else {
    m.insert(it, {k, e});
  }
}

ExponentVector ExponentVector::y_gen(int i, std::int64_t l, int e) {
  ExponentVector out;
  out.add_y(i, l, e);
  return out;
}

ExponentVector ExponentVector::a_gen(int i, std::int64_t l, int e) {
  ExponentVector out;
  out.add_v(i, l, e);
  return out;
}

ExponentVector ExponentVector::operator+(const ExponentVector& o) const {
  ExponentVector out = *this;
  for (const auto& [k, e] : o.y_) bump(out.y_, k, e);
  for (const auto& [k, e] : o.v_) bump(out.v_, k, e);
  return out;
}

ExponentVector ExponentVector::operator-() const {
  ExponentVector out;
  for (const auto& [k, e] : y_) out.y_.emplace_back(k, -e);
  for (const auto& [k, e] : v_) out.v_.emplace_back(k, -e);
  return out;
}

std::int64_t ExponentVector::degree() const {
  std::int64_t d = 0;
  for (const auto& [k, e] : v_) d += e;
  return d;
}

std::int64_t ExponentVector::min_l() const {
  if (empty()) fail("EmptySupport", "min_l of the empty monomial");
  std::int64_t m = INT64_MAX;
  for (const auto& [k, e] : y_) m = std::min(m, k.l);
  for (const auto& [k, e] : v_) m = std::min(m, k.l);
  return m;
}

std::int64_t ExponentVector::max_l() const {
  if (empty()) fail("EmptySupport", "max_l of the empty monomial");
  std::int64_t m = INT64_MIN;
  for (const auto& [k, e] : y_) m = std::max(m, k.l);
  for (const auto& [k, e] : v_) m = std::max(m, k.l);
  return m;
}

bool ExponentVector::lex_less(const ExponentVector& o) const {
  if (y_ != o.y_) return y_ < o.y_;
  return v_ < o.v_;
}

std::string ExponentVector::to_string(bool one_based) const {
  if (empty()) return "1";
  std::ostringstream out;
  bool first = true;
  int off = one_based ? 1 : 0;
  for (const auto& [k, e] : y_) {
    if (!first) out << "*";
    first = false;
    out << "Y[" << (k.i + off) << "," << k.l << "]";
    if (e != 1) out << "^" << e;
  }
  for (const auto& [k, e] : v_) {
    if (!first) out << "*";
    first = false;
    out << "A[" << (k.i + off) << "," << k.l << "]^" << -e;
  }
  return out.str();
}

std::string y_monomial_to_string(const YMonomial& m) {
  if (m.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, e] : m) {
    if (!first) out << "*";
    first = false;
    out << "Y[" << (k.i + 1) << "," << k.l << "]";
    if (e != 1) out << "^" << e;
  }
  return out.str();
}

std::string y_laurent_to_string(const YLaurent& p) {
  if (p.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p) {
    if (first) {
      if (c < 0) out << "- ";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (mag != 1 || m.empty()) {
      out << mag.str();
      if (!m.empty()) out << "*";
    }
    if (!m.empty()) out << y_monomial_to_string(m);
  }
  return out.str();
}

// ---------------------------------------------------------------- context

AlgebraContext AlgebraContext::make(CartanData cd, int s, BicharMode mode, bool t_one) {
  if (s < 0) fail("ContextMismatch", "s must be >= 0");
  AlgebraContext ctx;
  ctx.cd_ = std::move(cd);
  ctx.s_ = s;
  ctx.mode_ = mode;
  ctx.t_one_ = t_one;

  const auto& flags = ctx.cd_.flags();
  if (mode == BicharMode::Standard && !flags.bz_symmetric)
    fail("ModeUnsupported",
         "standard mode needs B(z) symmetric; try the primed bicharacters");
  if (mode == BicharMode::Primed && !flags.b_symmetric)
    fail("ModeUnsupported", "primed mode needs B = diag(r)C symmetric");

  const int n = ctx.cd_.n();
  auto zc = z_matrix(ctx.cd_, mode == BicharMode::Standard ? ZKind::Cz : ZKind::CPrimez);
  ctx.stencil_.assign(static_cast<std::size_t>(n), {});
  for (int i = 0; i < n; ++i) {
    ctx.stencil_[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      for (const auto& [e, a] :
           zc.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].terms())
        ctx.stencil_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].emplace_back(
            e, static_cast<std::int64_t>(a));
  }

  int max_r = 0, max_c = 1;
  for (int i = 0; i < n; ++i) {
    max_r = std::max(max_r, ctx.cd_.r(i));
    for (int j = 0; j < n; ++j)
      if (i != j) max_c = std::max(max_c, -ctx.cd_.c(i, j));
  }
  ctx.radius_ = 2 * static_cast<std::int64_t>(max_r) * max_c + max_c + 1;

  if (s >= 1)
    ctx.generic_ =
        std::make_shared<AlgebraContext>(AlgebraContext::make(ctx.cd_, 0, mode, t_one));
  return ctx;
}

ExponentVector AlgebraContext::reduce(const ExponentVector& e) const {
  if (s_ == 0) return e;
  ExponentVector out;
  for (const auto& [k, x] : e.y_entries()) out.add_y(k.i, reduce(k.l), x);
  for (const auto& [k, x] : e.v_entries()) out.add_v(k.i, reduce(k.l), x);
  return out;
}

void AlgebraContext::require_root_of_unity() const {
  if (s_ == 0) fail("GenericContext", "operation needs s >= 1");
}

void AlgebraContext::require_generic() const {
  if (s_ != 0) fail("PeriodicContext", "operation needs the generic context s = 0");
}

void AlgebraContext::require_large_s() const {
  require_root_of_unity();
  if (s_ <= 2 * cd_.rvee())
    fail("SmallS", "root-of-unity operations need s > 2 r^vee (r^vee = " +
                       std::to_string(cd_.rvee()) + ")");
}

// --------------------------------------------------------------- characters

int u_character(const AlgebraContext& ctx, const ExponentVector& e, int i, std::int64_t l) {
  std::int64_t u = e.y(i, l);
  for (int j = 0; j < ctx.n(); ++j)
    for (const auto& [c, a] : ctx.stencil(i, j)) u -= a * e.v(j, ctx.reduce(l + c));
  return static_cast<int>(u);
}

std::map<GenIndex, int> u_all(const AlgebraContext& ctx, const ExponentVector& e) {
  std::map<GenIndex, int> u;
  for (const auto& [k, x] : e.y_entries()) u[k] += x;
  for (const auto& [k, x] : e.v_entries())
    for (int i = 0; i < ctx.n(); ++i)
      for (const auto& [c, a] : ctx.stencil(i, k.i))
        // v_{j,l+c} appears in u_{i,l}: an entry at k.l feeds l = k.l - c
        u[{i, ctx.reduce(k.l - c)}] -= static_cast<int>(a) * x;
  std::erase_if(u, [](const auto& kv) { return kv.second == 0; });
  return u;
}

std::int64_t d1(const AlgebraContext& ctx, const ExponentVector& e1,
                const ExponentVector& e2) {
  // sum v_{i,l+r_i}(e1) u_{i,l}(e2) + y_{i,l+r_i}(e1) v_{i,l}(e2)
  std::int64_t acc = 0;
  for (const auto& [k, x] : e1.v_entries())
    acc += static_cast<std::int64_t>(x) *
           u_character(ctx, e2, k.i, ctx.reduce(k.l - ctx.r(k.i)));
  for (const auto& [k, x] : e1.y_entries())
    acc += static_cast<std::int64_t>(x) * e2.v(k.i, ctx.reduce(k.l - ctx.r(k.i)));
  return acc;
}

std::int64_t d2(const AlgebraContext& ctx, const ExponentVector& e1,
                const ExponentVector& e2) {
  // sum u_{i,l+r_i}(e1) v_{i,l}(e2) + v_{i,l+r_i}(e1) y_{i,l}(e2)
  std::int64_t acc = 0;
  for (const auto& [k, x] : e2.v_entries())
    acc += static_cast<std::int64_t>(x) *
           u_character(ctx, e1, k.i, ctx.reduce(k.l + ctx.r(k.i)));
  for (const auto& [k, x] : e2.y_entries())
    acc += static_cast<std::int64_t>(x) * e1.v(k.i, ctx.reduce(k.l + ctx.r(k.i)));
  return acc;
}

bool i_dominant(const AlgebraContext& ctx, const ExponentVector& e, int i) {
  for (const auto& [k, u] : u_all(ctx, e))
    if (k.i == i && u < 0) return false;
  return true;
}

bool dominant(const AlgebraContext& ctx, const ExponentVector& e) {
  for (const auto& [k, u] : u_all(ctx, e))
    if (u < 0) return false;
  return true;
}

bool i_antidominant(const AlgebraContext& ctx, const ExponentVector& e, int i) {
  for (const auto& [k, u] : u_all(ctx, e))
    if (k.i == i && u > 0) return false;
  return true;
}

bool antidominant(const AlgebraContext& ctx, const ExponentVector& e) {
  for (const auto& [k, u] : u_all(ctx, e))
    if (u > 0) return false;
  return true;
}

std::int64_t alpha_invariant(const AlgebraContext& ctx, const ExponentVector& e) {
  return d1(ctx, e, e);
}

std::int64_t gamma_arrow(const AlgebraContext& ctx, const ExponentVector& e) {
  // gamma = sum_l ( sum_i v_{i,l}^2 - sum_{i,j: C_{i,j}+r_i=-1} v_{i,l} v_{j,l}
  //                 - sum_{i,j: C_{i,j}=-3, r_i=1} v_{i,l}(v_{j,l+1}+v_{j,l-1}) )
  std::int64_t g = 0;
  const auto& cd = ctx.cartan();
  for (const auto& [k, x] : e.v_entries()) {
    g += static_cast<std::int64_t>(x) * x;
    for (int j = 0; j < ctx.n(); ++j) {
      if (j == k.i) continue;
      if (cd.c(k.i, j) + cd.r(k.i) == -1)
        g -= static_cast<std::int64_t>(x) * e.v(j, k.l);
      if (cd.c(k.i, j) == -3 && cd.r(k.i) == 1)
        g -= static_cast<std::int64_t>(x) *
             (e.v(j, ctx.reduce(k.l + 1)) + e.v(j, ctx.reduce(k.l - 1)));
    }
  }
  return g;
}

// ---------------------------------------------------------------- elements

AlgebraElement AlgebraElement::monomial(ExponentVector e, IntLaurent c) {
  AlgebraElement out;
  out.add_term(e, c);
  return out;
}

IntLaurent AlgebraElement::coeff(const ExponentVector& e) const {
  auto it = t_.find(e);
  return it == t_.end() ? IntLaurent::zero() : it->second;
}

std::int64_t AlgebraElement::max_term_degree() const {
  return t_.empty() ? 0 : t_.rbegin()->first.degree();
}

void AlgebraElement::add_term(const ExponentVector& e, const IntLaurent& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = t_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  r += o;
  return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
  AlgebraElement r = *this;
  r -= o;
  return r;
}

AlgebraElement AlgebraElement::operator*(const IntLaurent& c) const {
  AlgebraElement r;
  if (c.is_zero()) return r;
  for (const auto& [e, x] : t_) r.t_.emplace(e, x * c);
  return r;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r;
  for (const auto& [e, x] : t_) r.t_.emplace(e, -x);
  return r;
}

AlgebraElement AlgebraElement::truncated(std::int64_t max_degree) const {
  if (max_degree < 0) return *this;
  AlgebraElement r;
  for (const auto& [e, x] : t_) {
    if (e.degree() > max_degree) break; // map iterates degree-ascending
    r.t_.emplace(e, x);
  }
  return r;
}

std::string AlgebraElement::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : t_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.to_string() << ")*" << e.to_string();
  }
  return out.str();
}

AlgebraElement multiply(const AlgebraContext& ctx, const AlgebraElement& a,
                        const AlgebraElement& b, std::int64_t max_degree) {
  AlgebraElement out;
  for (const auto& [e1, c1] : a.terms()) {
    std::int64_t deg1 = e1.degree();
    for (const auto& [e2, c2] : b.terms()) {
      if (max_degree >= 0 && deg1 + e2.degree() > max_degree) break;
      IntLaurent c = c1 * c2;
      if (!ctx.t_one()) c = c.shifted(d1(ctx, e1, e2) + d2(ctx, e1, e2));
      out.add_term(e1 + e2, ctx.norm(std::move(c)));
    }
  }
  return out;
}

AlgebraElement bar(const AlgebraContext& ctx, const AlgebraElement& a) {
  AlgebraElement out;
  for (const auto& [e, c] : a.terms()) {
    IntLaurent cc = c.bar();
    if (!ctx.t_one()) cc = cc.shifted(2 * d1(ctx, e, e));
    out.add_term(e, ctx.norm(std::move(cc)));
  }
  return out;
}

AlgebraElement invert_monomial(const AlgebraContext& ctx, const AlgebraElement& a) {
  if (a.size() != 1) fail("NotInvertible", "only one-term elements are invertible");
  const auto& [e, c] = *a.terms().begin();
  if (c.terms().size() != 1)
    fail("NotInvertible", "coefficient is not a unit of Z[t^+-]");
  const auto& [exp, num] = *c.terms().begin();
  if (!(num == 1 || num == -1)) fail("NotInvertible", "coefficient is not a unit");
  IntLaurent cinv(-exp, num); // (a t^k)^{-1} = a t^{-k} for a = +-1
  if (!ctx.t_one()) cinv = cinv.shifted(d1(ctx, e, e) + d2(ctx, e, e));
  return AlgebraElement::monomial(-e, ctx.norm(std::move(cinv)));
}

AlgebraElement gen_y(const AlgebraContext& ctx, int i, std::int64_t l, int power) {
  return AlgebraElement::monomial(ExponentVector::y_gen(i, ctx.reduce(l), power),
                                  IntLaurent::one());
}

AlgebraElement gen_a_inv(const AlgebraContext& ctx, int i, std::int64_t l, int power) {
  // A~_{i,l}^{-1} = t^{-1} b(e_A); higher powers by repeated multiplication
  AlgebraElement one_pow = AlgebraElement::monomial(
      ExponentVector::a_gen(i, ctx.reduce(l), 1), ctx.tpow(-1));
  AlgebraElement out = AlgebraElement::one();
  for (int k = 0; k < power; ++k) out = multiply(ctx, out, one_pow);
  return out;
}

// ----------------------------------------------------------------- parsing

namespace {

struct Token {
  char kind; // 't', 'Y', 'A', 'X'
  int i = 0;
  std::int64_t l = 0;
  std::int64_t pow = 1;
};

std::vector<Token> tokenize(int rank, const std::string& word) {
  std::vector<Token> out;
  std::size_t p = 0;
  auto skip = [&] {
    while (p < word.size() &&
           (std::isspace(static_cast<unsigned char>(word[p])) || word[p] == '*'))
      ++p;
  };
  auto read_int = [&]() -> std::int64_t {
    std::size_t q = p;
    if (q < word.size() && (word[q] == '-' || word[q] == '+')) ++q;
    std::size_t d = q;
    while (q < word.size() && std::isdigit(static_cast<unsigned char>(word[q]))) ++q;
    if (q == d) fail("ParseError", "expected integer at position " + std::to_string(p));
    std::int64_t v = std::stoll(word.substr(p, q - p));
    p = q;
    return v;
  };
  skip();
  while (p < word.size()) {
    char c = word[p];
    Token tok{};
    if (c == 't') {
      ++p;
      if (p >= word.size() || word[p] != '^')
        fail("ParseError", "t must carry an explicit power: t^<int>");
      ++p;
      tok.kind = 't';
      tok.pow = read_int();
    } else if (c == 'Y' || c == 'A' || c == 'X') {
      ++p;
      if (p >= word.size() || word[p] != '[') fail("ParseError", "expected '['");
      ++p;
      std::int64_t first = read_int();
      if (p < word.size() && word[p] == ',') {
        ++p;
        std::int64_t second = read_int();
        tok.i = static_cast<int>(first) - 1;
        tok.l = second;
      } else if (rank == 1) {
        tok.i = 0;
        tok.l = first;
      } else {
        fail("ParseError", "generator needs both indices when the rank is > 1");
      }
      if (p >= word.size() || word[p] != ']') fail("ParseError", "expected ']'");
      ++p;
      tok.kind = c;
      if (p < word.size() && word[p] == '^') {
        ++p;
        tok.pow = read_int();
      }
      if (tok.i < 0 || tok.i >= rank)
        fail("ParseError", "node index out of range in \"" + word + "\"");
    } else {
      fail("ParseError", std::string("unexpected character '") + c + "'");
    }
    out.push_back(tok);
    skip();
  }
  return out;
}

} // namespace

AlgebraElement word_to_element(const AlgebraContext& ctx, const std::string& word) {
  AlgebraElement acc = AlgebraElement::one();
  for (const Token& tok : tokenize(ctx.n(), word)) {
    switch (tok.kind) {
    case 't':
      acc = acc * ctx.tpow(tok.pow);
      break;
    case 'Y':
      acc = multiply(ctx, acc, gen_y(ctx, tok.i, tok.l, static_cast<int>(tok.pow)));
      break;
    case 'A':
      if (tok.pow >= 0)
        fail("ParseError", "A-generators enter only inverted: A[i,l]^-1");
      acc = multiply(ctx, acc, gen_a_inv(ctx, tok.i, tok.l, static_cast<int>(-tok.pow)));
      break;
    default:
      fail("ParseError", "X-variables belong to Rep expressions, not monomials");
    }
  }
  return acc;
}

// -------------------------------------------------------- shifts and tau

ExponentVector shift(const ExponentVector& e, std::int64_t k) {
  // y_{i,l}(out) = y_{i,l+k}(e): the support translates by -k
  ExponentVector out;
  for (const auto& [g, x] : e.y_entries()) out.add_y(g.i, g.l - k, x);
  for (const auto& [g, x] : e.v_entries()) out.add_v(g.i, g.l - k, x);
  return out;
}

ExponentVector shift(const AlgebraContext& ctx, const ExponentVector& e,
                     std::int64_t k) {
  if (ctx.periodic())
    fail("ShiftInPeriodicContext", "index shifts need the generic context");
  return shift(e, k);
}

ExponentVector fold_ps(const AlgebraContext& ctx, const ExponentVector& e) {
  ctx.require_root_of_unity();
  return ctx.reduce(e);
}

namespace {

// Window of shift multiples r for which e2[rs] can interact with e1.
std::pair<std::int64_t, std::int64_t> shift_window(const AlgebraContext& ctx,
                                                   const ExponentVector& e1,
                                                   const ExponentVector& e2) {
  if (e1.empty() || e2.empty()) return {0, -1};
  std::int64_t s = ctx.s();
  std::int64_t rho = ctx.interaction_radius();
  std::int64_t klo = e2.min_l() - e1.max_l() - rho;
  std::int64_t khi = e2.max_l() - e1.min_l() + rho;
  auto floor_div = [](std::int64_t a, std::int64_t b) {
    return a >= 0 ? a / b : -((-a + b - 1) / b);
  };
  auto ceil_div = [](std::int64_t a, std::int64_t b) {
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
  };
  return {ceil_div(klo, s), floor_div(khi, s)};
}

} // namespace

std::int64_t big_d1(const AlgebraContext& ctx, const ExponentVector& e1,
                    const ExponentVector& e2) {
  ctx.require_root_of_unity();
  const AlgebraContext& gen = ctx.generic();
  auto [rlo, rhi] = shift_window(ctx, e1, e2);
  std::int64_t acc = 0;
  for (std::int64_t r = rlo; r <= rhi; ++r) acc += d1(gen, e1, shift(e2, r * ctx.s()));
  return acc;
}

std::int64_t big_d2(const AlgebraContext& ctx, const ExponentVector& e1,
                    const ExponentVector& e2) {
  ctx.require_root_of_unity();
  const AlgebraContext& gen = ctx.generic();
  auto [rlo, rhi] = shift_window(ctx, e1, e2);
  std::int64_t acc = 0;
  for (std::int64_t r = rlo; r <= rhi; ++r) acc += d2(gen, e1, shift(e2, r * ctx.s()));
  return acc;
}

std::int64_t d1_minus(const AlgebraContext& ctx, const ExponentVector& e) {
  ctx.require_root_of_unity();
  const AlgebraContext& gen = ctx.generic();
  auto [rlo, rhi] = shift_window(ctx, e, e);
  std::int64_t acc = 0;
  for (std::int64_t k = std::min<std::int64_t>(rlo, -1); k <= -1; ++k)
    acc += d1(gen, e, shift(e, k * ctx.s()));
  return acc;
}

std::int64_t d2_minus(const AlgebraContext& ctx, const ExponentVector& e) {
  ctx.require_root_of_unity();
  const AlgebraContext& gen = ctx.generic();
  auto [rlo, rhi] = shift_window(ctx, e, e);
  std::int64_t acc = 0;
  for (std::int64_t k = std::min<std::int64_t>(rlo, -1); k <= -1; ++k)
    acc += d2(gen, e, shift(e, k * ctx.s()));
  return acc;
}

AlgebraElement tau_st(const AlgebraContext& ctx, const AlgebraElement& a) {
  ctx.require_large_s();
  AlgebraElement out;
  for (const auto& [e, c] : a.terms()) {
    IntLaurent cc = c;
    if (!ctx.t_one()) cc = cc.shifted(d1_minus(ctx, e) + d2_minus(ctx, e));
    out.add_term(fold_ps(ctx, e), ctx.norm(std::move(cc)));
  }
  return out;
}

namespace {

// pi_l(e) as an element of the generic algebra: Y-part then A-part of the
// level-l slice (generators at equal l commute).
AlgebraElement slice_element(const AlgebraContext& gen, const ExponentVector& e,
                             std::int64_t l) {
  AlgebraElement acc = AlgebraElement::one();
  for (const auto& [g, x] : e.y_entries())
    if (g.l == l) acc = multiply(gen, acc, gen_y(gen, g.i, g.l, x));
  for (const auto& [g, x] : e.v_entries())
    if (g.l == l) acc = multiply(gen, acc, gen_a_inv(gen, g.i, g.l, x));
  return acc;
}

// The folded slice in the periodic algebra, A-part first, matching the
// defining formula of tau (the two parts commute when s > 2 r^vee).
AlgebraElement slice_element_folded(const AlgebraContext& ctx, const ExponentVector& e,
                                    std::int64_t l) {
  AlgebraElement acc = AlgebraElement::one();
  for (const auto& [g, x] : e.v_entries())
    if (g.l == l) acc = multiply(ctx, acc, gen_a_inv(ctx, g.i, ctx.reduce(g.l), x));
  for (const auto& [g, x] : e.y_entries())
    if (g.l == l) acc = multiply(ctx, acc, gen_y(ctx, g.i, ctx.reduce(g.l), x));
  return acc;
}

std::vector<std::int64_t> support_levels(const ExponentVector& e) {
  std::vector<std::int64_t> ls;
  for (const auto& [g, x] : e.y_entries()) ls.push_back(g.l);
  for (const auto& [g, x] : e.v_entries()) ls.push_back(g.l);
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  return ls;
}

} // namespace

AlgebraElement tau_st_ordered(const AlgebraContext& ctx, const AlgebraElement& a) {
  ctx.require_large_s();
  const AlgebraContext& gen = ctx.generic();
  AlgebraElement out;
  for (const auto& [e, c] : a.terms()) {
    auto levels = support_levels(e);
    // <-prod of slices = t^phi b(e); recover phi, then map each slice.
    AlgebraElement prod = AlgebraElement::one();
    AlgebraElement img = AlgebraElement::one();
    for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
      prod = multiply(gen, prod, slice_element(gen, e, *it));
      img = multiply(ctx, img, slice_element_folded(ctx, e, *it));
    }
    if (ctx.t_one()) {
      out += img * ctx.norm(c);
      continue;
    }
    if (prod.size() != 1) fail("Internal", "slice product is not a monomial");
    const auto& [pe, pc] = *prod.terms().begin();
    if (pe != e || pc.terms().size() != 1 || pc.terms().begin()->second != 1)
      fail("Internal", "slice product did not reassemble the basis monomial");
    std::int64_t phi = pc.terms().begin()->first;
    out += img * c.shifted(-phi);
  }
  return out;
}

// ------------------------------------------------------------------ pi-hat

YMonomial pi_hat_monomial(const AlgebraContext& ctx, const ExponentVector& e) {
  YMonomial m;
  for (const auto& [k, u] : u_all(ctx, e)) m.emplace_back(k, u);
  return m;
}

YLaurent pi_hat(const AlgebraContext& ctx, const AlgebraElement& a) {
  YLaurent out;
  for (const auto& [e, c] : a.terms()) {
    BigInt v = c.eval_one();
    if (v == 0) continue;
    YMonomial m = pi_hat_monomial(ctx, e);
    auto [it, fresh] = out.emplace(std::move(m), v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

} // namespace qtchar
