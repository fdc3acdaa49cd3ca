#include "qtchar/screening.hpp"

#include "qtchar/errors.hpp"

#include <sstream>

namespace qtchar {

void ScreeningElement::add_term(const ExponentVector& e, std::int64_t l,
                                const IntLaurent& c) {
  if (c.is_zero()) return;
  Key k{e, l};
  auto [it, fresh] = t_.emplace(std::move(k), c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

ScreeningElement& ScreeningElement::operator+=(const ScreeningElement& o) {
  for (const auto& [k, c] : o.t_) add_term(k.e, k.l, c);
  return *this;
}

ScreeningElement& ScreeningElement::operator-=(const ScreeningElement& o) {
  for (const auto& [k, c] : o.t_) add_term(k.e, k.l, -c);
  return *this;
}

std::string ScreeningElement::to_string() const {
  if (t_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : t_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.to_string() << ")*" << k.e.to_string() << "*S[" << (i_ + 1) << ","
        << k.l << "]";
  }
  return out.str();
}

std::pair<AlgebraElement, std::int64_t> screening_rewrite_once(
    const AlgebraContext& ctx, int i, const AlgebraElement& mono, std::int64_t l) {
  // S~_{i,l-r_i} = t_{-z^{-2r_i}-1} A~_{i,l}^{-1} S~_{i,l+r_i}; the central
  // charge collapses to t^{-2} when s | 2r_i and t^{-1} otherwise.
  std::int64_t r = ctx.r(i);
  int c = (ctx.s() >= 1 && (2 * r) % ctx.s() == 0) ? -2 : -1;
  AlgebraElement rep = multiply(ctx, mono, gen_a_inv(ctx, i, l + r)) * ctx.tpow(c);
  return {rep, ctx.reduce(l + 2 * r)};
}

AlgebraElement e_it(const AlgebraContext& ctx, const ExponentVector& e, int i) {
  if (!i_dominant(ctx, e, i))
    fail("NotIDominant", "E-bar_{i,t} needs an i-dominant monomial");
  auto u = u_all(ctx, e);

  // prefactor b(e) * (prod_l Y~_{i,l}^{u_{i,l}})^{-1}
  ExponentVector yu;
  for (const auto& [k, x] : u)
    if (k.i == i) yu.add_y(i, k.l, x);
  AlgebraElement acc = multiply(
      ctx, AlgebraElement::monomial(e, IntLaurent::one()),
      AlgebraElement::monomial(-yu, IntLaurent::one())); // pure-Y inverse is exact

  // <-prod over descending l of (Y~_{i,l} (1 + t A~_{i,l+r_i}^{-1}))^{u_{i,l}}
  std::vector<std::pair<std::int64_t, int>> factors;
  if (ctx.periodic()) {
    for (std::int64_t l = ctx.s() - 1; l >= 0; --l) {
      auto it = u.find({i, l});
      if (it != u.end() && it->second > 0) factors.emplace_back(l, it->second);
    }
  } else {
    for (auto it = u.rbegin(); it != u.rend(); ++it)
      if (it->first.i == i && it->second > 0) factors.emplace_back(it->first.l, it->second);
    std::sort(factors.begin(), factors.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
  }
  for (const auto& [l, pw] : factors) {
    AlgebraElement binom =
        multiply(ctx, gen_y(ctx, i, l),
                 AlgebraElement::one() + gen_a_inv(ctx, i, l + ctx.r(i)) * ctx.tpow(1));
    for (int k = 0; k < pw; ++k) acc = multiply(ctx, acc, binom);
  }
  return acc;
}

ScreeningElement apply_screening(const AlgebraContext& ctx, const AlgebraElement& a,
                                 int i) {
  if (ctx.periodic())
    fail("PeriodicTorsion",
         "the s >= 1 bimodule has torsion; kernel membership goes through "
         "kernel_decompose");
  ScreeningElement raw(i);
  for (const auto& [e, c] : a.terms()) {
    for (const auto& [k, u] : u_all(ctx, e)) {
      if (k.i != i || u == 0) continue;
      // (t^{2u} - 1)/(t^2 - 1) = t^{u-1}[u]_t as an exact Laurent polynomial
      IntLaurent q;
      if (u > 0)
        for (int j = 0; j < u; ++j) q.add_term(2 * j, 1);
      else
        for (int j = u; j < 0; ++j) q.add_term(2 * j, -1);
      raw.add_term(e, k.l, ctx.norm(c * q));
    }
  }
  // normal form: within each residue class mod 2 r_i rewrite every index
  // up to the maximal representative present (each step raises deg)
  std::int64_t period = 2 * ctx.r(i);
  std::map<std::int64_t, std::int64_t> target; // residue -> max index
  for (const auto& [k, c] : raw.terms()) {
    std::int64_t res = ((k.l % period) + period) % period;
    auto [it, fresh] = target.emplace(res, k.l);
    if (!fresh) it->second = std::max(it->second, k.l);
  }
  ScreeningElement out(i);
  for (const auto& [k, c] : raw.terms()) {
    std::int64_t res = ((k.l % period) + period) % period;
    std::int64_t goal = target[res];
    AlgebraElement mono = AlgebraElement::monomial(k.e, c);
    std::int64_t l = k.l;
    while (l < goal) {
      auto [next, nl] = screening_rewrite_once(ctx, i, mono, l);
      mono = next;
      l = nl;
    }
    for (const auto& [e2, c2] : mono.terms()) out.add_term(e2, l, c2);
  }
  return out;
}

KernelDecomposition kernel_decompose(const AlgebraContext& ctx, const AlgebraElement& a,
                                     int i, std::int64_t max_degree) {
  KernelDecomposition out;
  AlgebraElement residual = max_degree >= 0 ? a.truncated(max_degree) : a;
  while (!residual.is_zero()) {
    const auto& [lead, c] = *residual.terms().begin();
    if (!i_dominant(ctx, lead, i)) {
      out.in_kernel = false;
      out.witness = lead;
      return out;
    }
    out.coeffs[lead] += c;
    AlgebraElement eb = e_it(ctx, lead, i) * c;
    if (max_degree >= 0) eb = eb.truncated(max_degree);
    residual -= eb;
  }
  out.in_kernel = true;
  return out;
}

} // namespace qtchar
