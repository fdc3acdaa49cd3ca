// Test-only classical (t = 1) machinery, independent of the deformed path:
// commutative Y-monomials, the classical screening module, and the classical
// monomial-completion algorithm.  Used as the oracle against pi-hat shadows.
#ifndef QTCHAR_TESTS_CLASSICAL_ORACLE_HPP
#define QTCHAR_TESTS_CLASSICAL_ORACLE_HPP

#include "qtchar/cartan.hpp"
#include "qtchar/yalgebra.hpp"

#include <map>
#include <set>
#include <vector>

namespace qtchar::oracle {

// Y-monomial as a sparse exponent map, independent of ExponentVector.
using YExp = std::map<std::pair<int, std::int64_t>, long>;
using YPoly = std::map<YExp, BigInt>;

inline std::int64_t red(int s, std::int64_t l) {
  return s == 0 ? l : ((l % s) + s) % s;
}

// classical A_{i,l}^{-1} from the u-character convention:
// Y_{i,l-r_i}^{-1} Y_{i,l+r_i}^{-1} prod_{j: C_{j,i}<0} prod_k Y_{j,l+k},
// k = C_{j,i}+1, C_{j,i}+3, ..., -C_{j,i}-1
inline YExp a_inv(const CartanData& cd, int s, int i, std::int64_t l) {
  YExp m;
  auto add = [&](int j, std::int64_t ll, long e) {
    auto key = std::make_pair(j, red(s, ll));
    m[key] += e;
    if (m[key] == 0) m.erase(key);
  };
  add(i, l - cd.r(i), -1);
  add(i, l + cd.r(i), -1);
  for (int j = 0; j < cd.n(); ++j) {
    if (j == i || cd.c(j, i) >= 0) continue;
    for (std::int64_t k = cd.c(j, i) + 1; k <= -cd.c(j, i) - 1; k += 2) add(j, l + k, 1);
  }
  return m;
}

inline YExp mul(const YExp& a, const YExp& b) {
  YExp m = a;
  for (const auto& [k, e] : b) {
    m[k] += e;
    if (m[k] == 0) m.erase(k);
  }
  return m;
}

inline bool i_dom(const YExp& m, int i) {
  for (const auto& [k, u] : m)
    if (k.first == i && u < 0) return false;
  return true;
}

// classical screening module element for fixed i: (monomial, index) -> int
struct ScreenPoly {
  std::map<std::pair<YExp, std::int64_t>, BigInt> terms;

  void add(const YExp& m, std::int64_t l, const BigInt& c) {
    if (c == 0) return;
    auto key = std::make_pair(m, l);
    terms[key] += c;
    if (terms[key] == 0) terms.erase(key);
  }
  bool operator==(const ScreenPoly& o) const { return terms == o.terms; }
};

// S_i(m) = m sum_l u_{i,l}(m) S_{i,l} extended additively
inline ScreenPoly screen(const YPoly& p, int i) {
  ScreenPoly out;
  for (const auto& [m, c] : p)
    for (const auto& [k, u] : m)
      if (k.first == i && u != 0) out.add(m, k.second, c * u);
  return out;
}

// normal form per residue class mod 2 r_i with the classical rewrite
// S_{i,l} = A_{i,l+r_i}^{-1} S_{i,l+2r_i}; optional shared lift targets so
// two elements can be compared on common ground
inline ScreenPoly normal_form(const CartanData& cd, int s, int i, const ScreenPoly& x,
                              const std::map<std::int64_t, std::int64_t>* extra = nullptr) {
  std::int64_t period = 2 * cd.r(i);
  std::map<std::int64_t, std::int64_t> goal;
  auto bump = [&](std::int64_t l) {
    std::int64_t res = ((l % period) + period) % period;
    auto [it, fresh] = goal.emplace(res, l);
    if (!fresh) it->second = std::max(it->second, l);
  };
  for (const auto& [key, c] : x.terms) bump(key.second);
  if (extra)
    for (const auto& [res, l] : *extra) bump(l);
  ScreenPoly out;
  for (const auto& [key, c] : x.terms) {
    YExp m = key.first;
    std::int64_t l = key.second;
    std::int64_t res = ((l % period) + period) % period;
    while (l < goal[res]) {
      m = mul(m, a_inv(cd, s, i, l + cd.r(i)));
      l += period;
    }
    out.add(m, l, c);
  }
  return out;
}

inline std::map<std::int64_t, std::int64_t> lift_targets(const CartanData& cd, int i,
                                                         const ScreenPoly& x) {
  std::int64_t period = 2 * cd.r(i);
  std::map<std::int64_t, std::int64_t> goal;
  for (const auto& [key, c] : x.terms) {
    std::int64_t res = ((key.second % period) + period) % period;
    auto [it, fresh] = goal.emplace(res, key.second);
    if (!fresh) it->second = std::max(it->second, key.second);
  }
  return goal;
}

struct ClassicalResult {
  YPoly character;
  bool complete = false;
  bool inconsistent = false;
};

// classical monomial-completion algorithm (generic s = 0): each
// non-i-dominant monomial's coefficient is forced by membership in the span
// of the E_i(M) = M prod (1 + A_{i,l+r_i}^{-1})^{u_{i,l}(M)}
inline ClassicalResult classical_fm(const CartanData& cd, const YExp& seed,
                                    std::int64_t max_degree) {
  const int n = cd.n();
  struct Node {
    YExp m;
    std::int64_t deg;
    bool operator<(const Node& o) const {
      if (deg != o.deg) return deg < o.deg;
      return m < o.m;
    }
  };

  ClassicalResult res;
  std::set<Node> pending;
  std::map<YExp, std::int64_t> depth;
  std::vector<std::map<YExp, BigInt>> acc(static_cast<std::size_t>(n));
  pending.insert({seed, 0});
  depth[seed] = 0;
  bool clipped = false;

  while (!pending.empty()) {
    Node node = *pending.begin();
    pending.erase(pending.begin());
    const YExp& m = node.m;

    std::vector<BigInt> c(static_cast<std::size_t>(n), BigInt(0));
    for (int i = 0; i < n; ++i) {
      auto it = acc[static_cast<std::size_t>(i)].find(m);
      if (it != acc[static_cast<std::size_t>(i)].end()) c[static_cast<std::size_t>(i)] = it->second;
    }
    std::vector<int> nondom;
    for (int i = 0; i < n; ++i)
      if (!i_dom(m, i)) nondom.push_back(i);

    BigInt val = 0;
    if (m == seed) {
      val = 1;
    } else if (!nondom.empty()) {
      val = c[static_cast<std::size_t>(nondom.front())];
      for (std::size_t k = 1; k < nondom.size(); ++k)
        if (c[static_cast<std::size_t>(nondom[k])] != val) {
          res.inconsistent = true;
          return res;
        }
    }
    if (val != 0) res.character[m] = val;

    for (int i = 0; i < n; ++i) {
      if (std::find(nondom.begin(), nondom.end(), i) != nondom.end()) continue;
      BigInt delta = val - c[static_cast<std::size_t>(i)];
      if (delta == 0) continue;
      // expand E_i(m) with explicit A-depth per term
      std::vector<std::pair<std::pair<YExp, std::int64_t>, BigInt>> expl{
          {{m, node.deg}, 1}};
      for (const auto& [k, u] : m) {
        if (k.first != i || u <= 0) continue;
        YExp a = a_inv(cd, 0, i, k.second + cd.r(i));
        for (long rep = 0; rep < u; ++rep) {
          std::map<std::pair<YExp, std::int64_t>, BigInt> merged;
          for (const auto& [mmd, cc] : expl) {
            merged[mmd] += cc;
            merged[{mul(mmd.first, a), mmd.second + 1}] += cc;
          }
          expl.assign(merged.begin(), merged.end());
        }
      }
      for (const auto& [mmd, cc] : expl) {
        if (mmd.second > max_degree) {
          clipped = true;
          continue;
        }
        auto& slot = acc[static_cast<std::size_t>(i)][mmd.first];
        slot += cc * delta;
        if (slot == 0) acc[static_cast<std::size_t>(i)].erase(mmd.first);
        if (depth.emplace(mmd.first, mmd.second).second)
          pending.insert({mmd.first, mmd.second});
      }
    }
  }
  res.complete = !clipped;
  return res;
}

// bridge: YLaurent (pi-hat output) -> oracle YPoly
inline YPoly from_ylaurent(const YLaurent& p) {
  YPoly out;
  for (const auto& [m, c] : p) {
    YExp e;
    for (const auto& [k, x] : m) e[{k.i, k.l}] = x;
    out[e] = c;
  }
  return out;
}

} // namespace qtchar::oracle

#endif
