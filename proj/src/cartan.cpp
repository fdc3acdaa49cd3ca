#include "qtchar/cartan.hpp"

#include "qtchar/errors.hpp"

#include "qtchar/rational.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace qtchar {

namespace {

using Rat = Rational;

void check_shape(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) fail("NotCartan", "empty matrix");
  for (const auto& row : m)
    if (row.size() != n) fail("NotCartan", "matrix is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i] != 2) fail("NotCartan", "diagonal entry != 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (m[i][j] > 0) fail("NotCartan", "positive off-diagonal entry");
      if ((m[i][j] == 0) != (m[j][i] == 0))
        fail("NotCartan", "zero pattern is not symmetric");
    }
  }
}

std::vector<int> components(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> comp(n, -1);
  int next = 0;
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    comp[start] = next;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      for (int j = 0; j < n; ++j)
        if (m[i][j] != 0 && comp[j] < 0) {
          comp[j] = comp[i];
          q.push(j);
        }
    }
    ++next;
  }
  return comp;
}

// Propagates r_i C_{i,j} = r_j C_{j,i} along the nonzero-entry graph with
// rational accumulation, clears denominators per component, divides by gcd.
std::optional<std::vector<int>> find_symmetrizer(const IntMatrix& m,
                                                 const std::vector<int>& comp) {
  const int n = static_cast<int>(m.size());
  std::vector<Rat> rr(n, Rat());
  for (int start = 0; start < n; ++start) {
    if (!rr[start].is_zero()) continue;
    rr[start] = Rat(1);
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      for (int j = 0; j < n; ++j) {
        if (i == j || m[i][j] == 0) continue;
        Rat want = rr[i] * Rat(m[i][j], m[j][i]); // r_j = r_i C_{i,j}/C_{j,i}
        if (rr[j].is_zero()) {
          rr[j] = want;
          q.push(j);
        } else if (rr[j] != want) {
          return std::nullopt; // inconsistent cycle: no symmetrizer
        }
      }
    }
  }
  // clear denominators and normalize gcd per component
  std::vector<int> r(n, 1);
  int ncomp = 1 + *std::max_element(comp.begin(), comp.end());
  for (int c = 0; c < ncomp; ++c) {
    BigInt lcm = 1;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) lcm = boost::multiprecision::lcm(lcm, rr[i].den());
    BigInt g = 0;
    std::vector<std::pair<int, BigInt>> vals;
    for (int i = 0; i < n; ++i)
      if (comp[i] == c) {
        BigInt v = rr[i].num() * (lcm / rr[i].den());
        vals.emplace_back(i, v);
        g = boost::multiprecision::gcd(g, v < 0 ? BigInt(-v) : v);
      }
    for (auto& [i, v] : vals) {
      BigInt ri = v / g;
      if (ri <= 0 || ri > 1000000) return std::nullopt;
      r[i] = static_cast<int>(ri);
    }
  }
  // final check
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (BigInt(r[i]) * m[i][j] != BigInt(r[j]) * m[j][i]) return std::nullopt;
  return r;
}

bool is_symmetrizing(const IntMatrix& m, const std::vector<int>& r) {
  const int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (BigInt(r[i]) * m[i][j] != BigInt(r[j]) * m[j][i]) return false;
  return true;
}

// All principal minors positive (exact rational Gaussian elimination on
// leading principal submatrices).
bool all_principal_minors_positive(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  // n stays small here, so every principal minor is tested directly.
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) idx.push_back(i);
    const int k = static_cast<int>(idx.size());
    std::vector<std::vector<Rat>> a(k, std::vector<Rat>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) a[i][j] = Rat(m[idx[i]][idx[j]]);
    Rat det(1);
    for (int col = 0; col < k; ++col) {
      int piv = -1;
      for (int row = col; row < k; ++row)
        if (!a[row][col].is_zero()) {
          piv = row;
          break;
        }
      if (piv < 0) {
        det = Rat();
        break;
      }
      if (piv != col) {
        std::swap(a[piv], a[col]);
        det = -det;
      }
      det *= a[col][col];
      for (int row = col + 1; row < k; ++row) {
        Rat f = a[row][col] / a[col][col];
        for (int j2 = col; j2 < k; ++j2) a[row][j2] -= f * a[col][j2];
      }
    }
    if (det <= Rat()) return false;
  }
  return true;
}

IntLaurent z_entry_c(const CartanData& cd, int i, int j) {
  if (i == j) {
    IntLaurent p;
    p.add_term(cd.r(i), 1);
    p.add_term(-cd.r(i), 1);
    return p;
  }
  return quantum_integer(cd.c(i, j));
}

IntLaurent z_entry_cprime(const CartanData& cd, int i, int j) {
  // [C_{i,j}]_{z_i}: substitute z -> z^{r_i} into the quantum integer
  IntLaurent base = (i == j) ? quantum_integer(2) : quantum_integer(cd.c(i, j));
  IntLaurent out;
  for (const auto& [e, a] : base.terms()) out.add_term(e * cd.r(i), a);
  return out;
}

bool zmatrix_symmetric(const ZPolyMatrix& zm) {
  const int n = static_cast<int>(zm.entries.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (zm.entries[i][j] != zm.entries[j][i]) return false;
  return true;
}

IntLaurent determinant(const std::vector<std::vector<IntLaurent>>& a) {
  // cofactor expansion; n <= ~8 in practice
  const int n = static_cast<int>(a.size());
  if (n == 1) return a[0][0];
  IntLaurent det;
  for (int j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<IntLaurent>> minor(n - 1);
    for (int r = 1; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (c != j) minor[r - 1].push_back(a[r][c]);
    IntLaurent term = a[0][j] * determinant(minor);
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

} // namespace

struct CartanBuilder {
  static CartanData build(const IntMatrix& matrix, const CartanOptions& opts) {
    check_shape(matrix);
    const int n = static_cast<int>(matrix.size());
    CartanData cd;
    cd.n_ = n;
    cd.c_ = matrix;
    cd.name_ = opts.name;

    auto comp = components(matrix);
    bool indec = *std::max_element(comp.begin(), comp.end()) == 0;
    cd.flags_.indecomposable = indec;
    if (!indec && !opts.allow_decomposable)
      fail("Decomposable",
           "matrix splits into independent blocks; pass allow_decomposable "
           "to process per block");

    cd.flags_.symmetric = true;
    for (int i = 0; i < n && cd.flags_.symmetric; ++i)
      for (int j = 0; j < n; ++j)
        if (matrix[i][j] != matrix[j][i]) {
          cd.flags_.symmetric = false;
          break;
        }

    if (opts.symmetrizer_override) {
      const auto& r = *opts.symmetrizer_override;
      if (static_cast<int>(r.size()) != n)
        fail("OverrideInconsistent", "symmetrizer length != rank");
      for (int ri : r)
        if (ri <= 0) fail("OverrideInconsistent", "symmetrizer entries must be positive");
      if (!is_symmetrizing(matrix, r))
        fail("OverrideInconsistent", "given symmetrizer does not symmetrize C");
      cd.r_ = r;
      cd.flags_.symmetrizable = true;
    } else {
      auto r = find_symmetrizer(matrix, comp);
      if (!r) {
        cd.flags_.symmetrizable = false;
        fail("NotSymmetrizable", "no consistent symmetrizer exists");
      }
      cd.r_ = *r;
      cd.flags_.symmetrizable = true;
    }

    // r^vee = max({1} U {r_i - 1 - C_{i,j} : i != j, C_{i,j} != 0})
    int rv = 1;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && matrix[i][j] != 0)
          rv = std::max(rv, cd.r_[i] - 1 - matrix[i][j]);
    cd.rvee_ = rv;

    cd.flags_.cc_le3 = true;
    for (int i = 0; i < n && cd.flags_.cc_le3; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && matrix[i][j] * matrix[j][i] > 3) {
          cd.flags_.cc_le3 = false;
          break;
        }

    cd.flags_.b_symmetric = true;
    for (int i = 0; i < n && cd.flags_.b_symmetric; ++i)
      for (int j = 0; j < n; ++j)
        if (BigInt(cd.r_[i]) * matrix[i][j] != BigInt(cd.r_[j]) * matrix[j][i]) {
          cd.flags_.b_symmetric = false;
          break;
        }

    cd.flags_.bz_symmetric = zmatrix_symmetric(z_matrix(cd, ZKind::Bz));

    // q-symmetrizable: B symmetric and (i != j => r_i = 1 or C_{i,j} in {-1,0})
    cd.flags_.q_symmetrizable = cd.flags_.b_symmetric;
    for (int i = 0; i < n && cd.flags_.q_symmetrizable; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && !(cd.r_[i] == 1 || matrix[i][j] == -1 || matrix[i][j] == 0)) {
          cd.flags_.q_symmetrizable = false;
          break;
        }

    cd.flags_.det_cz_nonzero = !det_cz(cd).is_zero();
    cd.flags_.finite_type = all_principal_minors_positive(matrix);
    return cd;
  }
};

CartanData validate_cartan(const IntMatrix& matrix, const CartanOptions& opts) {
  return CartanBuilder::build(matrix, opts);
}

ZPolyMatrix z_matrix(const CartanData& cd, ZKind kind) {
  const int n = cd.n();
  ZPolyMatrix zm;
  zm.kind = kind;
  zm.entries.assign(n, std::vector<IntLaurent>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      switch (kind) {
      case ZKind::Cz:
        zm.entries[i][j] = z_entry_c(cd, i, j);
        break;
      case ZKind::CPrimez:
        zm.entries[i][j] = z_entry_cprime(cd, i, j);
        break;
      case ZKind::Bz:
        zm.entries[i][j] = quantum_integer(cd.r(i)) * z_entry_c(cd, i, j);
        break;
      case ZKind::BPrimez:
        zm.entries[i][j] = quantum_integer(cd.r(i)) * z_entry_cprime(cd, i, j);
        break;
      }
    }
  return zm;
}

ZMatrices z_matrices(const CartanData& cd) {
  return {z_matrix(cd, ZKind::Cz), z_matrix(cd, ZKind::Bz),
          z_matrix(cd, ZKind::CPrimez), z_matrix(cd, ZKind::BPrimez)};
}

bool cz_inverse_hypothesis(const CartanData& cd) {
  for (int i = 0; i < cd.n(); ++i)
    for (int j = 0; j < cd.n(); ++j)
      if (i != j && cd.c(i, j) < -1 && -cd.c(j, i) > cd.r(i)) return false;
  return true;
}

IntLaurent det_cz(const CartanData& cd) {
  IntLaurent det = determinant(z_matrix(cd, ZKind::Cz).entries);
  if (cz_inverse_hypothesis(cd) && !det.is_zero()) {
    std::int64_t big_r = 0;
    for (int i = 0; i < cd.n(); ++i) big_r += cd.r(i);
    bool shape_ok = det.max_exp() == big_r && det.min_exp() == -big_r &&
                    det.coeff(big_r) == 1 && det.coeff(-big_r) == 1 &&
                    det == det.bar();
    if (!shape_ok)
      fail("HypothesisViolated",
           "det C(z) does not have the certified z^{-R}..z^{R} shape");
  }
  return det;
}

std::vector<std::int64_t> det_cz_vanishing_s(const CartanData& cd) {
  IntLaurent det = det_cz(cd);
  std::vector<std::int64_t> out;
  if (det.is_zero()) return out; // identically zero: every s kills it
  // d(z) = z^{R} det has nonneg exponents; s kills det iff Phi_s | d.
  std::int64_t shift = -det.min_exp();
  std::vector<BigInt> d(static_cast<std::size_t>(det.max_exp() + shift) + 1, 0);
  for (const auto& [e, a] : det.terms()) d[static_cast<std::size_t>(e + shift)] = a;
  const std::int64_t deg = static_cast<std::int64_t>(d.size()) - 1;

  // polynomial remainder of d by monic p, exact over Z
  auto divides = [&](const std::vector<BigInt>& p) {
    std::vector<BigInt> rem = d;
    std::int64_t dp = static_cast<std::int64_t>(p.size()) - 1;
    for (std::int64_t k = deg; k >= dp; --k) {
      BigInt f = rem[static_cast<std::size_t>(k)];
      if (f == 0) continue;
      for (std::int64_t j = 0; j <= dp; ++j)
        rem[static_cast<std::size_t>(k - dp + j)] -= f * p[static_cast<std::size_t>(j)];
    }
    for (const auto& c : rem)
      if (c != 0) return false;
    return true;
  };

  // cyclotomics by repeated division of z^s - 1
  std::vector<std::vector<BigInt>> cyclo;
  auto poly_div = [](std::vector<BigInt> num, const std::vector<BigInt>& den) {
    std::int64_t dn = static_cast<std::int64_t>(num.size()) - 1;
    std::int64_t dd = static_cast<std::int64_t>(den.size()) - 1;
    std::vector<BigInt> q(static_cast<std::size_t>(dn - dd) + 1, 0);
    for (std::int64_t k = dn; k >= dd; --k) {
      BigInt f = num[static_cast<std::size_t>(k)];
      if (f == 0) continue;
      q[static_cast<std::size_t>(k - dd)] = f;
      for (std::int64_t j = 0; j <= dd; ++j)
        num[static_cast<std::size_t>(k - dd + j)] -= f * den[static_cast<std::size_t>(j)];
    }
    return q;
  };
  // phi(s) <= deg is needed for Phi_s | d; s <= 2*deg^2 + 6 is a safe cutoff
  std::int64_t smax = 2 * deg * deg + 6;
  for (std::int64_t s = 1; s <= smax; ++s) {
    std::vector<BigInt> p(static_cast<std::size_t>(s) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(s)] = 1; // z^s - 1
    for (std::int64_t dvs = 1; dvs < s; ++dvs)
      if (s % dvs == 0) p = poly_div(std::move(p), cyclo[static_cast<std::size_t>(dvs - 1)]);
    cyclo.push_back(p);
    if (static_cast<std::int64_t>(p.size()) - 1 <= deg && divides(p)) out.push_back(s);
  }
  return out;
}

CzInverseSeries::CzInverseSeries(const CartanData& cd, int order) : n_(cd.n()), order_(order) {
  if (order <= 0) fail("OrderInsufficient", "series order must be positive");
  if (!cz_inverse_hypothesis(cd))
    fail("HypothesisViolated",
         "C(z)^{-1} expansion requires C_{i,j} < -1 => -C_{j,i} <= r_i");
  IntLaurent det = det_cz(cd);
  if (det.is_zero()) fail("SingularCz", "det C(z) = 0");

  big_r_ = 0;
  for (int i = 0; i < n_; ++i) big_r_ += cd.r(i);

  auto cz = z_matrix(cd, ZKind::Cz).entries;
  // adjugate via cofactors (n is tiny)
  numer_.assign(n_, std::vector<IntLaurent>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      if (n_ == 1) {
        numer_[0][0] = IntLaurent::one();
        break;
      }
      std::vector<std::vector<IntLaurent>> minor;
      for (int r = 0; r < n_; ++r) {
        if (r == j) continue;
        std::vector<IntLaurent> row;
        for (int c = 0; c < n_; ++c)
          if (c != i) row.push_back(cz[r][c]);
        minor.push_back(std::move(row));
      }
      IntLaurent cof = determinant(minor);
      if ((i + j) % 2) cof = -cof;
      numer_[i][j] = cof; // adj_{i,j} = cofactor_{j,i}
    }

  // 1/det = z^{-R} * 1/(1 + q(z^{-1})): geometric expansion.
  // det = z^R (1 + sum_{k>0} b_k z^{-k}); extreme coefficient must be a unit.
  BigInt top = det.coeff(det.max_exp());
  if (!(top == 1 || top == -1))
    fail("HypothesisViolated", "det C(z) top coefficient is not a unit");
  std::int64_t top_exp = det.max_exp();
  // depth: enough z^{-k} coefficients so every entry window is covered
  int depth = order + static_cast<int>(2 * big_r_) + 4;
  std::vector<BigInt> b(static_cast<std::size_t>(depth) + 1, 0);
  for (const auto& [e, a] : det.terms())
    if (top_exp - e <= depth) b[static_cast<std::size_t>(top_exp - e)] = a * top;
  inv_det_.assign(static_cast<std::size_t>(depth) + 1, 0);
  inv_det_[0] = 1;
  for (int k = 1; k <= depth; ++k) {
    BigInt acc = 0;
    for (int j = 1; j <= k; ++j) acc += b[static_cast<std::size_t>(j)] * inv_det_[static_cast<std::size_t>(k - j)];
    inv_det_[static_cast<std::size_t>(k)] = -acc;
  }
  for (auto& v : inv_det_) v *= top; // fold the unit back in

  series_.assign(n_, std::vector<std::map<std::int64_t, BigInt>>(n_));
  low_.assign(n_, std::vector<std::int64_t>(n_, 0));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      // entry = numer * z^{-top_exp} * sum inv_det_[k] z^{-k}
      std::map<std::int64_t, BigInt> s;
      std::int64_t hi = numer_[i][j].is_zero() ? -top_exp : numer_[i][j].max_exp() - top_exp;
      std::int64_t lo = hi - order + 1;
      for (const auto& [e, a] : numer_[i][j].terms())
        for (int k = 0; k <= depth; ++k) {
          std::int64_t exp = e - top_exp - k;
          if (exp < lo) continue;
          auto [it, fresh] = s.emplace(exp, a * inv_det_[static_cast<std::size_t>(k)]);
          if (!fresh) it->second += a * inv_det_[static_cast<std::size_t>(k)];
        }
      std::erase_if(s, [&](const auto& kv) { return kv.second == 0; });
      series_[i][j] = std::move(s);
      low_[i][j] = lo;
    }
}

BigInt CzInverseSeries::pi(int i, int j, std::int64_t r) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) fail("IndexRange", "pi index out of range");
  if (r < low_[i][j])
    fail("OrderInsufficient", "requested coefficient below the computed window");
  auto it = series_[i][j].find(r);
  return it == series_[i][j].end() ? BigInt(0) : it->second;
}

std::int64_t gamma_commutator(const CartanData& cd, int i, std::int64_t l, int j,
                              std::int64_t k) {
  std::int64_t d = l - k;
  std::int64_t rj = cd.r(j);
  int order = static_cast<int>(std::abs(d) + rj) + 2;
  // big enough window either side of all four delta solutions
  std::int64_t big_r = 0;
  for (int a = 0; a < cd.n(); ++a) big_r += cd.r(a);
  order += static_cast<int>(2 * big_r) + 2;
  CzInverseSeries inv(cd, order);
  auto p = [&](std::int64_t r) { return inv.pi(j, i, r); };
  BigInt g = -p(-rj - d) - p(d + rj) + p(rj - d) + p(d - rj);
  return static_cast<std::int64_t>(g);
}

} // namespace qtchar
