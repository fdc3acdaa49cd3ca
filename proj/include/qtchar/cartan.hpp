#ifndef QTCHAR_CARTAN_HPP
#define QTCHAR_CARTAN_HPP

#include "qtchar/laurent.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qtchar {

using IntMatrix = std::vector<std::vector<int>>;

struct CartanFlags {
  bool symmetric = false;
  bool symmetrizable = false;
  bool indecomposable = false;
  bool bz_symmetric = false;   // B(z) symmetric (polynomial test)
  bool b_symmetric = false;    // B = diag(r)C symmetric
  bool q_symmetrizable = false;
  bool cc_le3 = false;         // C_{i,j}C_{j,i} <= 3 for all i != j
  bool det_cz_nonzero = false;
  bool finite_type = false;    // all principal minors of C positive
};

enum class ZKind { Cz, Bz, CPrimez, BPrimez };

struct ZPolyMatrix {
  ZKind kind;
  std::vector<std::vector<IntLaurent>> entries;
};

struct ZMatrices {
  ZPolyMatrix cz, bz, cpz, bpz;
};

/// Validated generalized Cartan matrix with its gcd-1 symmetrizer and the
/// combinatorial predicates the rest of the system gates on.
class CartanData {
public:
  int n() const { return n_; }
  const IntMatrix& c() const { return c_; }
  int c(int i, int j) const { return c_[i][j]; }
  const std::vector<int>& r() const { return r_; }
  int r(int i) const { return r_[i]; }
  int rvee() const { return rvee_; }
  const CartanFlags& flags() const { return flags_; }
  const std::string& name() const { return name_; }

  friend struct CartanBuilder;

private:
  int n_ = 0;
  IntMatrix c_;
  std::vector<int> r_;
  int rvee_ = 1;
  CartanFlags flags_;
  std::string name_;
};

struct CartanOptions {
  std::optional<std::vector<int>> symmetrizer_override;
  bool allow_decomposable = false;
  std::string name;
};

/// Validates the matrix shape, computes the unique gcd-normalized
/// symmetrizer along the indecomposability graph, r^vee, and all flags.
/// Throws NotCartan / Decomposable / NotSymmetrizable / OverrideInconsistent.
CartanData validate_cartan(const IntMatrix& matrix, const CartanOptions& opts = {});

ZPolyMatrix z_matrix(const CartanData& cd, ZKind kind);
ZMatrices z_matrices(const CartanData& cd);

/// Exact determinant of C(z). When the inverse-shape hypothesis
/// (C_{i,j} < -1 implies -C_{j,i} <= r_i) holds, the result is checked to
/// have the form z^{-R} + ... + z^{R} with unit extreme coefficients,
/// R = sum r_i, and palindromic middle.
IntLaurent det_cz(const CartanData& cd);

/// All s >= 1 such that a primitive s-th root of unity kills det C(z).
std::vector<std::int64_t> det_cz_vanishing_s(const CartanData& cd);

/// Truncated expansions of the entries of C(z)^{-1} in Z((z^{-1})).
class CzInverseSeries {
public:
  CzInverseSeries(const CartanData& cd, int order);

  int order() const { return order_; }
  /// Coefficient of z^r in the series for entry (i,j); exact for any
  /// r above the computed window, throws OrderInsufficient below it.
  BigInt pi(int i, int j, std::int64_t r) const;

private:
  int n_;
  int order_;
  std::int64_t big_r_;                               // R = sum r_i
  std::vector<std::vector<IntLaurent>> numer_;       // adjugate entries
  std::vector<BigInt> inv_det_;                      // z^{-R} series of 1/det
  std::vector<std::vector<std::map<std::int64_t, BigInt>>> series_;
  std::vector<std::vector<std::int64_t>> low_;       // lowest exact exponent
};

/// gamma(i,l,j,k) from the commutation Y~_{i,l} Y~_{j,k} =
/// t^gamma Y~_{j,k} Y~_{i,l} in the inverse-deformed algebra; antisymmetric.
std::int64_t gamma_commutator(const CartanData& cd, int i, std::int64_t l, int j,
                              std::int64_t k);

/// Lemma hypothesis gating the inverse expansion: C_{i,j} < -1 implies
/// -C_{j,i} <= r_i.
bool cz_inverse_hypothesis(const CartanData& cd);

} // namespace qtchar

#endif
