#include "eqcoh/smith.hpp"

#include "eqcoh/errors.hpp"
#include "eqcoh/linalg.hpp"

#include <numeric>

namespace eqcoh {

using Eigen::Index;

namespace {

void row_axpy(PolyMatrix& m, Index dst, const Polynomial& q, Index src) {
  for (Index j = 0; j < m.cols(); ++j)
    if (!m(src, j).is_zero()) m(dst, j) += q * m(src, j);
}

void col_axpy(PolyMatrix& m, Index dst, const Polynomial& q, Index src) {
  for (Index i = 0; i < m.rows(); ++i)
    if (!m(i, src).is_zero()) m(i, dst) += q * m(i, src);
}

}  // namespace

SmithForm smith_normal_form(const PolyMatrix& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j).nvars() > 1) throw UnsupportedRank("Smith normal form requires torus rank 1 (univariate entries)");

  const Index m = a.rows(), n = a.cols();
  SmithForm s;
  s.D = a;
  s.U = PolyMatrix::Identity(m, m);
  s.V = PolyMatrix::Identity(n, n);
  s.row_order.resize(m);
  s.col_order.resize(n);
  std::iota(s.row_order.begin(), s.row_order.end(), Index{0});
  std::iota(s.col_order.begin(), s.col_order.end(), Index{0});
  PolyMatrix& D = s.D;

  for (Index t = 0; t < std::min(m, n); ++t) {
    bool found_any = true;
    while (true) {
      Index pi = -1, pj = -1;
      for (Index i = t; i < m; ++i)
        for (Index j = t; j < n; ++j) {
          if (D(i, j).is_zero()) continue;
          if (pi < 0 || D(i, j).degree() < D(pi, pj).degree()) pi = i, pj = j;
        }
      if (pi < 0) {
        found_any = false;
        break;
      }
      if (pi != t) {
        D.row(t).swap(D.row(pi));
        s.U.row(t).swap(s.U.row(pi));
        std::swap(s.row_order[t], s.row_order[pi]);
      }
      if (pj != t) {
        D.col(t).swap(D.col(pj));
        s.V.col(t).swap(s.V.col(pj));
        std::swap(s.col_order[t], s.col_order[pj]);
      }
      bool remainder = false;
      for (Index i = t + 1; i < m; ++i) {
        if (D(i, t).is_zero()) continue;
        auto [q, r] = divmod(D(i, t), D(t, t));
        row_axpy(D, i, -q, t);
        row_axpy(s.U, i, -q, t);
        remainder = remainder || !r.is_zero();
      }
      for (Index j = t + 1; j < n; ++j) {
        if (D(t, j).is_zero()) continue;
        auto [q, r] = divmod(D(t, j), D(t, t));
        col_axpy(D, j, -q, t);
        col_axpy(s.V, j, -q, t);
        remainder = remainder || !r.is_zero();
      }
      if (remainder) continue;

      Index bad = -1;
      for (Index i = t + 1; i < m && bad < 0; ++i)
        for (Index j = t + 1; j < n; ++j)
          if (!D(i, j).is_zero() && !divmod(D(i, j), D(t, t)).second.is_zero()) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_axpy(D, t, Polynomial(1), bad);
      row_axpy(s.U, t, Polynomial(1), bad);
      s.permutation_only = false;
    }
    if (!found_any) break;
    const Rational inv = 1 / D(t, t).leading_coefficient();
    for (Index j = 0; j < n; ++j) D(t, j) *= inv;
    for (Index j = 0; j < m; ++j) s.U(t, j) *= inv;
    s.invariant_factors.push_back(D(t, t));
  }
  return s;
}

Polynomial determinant(const PolyMatrix& a) {
  if (a.rows() != a.cols()) throw StructuralError("determinant of a non-square matrix");
  const Index n = a.rows();
  if (n == 0) return Polynomial(1);
  BareissEchelon e = bareiss_echelon(a, n);
  if (static_cast<Index>(e.pivot_cols.size()) < n) return Polynomial();
  const Polynomial& d = e.reduced(n - 1, n - 1);
  return e.row_swaps % 2 ? -d : d;
}

}  // namespace eqcoh
