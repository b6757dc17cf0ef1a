#pragma once

#include "eqcoh/rational_function.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace Eigen {

template <>
struct NumTraits<eqcoh::Polynomial> : GenericNumTraits<eqcoh::Polynomial> {
  using Real = eqcoh::Polynomial;
  using NonInteger = eqcoh::Polynomial;
  using Literal = eqcoh::Polynomial;
  using Nested = eqcoh::Polynomial;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 128
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<eqcoh::RationalFunction> : GenericNumTraits<eqcoh::RationalFunction> {
  using Real = eqcoh::RationalFunction;
  using NonInteger = eqcoh::RationalFunction;
  using Literal = eqcoh::RationalFunction;
  using Nested = eqcoh::RationalFunction;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 16,
    AddCost = 256,
    MulCost = 256
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace eqcoh {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Mat<Rational>;
using RationalVector = Vec<Rational>;
using PolyMatrix = Mat<Polynomial>;
using PolyVector = Vec<Polynomial>;
using FracMatrix = Mat<RationalFunction>;
using FracVector = Vec<RationalFunction>;

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const Polynomial& x) { return x.is_zero(); }
inline bool is_zero(const RationalFunction& x) { return x.is_zero(); }

template <typename Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

/// Equality that also compares shapes (Eigen's operator== requires equal sizes).
template <typename A, typename B>
bool same_matrix(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

/// Exact product. Eigen's blocked GEMM is tuned for floating point; the coefficient-wise
/// lazy product is the right kernel for exact scalars.
template <typename A, typename B>
auto mul(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using Scalar = typename A::Scalar;
  Mat<Scalar> r = Mat<Scalar>::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (!is_zero(b(k, j))) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

/// Entrywise conversion between exact scalar types (Rational -> Polynomial -> RationalFunction).
template <typename To, typename Derived>
Mat<To> cast_exact(const Eigen::MatrixBase<Derived>& m) {
  Mat<To> r(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) r(i, j) = To(m(i, j));
  return r;
}

}  // namespace eqcoh
