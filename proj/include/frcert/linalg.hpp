#ifndef FRCERT_LINALG_HPP
#define FRCERT_LINALG_HPP

#include "frcert/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frcert {

/// Entrywise inner product sum_ij a_ij b_ij, i.e. trace(ab) for symmetric
/// arguments. Column vectors are accepted too (vector cones).
template <typename Derived1, typename Derived2>
typename Derived1::Scalar inner_product(const Eigen::MatrixBase<Derived1>& a,
                                        const Eigen::MatrixBase<Derived2>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("inner_product: shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
  typename Derived1::Scalar sum(0);
  for (Index c = 0; c < a.cols(); ++c)
    for (Index r = 0; r < a.rows(); ++r) sum += a(r, c) * b(r, c);
  return sum;
}

/// (<a_1,y>, ..., <a_m,y>).
RatVector apply_adjoint(const std::vector<RatMatrix>& a_list, const RatMatrix& y);

/// sum_i x_i a_i.
RatMatrix apply_operator(const std::vector<RatMatrix>& a_list, const RatVector& x);

/// t^T a t.
template <typename Scalar>
Matrix<Scalar> congruence(const Matrix<Scalar>& t, const Matrix<Scalar>& a) {
  if (t.rows() != a.rows() || a.rows() != a.cols()) {
    throw DimensionError("congruence: t is " + std::to_string(t.rows()) + "x" +
                         std::to_string(t.cols()) + ", a is " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
  Matrix<Scalar> tmp = a * t;
  return t.transpose() * tmp;
}

struct RrefResult {
  RatMatrix reduced;
  std::vector<Index> pivots;
  Index rank = 0;
};

RrefResult rref(const RatMatrix& m);
Index rank(const RatMatrix& m);

/// Nullspace basis; each vector has coprime integer entries.
std::vector<RatVector> kernel_basis(const RatMatrix& m);

/// One solution of m x = rhs, or nullopt when inconsistent.
std::optional<RatVector> solve_linear(const RatMatrix& m, const RatVector& rhs);

/// Inverse, or nullopt when singular.
std::optional<RatMatrix> invert(const RatMatrix& m);

bool is_symmetric(const RatMatrix& a);
void require_symmetric(const RatMatrix& a, const std::string& what);

/// Exact positive semidefiniteness by symmetric pivoting.
bool is_psd(const RatMatrix& a);

/// Column-stacks every matrix of the list into the columns of one matrix
/// (used for linear independence and range tests).
RatMatrix stack_vectorized(const std::vector<RatMatrix>& mats);

/// Scales v to coprime integers with a positive leading nonzero entry.
RatVector integer_normalized(const RatVector& v);

/// Columns spanning ker(v^T y v) expressed in the ambient space (v * kernel).
RatMatrix restricted_kernel(const RatMatrix& v, const RatMatrix& y);

/// Principal submatrix / block by index lists.
RatMatrix submatrix(const RatMatrix& a, const std::vector<Index>& rows,
                    const std::vector<Index>& cols);

}  // namespace frcert

#endif  // FRCERT_LINALG_HPP
