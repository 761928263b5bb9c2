#include "frcert/linalg.hpp"

namespace frcert {

RatVector apply_adjoint(const std::vector<RatMatrix>& a_list, const RatMatrix& y) {
  RatVector out(static_cast<Index>(a_list.size()));
  for (std::size_t i = 0; i < a_list.size(); ++i) out(static_cast<Index>(i)) = inner_product(a_list[i], y);
  return out;
}

RatMatrix apply_operator(const std::vector<RatMatrix>& a_list, const RatVector& x) {
  if (static_cast<Index>(a_list.size()) != x.size())
    throw DimensionError("apply_operator: " + std::to_string(a_list.size()) + " matrices, " +
                         std::to_string(x.size()) + " coefficients");
  if (a_list.empty()) throw DimensionError("apply_operator: empty operator");
  RatMatrix out = zeros(a_list[0].rows(), a_list[0].cols());
  for (std::size_t i = 0; i < a_list.size(); ++i) {
    const Rat& xi = x(static_cast<Index>(i));
    if (xi == 0) continue;
    if (a_list[i].rows() != out.rows() || a_list[i].cols() != out.cols())
      throw DimensionError("apply_operator: matrices of different shapes");
    out += xi * a_list[i];
  }
  return out;
}

RrefResult rref(const RatMatrix& m) {
  RrefResult res{m, {}, 0};
  RatMatrix& a = res.reduced;
  Index row = 0;
  for (Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Index piv = -1;
    for (Index r = row; r < a.rows(); ++r)
      if (a(r, col) != 0) { piv = r; break; }
    if (piv < 0) continue;
    if (piv != row) a.row(piv).swap(a.row(row));
    Rat inv = 1 / a(row, col);
    for (Index c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (Index r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      Rat f = a(r, col);
      for (Index c = col; c < a.cols(); ++c)
        if (a(row, c) != 0) a(r, c) -= f * a(row, c);
    }
    res.pivots.push_back(col);
    ++row;
  }
  res.rank = row;
  return res;
}

Index rank(const RatMatrix& m) { return rref(m).rank; }

RatVector integer_normalized(const RatVector& v) {
  BigInt l = lcm_of_denominators(v);
  BigInt g(0);
  RatVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    out(i) = v(i) * Rat(l);
    g = gcd(g, BigInt(numerator(out(i))));
  }
  if (g == 0) return out;
  Rat scale(BigInt(1), g);
  for (Index i = 0; i < v.size(); ++i)
    if (out(i) != 0) {
      if (out(i) < 0) scale = -scale;
      break;
    }
  for (Index i = 0; i < v.size(); ++i) out(i) *= scale;
  return out;
}

std::vector<RatVector> kernel_basis(const RatMatrix& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index p : r.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<RatVector> basis;
  for (Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    RatVector v = RatVector::Constant(m.cols(), Rat(0));
    v(free) = 1;
    for (Index i = 0; i < r.rank; ++i) v(r.pivots[static_cast<std::size_t>(i)]) = -r.reduced(i, free);
    basis.push_back(integer_normalized(v));
  }
  return basis;
}

std::optional<RatVector> solve_linear(const RatMatrix& m, const RatVector& rhs) {
  if (m.rows() != rhs.size())
    throw DimensionError("solve_linear: " + std::to_string(m.rows()) + " rows, rhs of length " +
                         std::to_string(rhs.size()));
  RatMatrix aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = rhs;
  RrefResult r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  RatVector x = RatVector::Constant(m.cols(), Rat(0));
  for (Index i = 0; i < r.rank; ++i) x(r.pivots[static_cast<std::size_t>(i)]) = r.reduced(i, m.cols());
  return x;
}

std::optional<RatMatrix> invert(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("invert: matrix is not square");
  const Index n = m.rows();
  RatMatrix aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = identity(n);
  RrefResult r = rref(aug);
  if (r.rank < n || r.pivots[static_cast<std::size_t>(n - 1)] != n - 1) return std::nullopt;
  return RatMatrix(r.reduced.rightCols(n));
}

bool is_symmetric(const RatMatrix& a) {
  if (a.rows() != a.cols()) return false;
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c = r + 1; c < a.cols(); ++c)
      if (a(r, c) != a(c, r)) return false;
  return true;
}

void require_symmetric(const RatMatrix& a, const std::string& what) {
  if (!is_symmetric(a)) throw DimensionError(what + " is not a symmetric matrix");
}

bool is_psd(const RatMatrix& input) {
  if (!is_symmetric(input)) return false;
  RatMatrix a = input;
  const Index n = a.rows();
  for (Index k = 0; k < n; ++k) {
    const Rat& p = a(k, k);
    if (p < 0) return false;
    if (p == 0) {
      for (Index j = k + 1; j < n; ++j)
        if (a(k, j) != 0) return false;
      continue;
    }
    for (Index i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rat f = a(i, k) / p;
      for (Index j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

RatMatrix stack_vectorized(const std::vector<RatMatrix>& mats) {
  if (mats.empty()) return RatMatrix(0, 0);
  const Index len = mats[0].size();
  RatMatrix out(len, static_cast<Index>(mats.size()));
  for (std::size_t j = 0; j < mats.size(); ++j) {
    if (mats[j].size() != len) throw DimensionError("stack_vectorized: shape mismatch");
    out.col(static_cast<Index>(j)) = mats[j].reshaped();
  }
  return out;
}

RatMatrix restricted_kernel(const RatMatrix& v, const RatMatrix& y) {
  RatMatrix w = congruence(v, y);
  std::vector<RatVector> ker = kernel_basis(w);
  RatMatrix out(v.rows(), static_cast<Index>(ker.size()));
  for (std::size_t j = 0; j < ker.size(); ++j) out.col(static_cast<Index>(j)) = v * ker[j];
  return out;
}

RatMatrix submatrix(const RatMatrix& a, const std::vector<Index>& rows, const std::vector<Index>& cols) {
  RatMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(static_cast<Index>(i), static_cast<Index>(j)) = a(rows[i], cols[j]);
  return out;
}

}  // namespace frcert
