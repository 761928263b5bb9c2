#include "frcert/fr_sequences.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace frcert {
namespace {

Index total(const BlockSizes& sizes) {
  Index s = 0;
  for (Index p : sizes) {
    if (p < 0) throw DimensionError("negative block size " + std::to_string(p));
    s += p;
  }
  return s;
}

void check_shapes(const std::vector<RatMatrix>& seq, const BlockSizes& sizes) {
  if (seq.size() != sizes.size())
    throw DimensionError(std::to_string(seq.size()) + " matrices but " + std::to_string(sizes.size()) + " block sizes");
  if (seq.empty()) return;
  const Index n = seq[0].rows();
  for (const auto& y : seq)
    if (y.rows() != n || y.cols() != n) throw DimensionError("sequence matrices are not all " + std::to_string(n) + "x" + std::to_string(n));
  if (total(sizes) > n)
    throw DimensionError("block sizes sum to " + std::to_string(total(sizes)) + " > order " + std::to_string(n));
}

// Expected value at (r, c) inside the trailing corner [s, n) for a block
// occupying [s, s + p).
template <typename Scalar>
Scalar pattern_value(Index r, Index c, Index s, Index p) {
  return (r == c && r >= s && r < s + p) ? Scalar(1) : Scalar(0);
}

}  // namespace

std::vector<std::vector<Index>> blocks(const BlockSizes& sizes, Index n, BlockDirection direction) {
  if (total(sizes) > n) throw DimensionError("block sizes sum to " + std::to_string(total(sizes)) + " > order " + std::to_string(n));
  std::vector<std::vector<Index>> out;
  Index offset = 0;
  for (Index p : sizes) {
    std::vector<Index> set;
    for (Index j = 0; j < p; ++j) {
      if (direction == BlockDirection::Forward) set.push_back(offset + j);
      else set.push_back(n - offset - p + j);
    }
    offset += p;
    out.push_back(std::move(set));
  }
  return out;
}

bool validate_regfr(const std::vector<RatMatrix>& seq, const BlockSizes& sizes) {
  check_shapes(seq, sizes);
  Index s = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const RatMatrix& y = seq[i];
    if (!is_symmetric(y)) return false;
    const Index n = y.rows(), p = sizes[i];
    for (Index r = s; r < n; ++r)
      for (Index c = s; c < n; ++c)
        if (y(r, c) != pattern_value<Rat>(r, c, s, p)) return false;
    s += p;
  }
  return true;
}

bool validate_revregfr(const std::vector<RatMatrix>& seq, const BlockSizes& sizes) {
  check_shapes(seq, sizes);
  std::vector<RatMatrix> flipped;
  for (const auto& y : seq) flipped.emplace_back(y.reverse());
  return validate_regfr(flipped, sizes);
}

bool is_strict(const BlockSizes& sizes) {
  return std::all_of(sizes.begin(), sizes.end(), [](Index p) { return p > 0; });
}

bool is_pre_strict(const BlockSizes& sizes) {
  if (sizes.empty()) return true;
  return std::all_of(sizes.begin(), sizes.end() - 1, [](Index p) { return p > 0; });
}

double regfr_deviation(const std::vector<Matrix<double>>& seq, const BlockSizes& sizes) {
  if (seq.size() != sizes.size()) throw DimensionError("regfr_deviation: length mismatch");
  double dev = 0.0;
  Index s = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& y = seq[i];
    const Index n = y.rows(), p = sizes[i];
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) {
        dev = std::max(dev, std::abs(y(r, c) - y(c, r)));
        if (r >= s && c >= s) dev = std::max(dev, std::abs(y(r, c) - pattern_value<double>(r, c, s, p)));
      }
    s += p;
  }
  return dev;
}

RotationResult rotate_to_regfr(const std::vector<Matrix<double>>& seq, double tolerance) {
  RotationResult res;
  if (seq.empty()) return res;
  const Index n = seq[0].rows();
  res.t = Matrix<double>::Identity(n, n);
  double negative = 0.0;
  Index p = 0;
  for (const auto& y : seq) {
    if (y.rows() != n || y.cols() != n) throw DimensionError("rotate_to_regfr: matrices of different orders");
    if (p == n) {
      res.sizes.push_back(0);
      continue;
    }
    Matrix<double> yp = res.t.transpose() * y * res.t;
    Matrix<double> z = yp.bottomRightCorner(n - p, n - p);
    z = (z + z.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix<double>> eig(z);
    const auto& lambda = eig.eigenvalues();
    const auto& vecs = eig.eigenvectors();
    const double scale = std::max(1.0, z.cwiseAbs().maxCoeff());
    std::vector<Index> order(static_cast<std::size_t>(n - p));
    std::iota(order.begin(), order.end(), 0);
    // Positive eigenvalues first (largest first), then the rest in ascending order.
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      bool pa = lambda(a) > tolerance * scale, pb = lambda(b) > tolerance * scale;
      if (pa != pb) return pa;
      return pa ? lambda(a) > lambda(b) : lambda(a) < lambda(b);
    });
    Matrix<double> q(n - p, n - p);
    Index rank = 0;
    for (Index j = 0; j < n - p; ++j) {
      Index src = order[static_cast<std::size_t>(j)];
      double l = lambda(src);
      if (l > tolerance * scale) {
        q.col(j) = vecs.col(src) / std::sqrt(l);
        ++rank;
      } else {
        q.col(j) = vecs.col(src);
        if (l < -tolerance * scale) negative = std::max(negative, -l);
      }
    }
    Matrix<double> v = Matrix<double>::Identity(n, n);
    v.bottomRightCorner(n - p, n - p) = q;
    res.t = res.t * v;
    res.sizes.push_back(rank);
    p += rank;
  }
  for (const auto& y : seq) res.rotated.push_back(res.t.transpose() * y * res.t);
  res.residual = std::max(regfr_deviation(res.rotated, res.sizes), negative);
  return res;
}

RotationResult rotate_to_regfr(const std::vector<RatMatrix>& seq, double tolerance) {
  std::vector<Matrix<double>> d;
  for (const auto& y : seq) d.push_back(to_double(y));
  return rotate_to_regfr(d, tolerance);
}

}  // namespace frcert
