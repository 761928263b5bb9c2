// Independent reference computations used only by the tests.
#ifndef FRCERT_TESTS_ORACLES_HPP
#define FRCERT_TESTS_ORACLES_HPP

#include "frcert/rational.hpp"
#include "frcert/rng.hpp"

#include <vector>

namespace oracle {

using frcert::Index;
using frcert::Rat;
using frcert::RatMatrix;

// Cofactor expansion along the first row.
inline Rat determinant(const RatMatrix& a) {
  const Index n = a.rows();
  if (n == 0) return Rat(1);
  if (n == 1) return a(0, 0);
  Rat det(0);
  for (Index c = 0; c < n; ++c) {
    if (a(0, c) == 0) continue;
    RatMatrix minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r)
      for (Index cc = 0, k = 0; cc < n; ++cc)
        if (cc != c) minor(r - 1, k++) = a(r, cc);
    Rat term = a(0, c) * determinant(minor);
    det += (c % 2 == 0) ? term : Rat(-term);
  }
  return det;
}

inline void subsets(Index n, Index k, Index start, std::vector<Index>& cur, std::vector<std::vector<Index>>& out) {
  if (static_cast<Index>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (Index i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Largest order of a nonzero minor.
inline Index rank_by_minors(const RatMatrix& a) {
  for (Index k = std::min(a.rows(), a.cols()); k > 0; --k) {
    std::vector<std::vector<Index>> rs, cs;
    std::vector<Index> cur;
    subsets(a.rows(), k, 0, cur, rs);
    subsets(a.cols(), k, 0, cur, cs);
    for (const auto& r : rs)
      for (const auto& c : cs) {
        RatMatrix m(k, k);
        for (Index i = 0; i < k; ++i)
          for (Index j = 0; j < k; ++j) m(i, j) = a(r[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j)]);
        if (determinant(m) != 0) return k;
      }
  }
  return 0;
}

// Sylvester: psd iff every principal minor is nonnegative.
inline bool psd_by_principal_minors(const RatMatrix& a) {
  const Index n = a.rows();
  for (Index k = 1; k <= n; ++k) {
    std::vector<std::vector<Index>> ss;
    std::vector<Index> cur;
    subsets(n, k, 0, cur, ss);
    for (const auto& s : ss) {
      RatMatrix m(k, k);
      for (Index i = 0; i < k; ++i)
        for (Index j = 0; j < k; ++j) m(i, j) = a(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]);
      if (determinant(m) < 0) return false;
    }
  }
  return true;
}

inline RatMatrix random_matrix(frcert::SplitMix64& rng, Index r, Index c, long range) {
  RatMatrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = Rat(rng.uniform(-range, range));
  return m;
}

inline RatMatrix random_symmetric(frcert::SplitMix64& rng, Index n, long range) {
  RatMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j) m(i, j) = m(j, i) = Rat(rng.uniform(-range, range));
  return m;
}

// Matrix product by explicit triple loop.
inline RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < b.cols(); ++j) {
      Rat s(0);
      for (Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

inline Rat trace_product(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix p = multiply(a, b);
  Rat t(0);
  for (Index i = 0; i < p.rows(); ++i) t += p(i, i);
  return t;
}

}  // namespace oracle

#endif
