#include "frcert/ramana.hpp"

namespace frcert {

Index RamanaDualSDP::num_vars() const { return (k + 1) * n * (n + 1) / 2 + k * (n * n + 1); }
Index RamanaDualSDP::num_equalities() const { return k * (m + 1) + m; }

Index RamanaDualSDP::u_index(Index i, Index r, Index c) const {
  if (r > c) std::swap(r, c);
  const Index tri = n * (n + 1) / 2;
  // offset of row r in the packed upper triangle
  const Index row_off = r * n - r * (r - 1) / 2;
  return (i - 1) * tri + row_off + (c - r);
}

Index RamanaDualSDP::w_index(Index i, Index r, Index c) const {
  return (k + 1) * n * (n + 1) / 2 + (i - 2) * n * n + r * n + c;
}

Index RamanaDualSDP::beta_index(Index i) const { return (k + 1) * n * (n + 1) / 2 + k * n * n + (i - 2); }

RamanaDualSDP build_ramana_dual(const PrimalInstance& inst, Index k) {
  inst.validate();
  if (!inst.cone.is_single_psd()) throw DimensionError("extended dual builder needs a single PSD block");
  if (!inst.c) throw DimensionError("extended dual builder needs the objective vector c");
  const Index n = inst.cone.blocks[0].dim;
  if (k < 0 || k > n - 1) throw std::out_of_range("k must lie in [0, " + std::to_string(n - 1) + "], got " + std::to_string(k));

  RamanaDualSDP d;
  d.n = n;
  d.m = inst.m();
  d.k = k;
  SdpaProblem& p = d.sdp;
  p.m = d.num_vars();
  p.c = RatVector::Constant(p.m, Rat(0));
  for (Index i = 0; i <= k; ++i) p.block_sizes.push_back(n);
  for (Index i = 0; i < k; ++i) p.block_sizes.push_back(2 * n);
  const Index E = d.num_equalities();
  p.block_sizes.push_back(-2 * E);
  p.comments.push_back("extended dual: n=" + std::to_string(n) + " m=" + std::to_string(d.m) + " k=" + std::to_string(k) +
                       " vars=" + std::to_string(p.m) + " equalities=" + std::to_string(E));

  auto add = [&](Index var, Index block, Index r, Index c, const Rat& v) {
    if (v == 0) return;
    if (r > c) std::swap(r, c);
    p.entries.push_back({var + 1, block, r + 1, c + 1, v});
  };

  // u_i psd.
  for (Index i = 1; i <= k + 1; ++i)
    for (Index r = 0; r < n; ++r)
      for (Index c = r; c < n; ++c) add(d.u_index(i, r, c), i, r, c, Rat(1));

  // Tangent blocks.
  for (Index i = 2; i <= k + 1; ++i) {
    const Index block = k + 1 + (i - 1);
    for (Index s = 1; s < i; ++s)
      for (Index r = 0; r < n; ++r)
        for (Index c = r; c < n; ++c) add(d.u_index(s, r, c), block, r, c, Rat(1));
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) add(d.w_index(i, r, c), block, r, n + c, Rat(1));
    for (Index j = 0; j < n; ++j) add(d.beta_index(i), block, n + j, n + j, Rat(1));
  }

  // Linear functionals <a, y_i> as coefficients over the variables of y_i.
  auto functional = [&](const RatMatrix& a, Index i) {
    std::vector<std::pair<Index, Rat>> terms;
    for (Index r = 0; r < n; ++r)
      for (Index c = r; c < n; ++c) {
        Rat coef = r == c ? a(r, r) : Rat(2) * a(r, c);
        if (coef != 0) terms.emplace_back(d.u_index(i, r, c), coef);
      }
    if (i >= 2)
      for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c)
          if (a(r, c) != 0) terms.emplace_back(d.w_index(i, r, c), Rat(2) * a(r, c));
    return terms;
  };

  const Index eq_block = 2 * k + 2;
  Index row = 0;
  auto equality = [&](const std::vector<std::pair<Index, Rat>>& terms, const Rat& rhs) {
    for (const auto& [var, coef] : terms) {
      add(var, eq_block, 2 * row, 2 * row, coef);
      add(var, eq_block, 2 * row + 1, 2 * row + 1, -coef);
    }
    if (rhs != 0) {
      p.entries.push_back({0, eq_block, 2 * row + 1, 2 * row + 1, rhs});
      p.entries.push_back({0, eq_block, 2 * row + 2, 2 * row + 2, -rhs});
    }
    ++row;
  };
  for (Index i = 1; i <= k; ++i) {
    for (const auto& a : inst.a) equality(functional(a, i), Rat(0));
    equality(functional(inst.b, i), Rat(0));
  }
  for (Index j = 0; j < d.m; ++j) equality(functional(inst.a[static_cast<std::size_t>(j)], k + 1), (*inst.c)(j));

  for (const auto& [var, coef] : functional(inst.b, k + 1)) p.c(var) += coef;
  return d;
}

RatVector encode_point(const RamanaDualSDP& d, const RamanaPoint& pt) {
  const Index K = d.k + 1;
  if (static_cast<Index>(pt.u.size()) != K) throw DimensionError("point needs k+1 u matrices");
  if (d.k > 0 && (static_cast<Index>(pt.w.size()) != K || static_cast<Index>(pt.beta.size()) != K))
    throw DimensionError("point needs k+1 w matrices and beta values (index 0 unused)");
  RatVector x = RatVector::Constant(d.num_vars(), Rat(0));
  for (Index i = 1; i <= K; ++i) {
    const RatMatrix& u = pt.u[static_cast<std::size_t>(i - 1)];
    if (u.rows() != d.n || u.cols() != d.n) throw DimensionError("u matrix has the wrong order");
    require_symmetric(u, "u_" + std::to_string(i));
    for (Index r = 0; r < d.n; ++r)
      for (Index c = r; c < d.n; ++c) x(d.u_index(i, r, c)) = u(r, c);
  }
  for (Index i = 2; i <= K; ++i) {
    const RatMatrix& w = pt.w[static_cast<std::size_t>(i - 1)];
    if (w.rows() != d.n || w.cols() != d.n) throw DimensionError("w matrix has the wrong order");
    for (Index r = 0; r < d.n; ++r)
      for (Index c = 0; c < d.n; ++c) x(d.w_index(i, r, c)) = w(r, c);
    x(d.beta_index(i)) = pt.beta[static_cast<std::size_t>(i - 1)];
  }
  return x;
}

std::vector<RatMatrix> decoded_sequence(const RamanaDualSDP& d, const RamanaPoint& pt) {
  std::vector<RatMatrix> ys;
  for (Index i = 1; i <= d.k + 1; ++i) {
    RatMatrix y = pt.u[static_cast<std::size_t>(i - 1)];
    if (i >= 2) {
      const RatMatrix& w = pt.w[static_cast<std::size_t>(i - 1)];
      y += w + RatMatrix(w.transpose());
    }
    ys.push_back(y);
  }
  return ys;
}

RamanaCheck check_point(const RamanaDualSDP& d, const RatVector& x) {
  const SdpaProblem& p = d.sdp;
  if (x.size() != p.m) throw DimensionError("point has " + std::to_string(x.size()) + " entries, expected " + std::to_string(p.m));
  std::vector<RatMatrix> blocks;
  for (Index s : p.block_sizes) blocks.push_back(zeros(s < 0 ? -s : s, s < 0 ? -s : s));
  for (const auto& e : p.entries) {
    Rat v = e.matrix == 0 ? Rat(-e.value) : e.value * x(e.matrix - 1);
    if (v == 0) continue;
    RatMatrix& b = blocks[static_cast<std::size_t>(e.block - 1)];
    b(e.i - 1, e.j - 1) += v;
    if (e.i != e.j) b(e.j - 1, e.i - 1) += v;
  }
  RamanaCheck out;
  out.objective = p.c.dot(x);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (!is_psd(blocks[b])) {
      out.first_violation = "block " + std::to_string(b + 1) + " is not psd";
      return out;
    }
  }
  out.feasible = true;
  return out;
}

}  // namespace frcert
