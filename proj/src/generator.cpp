#include "frcert/generator.hpp"

#include "frcert/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace frcert {
namespace {

Rat draw(SplitMix64& rng, long range) { return Rat(rng.uniform(-range, range)); }

std::string join(const BlockSizes& s) {
  std::string out;
  for (Index p : s) out += (out.empty() ? "" : ",") + std::to_string(p);
  return out;
}

Index sum(const BlockSizes& s) { return std::accumulate(s.begin(), s.end(), Index(0)); }

void check_sizes(const BlockSizes& s, Index expected, const char* name) {
  if (static_cast<Index>(s.size()) != expected)
    throw ParamError(std::string(name) + " needs " + std::to_string(expected) + " block sizes, got " + std::to_string(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0) throw ParamError(std::string(name) + " has a negative block size");
    if (i + 1 < s.size() && s[i] == 0)
      throw ParamError(std::string(name) + "_" + std::to_string(i + 1) + " must be positive (only the last block may be empty)");
  }
}

void check_common(const GenParams& p) {
  if (p.n < 1) throw ParamError("n must be positive");
  if (p.k < 0) throw ParamError("k must be nonnegative");
  if (p.range < 1) throw ParamError("entry range must be at least 1");
  check_sizes(p.p, p.k + 1, "p");
  if (p.k + 1 > p.m) throw ParamError("need k + 1 <= m, got k=" + std::to_string(p.k) + " m=" + std::to_string(p.m));
}

// Staircase matrix: identity on `own`, random symmetric entries in the rows
// of `earlier` (all columns), zero elsewhere.
RatMatrix staircase_member(Index n, const std::vector<Index>& own, const std::vector<Index>& earlier,
                           SplitMix64& rng, long range) {
  RatMatrix a = zeros(n, n);
  for (Index r : own) a(r, r) = 1;
  std::vector<bool> in_earlier(static_cast<std::size_t>(n), false);
  for (Index r : earlier) in_earlier[static_cast<std::size_t>(r)] = true;
  for (Index r : earlier)
    for (Index c = 0; c < n; ++c) {
      if (in_earlier[static_cast<std::size_t>(c)] && c < r) continue;
      a(r, c) = a(c, r) = draw(rng, range);
    }
  return a;
}

RatMatrix random_symmetric(Index n, SplitMix64& rng, long range) {
  RatMatrix a(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = r; c < n; ++c) a(r, c) = a(c, r) = draw(rng, range);
  return a;
}

std::vector<Index> union_of(const std::vector<std::vector<Index>>& sets, std::size_t upto) {
  std::vector<Index> out;
  for (std::size_t i = 0; i < upto; ++i) out.insert(out.end(), sets[i].begin(), sets[i].end());
  return out;
}

std::map<std::string, std::string> provenance_of(const GenParams& p, const std::string& algorithm) {
  return {{"generator", std::string("frcert ") + kGeneratorVersion},
          {"algorithm", algorithm},
          {"n", std::to_string(p.n)},
          {"m", std::to_string(p.m)},
          {"k", std::to_string(p.k)},
          {"p", join(p.p)},
          {"range", std::to_string(p.range)},
          {"seed", std::to_string(p.seed)}};
}

// Symmetric matrices as packed upper-triangle coordinates: row j gives the
// coefficients of a -> <a, y_j>.
RatMatrix orthogonality_rows(const std::vector<RatMatrix>& ys, Index n) {
  const Index dim = n * (n + 1) / 2;
  RatMatrix rows(static_cast<Index>(ys.size()), dim);
  for (std::size_t j = 0; j < ys.size(); ++j) {
    Index col = 0;
    for (Index r = 0; r < n; ++r)
      for (Index c = r; c < n; ++c, ++col) rows(static_cast<Index>(j), col) = r == c ? ys[j](r, r) : Rat(2) * ys[j](r, c);
  }
  return rows;
}

}  // namespace

GenParams GenParams::preset(const std::string& name) {
  GenParams g;
  if (name == "paper-m10") g.m = 10;
  else if (name == "paper-m20") g.m = 20;
  else throw ParamError("unknown preset '" + name + "' (known: paper-m10, paper-m20)");
  return g;
}

void GenParams::validate_infeasible() const {
  check_common(*this);
  if (sum(p) > n) throw ParamError("need p_1 + ... + p_{k+1} <= n, got " + std::to_string(sum(p)) + " > " + std::to_string(n));
}

void GenParams::validate_weak() const {
  check_common(*this);
  if (ell < 0) throw ParamError("l must be nonnegative");
  check_sizes(q, ell + 1, "q");
  if (sum(p) + sum(q) > n)
    throw ParamError("need p_1 + ... + p_{k+1} + q_1 + ... + q_{l+1} <= n, got " + std::to_string(sum(p) + sum(q)) +
                     " > " + std::to_string(n));
}

RatMatrix random_invertible(Index n, SplitMix64& rng, long range, int max_draws) {
  for (int draw_no = 0; draw_no < max_draws; ++draw_no) {
    RatMatrix t(n, n);
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c) t(r, c) = draw(rng, range);
    if (rank(t) == n) return t;
  }
  throw std::runtime_error("no invertible matrix after " + std::to_string(max_draws) + " draws");
}

void step_star(RatMatrix& a, RatMatrix& y, const Rat& target, const std::vector<Index>& P, const std::vector<Index>& Q,
               SplitMix64* rng, long range) {
  if (P.empty() || Q.empty()) throw ParamError("step needs nonempty blocks");
  const Index pr = P[0], qc = Q[0];
  if (rng) {
    for (Index r : P)
      for (Index c : Q) {
        a(r, c) = a(c, r) = draw(*rng, range);
        y(r, c) = y(c, r) = draw(*rng, range);
      }
    a(pr, qc) = a(qc, pr) = Rat(rng->uniform_nonzero(range));
  }
  const Rat kept = y(pr, qc);
  y(pr, qc) = y(qc, pr) = 0;
  const Rat rest = inner_product(a, y);
  if (a(pr, qc) == 0) {
    if (rest != target) throw ParamError("step pivot of a is zero and the equation is not already satisfied");
    y(pr, qc) = y(qc, pr) = kept;
    if (inner_product(a, y) != target) throw ParamError("step pivot of a is zero and the equation is not satisfied");
    return;
  }
  y(pr, qc) = y(qc, pr) = (target - rest) / (Rat(2) * a(pr, qc));
}

Index max_weak_constraints(const std::vector<RatMatrix>& y_prefix) {
  if (y_prefix.empty()) throw DimensionError("need at least one y");
  const Index n = y_prefix[0].rows();
  return n * (n + 1) / 2 - rank(orthogonality_rows(y_prefix, n));
}

Generated gen_infeasible(const GenParams& params) {
  params.validate_infeasible();
  SplitMix64 rng(params.seed);
  const Index n = params.n;
  auto P = blocks(params.p, n, BlockDirection::Forward);
  Generated g;
  g.instance.cone = ConeSpec::psd(n);
  for (Index i = 0; i <= params.k; ++i)
    g.instance.a.push_back(staircase_member(n, P[static_cast<std::size_t>(i)], union_of(P, static_cast<std::size_t>(i)), rng, params.range));
  for (Index i = params.k + 1; i < params.m; ++i) g.instance.a.push_back(random_symmetric(n, rng, params.range));
  g.instance.c = RatVector::Constant(params.m, Rat(0));
  g.instance.c(params.k) = -1;
  for (Index i = params.k + 1; i < params.m; ++i) g.instance.c(i) = draw(rng, params.range);

  g.bundle.infeasible = InfeasibilityWitness{identity(params.m), identity(n), params.p, SequenceCheck::RegFR};
  g.bundle.label = "infeasible (unclassified)";
  g.bundle.provenance = provenance_of(params, "infeasible");
  if (params.mess) return mess(g, derive_seed(params.seed, 1), params.range);
  return g;
}

Generated gen_weak(const GenParams& params) {
  params.validate_weak();
  SplitMix64 rng(params.seed);
  const Index n = params.n, k = params.k, l = params.ell;
  auto P = blocks(params.p, n, BlockDirection::Forward);
  auto Q = blocks(params.q, n, BlockDirection::Reverse);

  std::vector<RatMatrix> a, y;
  for (Index i = 0; i <= k; ++i)
    a.push_back(staircase_member(n, P[static_cast<std::size_t>(i)], union_of(P, static_cast<std::size_t>(i)), rng, params.range));
  for (Index j = 0; j <= l; ++j)
    y.push_back(staircase_member(n, Q[static_cast<std::size_t>(j)], union_of(Q, static_cast<std::size_t>(j)), rng, params.range));

  for (Index i = 1; i <= k; ++i)
    for (Index j = 1; j <= l; ++j) {
      Rat target = (i == k && j == l) ? Rat(-1) : Rat(0);
      step_star(a[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(j)], target, P[static_cast<std::size_t>(i - 1)],
                Q[static_cast<std::size_t>(j - 1)], &rng, params.range);
    }
  for (Index i = 0; i <= k; ++i)
    for (Index j = 0; j <= l; ++j) {
      Rat want = (i == k && j == l) ? Rat(-1) : Rat(0);
      if (inner_product(a[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(j)]) != want)
        throw std::logic_error("weak generator broke <a_i, y_j> at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }

  // Extra constraints orthogonal to y_1..y_l.
  if (params.m > k + 1) {
    std::vector<RatMatrix> prefix(y.begin(), y.begin() + l);
    std::vector<RatVector> basis;
    Index max_m = n * (n + 1) / 2;
    if (!prefix.empty()) {
      RatMatrix rows = orthogonality_rows(prefix, n);
      basis = kernel_basis(rows);
      max_m = static_cast<Index>(basis.size());
    } else {
      for (Index e = 0; e < max_m; ++e) {
        RatVector u = RatVector::Constant(max_m, Rat(0));
        u(e) = 1;
        basis.push_back(u);
      }
    }
    if (params.m > max_m)
      throw ParamError("m = " + std::to_string(params.m) + " exceeds the largest reachable m = " + std::to_string(max_m) +
                       " for these block sizes");
    Index current = rank(stack_vectorized(a));
    for (Index i = k + 1; i < params.m; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
        RatVector packed = RatVector::Constant(n * (n + 1) / 2, Rat(0));
        for (const auto& b : basis) packed += draw(rng, params.range) * b;
        RatMatrix cand = sym_from_upper(n, std::vector<Rat>(packed.data(), packed.data() + packed.size()));
        a.push_back(cand);
        Index r = rank(stack_vectorized(a));
        if (r == current + 1) {
          current = r;
          placed = true;
        } else {
          a.pop_back();
        }
      }
      if (!placed) throw std::runtime_error("could not draw a linearly independent extra constraint");
    }
  }

  Generated g;
  g.instance.cone = ConeSpec::psd(n);
  g.instance.a = a;
  g.instance.c = RatVector::Constant(params.m, Rat(0));
  g.instance.c(k) = -1;
  for (Index i = k + 1; i < params.m; ++i) g.instance.c(i) = inner_product(a[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(l)]);

  g.bundle.infeasible = InfeasibilityWitness{identity(params.m), identity(n), params.p, SequenceCheck::RegFR};
  g.bundle.not_strongly = SequenceWitness{y, SequenceCheck::RevRegFR, params.q, std::nullopt};
  g.bundle.label = "weakly infeasible";
  g.bundle.provenance = provenance_of(params, "weak");
  g.bundle.provenance["l"] = std::to_string(l);
  g.bundle.provenance["q"] = join(params.q);
  if (params.mess) return mess(g, derive_seed(params.seed, 1), params.range);
  return g;
}

Generated mess(const Generated& g, std::uint64_t seed, long range) {
  const DualInstance& in = g.instance;
  if (!in.cone.is_single_psd()) throw DimensionError("mess needs a single PSD block");
  in.validate();
  SplitMix64 rng(seed);
  RatMatrix t = random_invertible(in.m(), rng, range);
  RatMatrix v = random_invertible(in.cone.blocks[0].dim, rng, range);
  Generated out = mess(g, t, v);
  out.bundle.provenance["mess_seed"] = std::to_string(seed);
  return out;
}

Generated mess(const Generated& g, const RatMatrix& t, const RatMatrix& v) {
  const DualInstance& in = g.instance;
  if (!in.cone.is_single_psd()) throw DimensionError("mess needs a single PSD block");
  in.validate();
  const Index m = in.m(), n = in.cone.blocks[0].dim;
  if (t.rows() != m || t.cols() != m || v.rows() != n || v.cols() != n) throw DimensionError("mess: t must be m x m and v n x n");
  const auto t_inv_opt = invert(t);
  const auto v_inv_opt = invert(v);
  if (!t_inv_opt || !v_inv_opt) throw std::invalid_argument("mess: t and v must be invertible");
  const RatMatrix& t_inv = *t_inv_opt;
  const RatMatrix& v_inv = *v_inv_opt;

  Generated out;
  out.instance.cone = in.cone;
  out.instance.objective = in.objective;
  for (Index i = 0; i < m; ++i) out.instance.a.push_back(congruence(v, apply_operator(in.a, t.row(i).transpose())));
  out.instance.c = t * in.c;

  out.bundle = g.bundle;
  if (g.bundle.infeasible) {
    InfeasibilityWitness w = *g.bundle.infeasible;
    w.M = RatMatrix(t_inv.transpose() * w.M);
    w.t = RatMatrix(v_inv * w.t);
    out.bundle.infeasible = w;
  }
  if (g.bundle.not_strongly) {
    SequenceWitness s = *g.bundle.not_strongly;
    for (auto& yj : s.seq) yj = congruence(RatMatrix(v_inv.transpose()), yj);
    RatMatrix r = s.rotation ? *s.rotation : identity(n);
    if (s.check == SequenceCheck::RegFR || s.check == SequenceCheck::RevRegFR) s.rotation = RatMatrix(v.transpose() * r);
    out.bundle.not_strongly = s;
  }
  out.bundle.provenance["messed"] = "yes";
  return out;
}

}  // namespace frcert
