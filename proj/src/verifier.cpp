#include "frcert/verifier.hpp"

#include <algorithm>
#include <functional>

namespace frcert {

bool Verdict::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

bool Verdict::record(std::string name, bool passed, std::string residual) {
  if (!passed && status == VerdictStatus::Proven) {
    status = VerdictStatus::Rejected;
    reason = name;
  }
  transcript.push_back({std::move(name), passed, std::move(residual)});
  return passed;
}

void Verdict::absorb(const Verdict& other, const std::string& prefix) {
  for (const auto& c : other.transcript) record(prefix + c.name, c.passed, c.residual);
  for (const auto& f : other.flags)
    if (!has_flag(f)) flags.push_back(f);
}

namespace {

std::string vec_str(const RatVector& v) {
  std::string s = "(";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v(i).str();
  }
  return s + ")";
}

bool all_zero(const RatVector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

bool shape_is(const RatMatrix& x, Index r, Index c) { return x.rows() == r && x.cols() == c; }

bool element_ok(Verdict& v, const std::string& name, const RatMatrix& x, const ConeSpec& cone) {
  try {
    require_element(x, cone, name);
    return v.record(name + " has the element shape", true);
  } catch (const DimensionError& e) {
    return v.record(name + " has the element shape", false, e.what());
  }
}

// t^T (sum_j M_ji a_j) t for every i, with t ignored for vector cones.
std::vector<RatMatrix> transform_operator(const std::vector<RatMatrix>& a, const RatMatrix& M, const RatMatrix& t,
                                          bool congruence_allowed) {
  std::vector<RatMatrix> out;
  for (Index i = 0; i < M.cols(); ++i) {
    RatMatrix combo = apply_operator(a, M.col(i));
    out.push_back(congruence_allowed ? congruence(t, combo) : combo);
  }
  return out;
}

// Shapes, invertibility of M and t, identity t for vector cones.
bool check_reformulation_maps(Verdict& v, const RatMatrix& M, const RatMatrix& t, Index m, const ConeSpec& cone) {
  const Index n = cone.element_rows();
  if (!v.record("M is " + std::to_string(m) + "x" + std::to_string(m), shape_is(M, m, m),
                std::to_string(M.rows()) + "x" + std::to_string(M.cols())))
    return false;
  if (!v.record("t is " + std::to_string(n) + "x" + std::to_string(n), shape_is(t, n, n),
                std::to_string(t.rows()) + "x" + std::to_string(t.cols())))
    return false;
  bool ok = v.record("M invertible", invert(M).has_value(), "rank " + std::to_string(rank(M)));
  ok = v.record("t invertible", invert(t).has_value(), "rank " + std::to_string(rank(t))) && ok;
  if (!cone.is_single_psd()) ok = v.record("t is the identity on a vector cone", same(t, identity(n))) && ok;
  return ok;
}

void check_membership_span(Verdict& v, const std::string& name, const RatMatrix& x,
                           const std::vector<RatMatrix>& span) {
  RatMatrix base = stack_vectorized(span);
  std::vector<RatMatrix> ext = span;
  ext.push_back(x);
  Index r0 = span.empty() ? 0 : rank(base), r1 = rank(stack_vectorized(ext));
  v.record(name, r0 == r1, "rank " + std::to_string(r0) + " -> " + std::to_string(r1));
}

Verdict verify_pairing(const std::vector<RatMatrix>& span, bool span_is_face, const ConeSpec& cone,
                       const SequenceWitness& aseq, const SequenceWitness& yseq, const VerifyOptions& opts) {
  Verdict v;
  const Index k = static_cast<Index>(aseq.seq.size()) - 1;
  const Index l = static_cast<Index>(yseq.seq.size()) - 1;
  if (!v.record("k >= 1", k >= 1, "k = " + std::to_string(k))) return v;
  if (!v.record("l >= 1", l >= 1, "l = " + std::to_string(l))) return v;
  for (std::size_t i = 0; i < aseq.seq.size(); ++i)
    if (!element_ok(v, "a_" + std::to_string(i + 1), aseq.seq[i], cone)) return v;
  for (std::size_t j = 0; j < yseq.seq.size(); ++j)
    if (!element_ok(v, "y_" + std::to_string(j + 1), yseq.seq[j], cone)) return v;
  for (const auto& g : span)
    if (!element_ok(v, "generator", g, cone)) return v;

  const std::string where = span_is_face ? "lin F" : "R(A)";
  for (Index i = 0; i <= k; ++i)
    check_membership_span(v, "a_" + std::to_string(i + 1) + " in " + where, aseq.seq[static_cast<std::size_t>(i)], span);
  for (Index j = 0; j < l; ++j) {
    RatVector r = apply_adjoint(span, yseq.seq[static_cast<std::size_t>(j)]);
    v.record("y_" + std::to_string(j + 1) + (span_is_face ? " in F^perp" : " in N(A*)"), all_zero(r), vec_str(r));
  }
  const RatMatrix& last = yseq.seq.back();
  for (Index i = 0; i <= k; ++i) {
    Rat p = inner_product(aseq.seq[static_cast<std::size_t>(i)], last);
    Rat want = i < k ? Rat(0) : Rat(-1);
    v.record("<a_" + std::to_string(i + 1) + ", y_" + std::to_string(l + 1) + "> = " + want.str(), p == want, p.str());
  }
  check_sequence(v, "(a_1..a_{k+1}) in FR(K*)", aseq, dual(cone), opts);
  check_sequence(v, "(y_1..y_{l+1}) in FR(K)", yseq, cone, opts);
  return v;
}

}  // namespace

bool check_sequence(Verdict& v, const std::string& name, const SequenceWitness& w, const ConeSpec& cone,
                    const VerifyOptions& opts) {
  try {
    switch (w.check) {
      case SequenceCheck::ExactFaces:
        return v.record(name + " [exact]", fr_membership(w.seq, cone));
      case SequenceCheck::RegFR:
      case SequenceCheck::RevRegFR: {
        if (!v.record(name + " structural check on a PSD cone", cone.is_single_psd(), describe(cone))) return false;
        std::vector<RatMatrix> z = w.seq;
        if (w.rotation) {
          const Index n = cone.element_rows();
          if (!v.record(name + " rotation shape", shape_is(*w.rotation, n, n))) return false;
          if (!v.record(name + " rotation invertible", invert(*w.rotation).has_value())) return false;
          for (auto& y : z) y = congruence(*w.rotation, y);
        }
        if (!v.record(name + " sizes match length", w.sizes.size() == z.size(),
                      std::to_string(w.sizes.size()) + " sizes, " + std::to_string(z.size()) + " members"))
          return false;
        bool ok = w.check == SequenceCheck::RegFR ? validate_regfr(z, w.sizes) : validate_revregfr(z, w.sizes);
        std::string sizes;
        for (Index p : w.sizes) sizes += (sizes.empty() ? "" : ",") + std::to_string(p);
        return v.record(name + " [" + to_string(w.check) + " " + sizes + "]", ok);
      }
      case SequenceCheck::Rotation: {
        if (!v.record(name + " rotation check on a PSD cone", cone.is_single_psd(), describe(cone))) return false;
        RotationResult r = rotate_to_regfr(w.seq, opts.tolerance);
        if (std::find(v.flags.begin(), v.flags.end(), "approximate") == v.flags.end()) v.flags.push_back("approximate");
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3e", r.residual);
        return v.record(name + " [rotation]", r.residual < opts.residual_bound, buf);
      }
    }
  } catch (const DimensionError& e) {
    return v.record(name, false, e.what());
  }
  return false;
}

Verdict verify_dual_infeasible(const DualInstance& inst, const InfeasibilityWitness& w, const VerifyOptions& opts) {
  inst.validate();
  Verdict v;
  const Index m = inst.m();
  if (!check_reformulation_maps(v, w.M, w.t, m, inst.cone)) return v;
  std::vector<RatMatrix> a2 = transform_operator(inst.a, w.M, w.t, inst.cone.is_single_psd());
  RatVector c2 = w.M.transpose() * inst.c;

  Index k = 0;
  if (w.check == SequenceCheck::RegFR || w.check == SequenceCheck::RevRegFR) {
    if (!v.record("staircase has at least one block", !w.sizes.empty())) return v;
    k = static_cast<Index>(w.sizes.size()) - 1;
  } else {
    while (k < m && c2(k) == 0) ++k;
  }
  if (!v.record("k + 1 <= m", k + 1 <= m, "k = " + std::to_string(k))) return v;
  v.record("c''_1..c''_k = 0", all_zero(c2.head(k)), vec_str(c2.head(k)));
  v.record("c''_{k+1} = -1", c2(k) == -1, c2(k).str());
  const Index bound = chain_length(dual(inst.cone)) - 1;
  v.record("k <= " + std::to_string(bound), k <= bound, "k = " + std::to_string(k));
  if (w.check == SequenceCheck::RegFR) v.record("staircase sizes pre-strict", is_pre_strict(w.sizes));
  SequenceWitness seq{std::vector<RatMatrix>(a2.begin(), a2.begin() + k + 1), w.check, w.sizes, std::nullopt};
  check_sequence(v, "(a''_1..a''_{k+1}) in FR(K*)", seq, dual(inst.cone), opts);
  if (v.proven()) v.flags.push_back("infeasible");
  return v;
}

Verdict verify_dual_not_strongly_infeasible(const DualInstance& inst, const SequenceWitness& w,
                                            const VerifyOptions& opts) {
  inst.validate();
  Verdict v;
  if (!v.record("sequence is nonempty", !w.seq.empty())) return v;
  const ConeSpec ystar = dual(inst.cone);
  for (std::size_t j = 0; j < w.seq.size(); ++j)
    if (!element_ok(v, "y_" + std::to_string(j + 1), w.seq[j], ystar)) return v;
  const Index l = static_cast<Index>(w.seq.size()) - 1;
  for (Index j = 0; j < l; ++j) {
    RatVector r = apply_adjoint(inst.a, w.seq[static_cast<std::size_t>(j)]);
    v.record("A*y_" + std::to_string(j + 1) + " = 0", all_zero(r), vec_str(r));
  }
  RatVector last = apply_adjoint(inst.a, w.seq.back());
  v.record("A*y_" + std::to_string(l + 1) + " = c", last == inst.c, vec_str(RatVector(last - inst.c)));
  const Index bound = chain_length(inst.cone) - 1;
  v.record("l <= " + std::to_string(bound), l <= bound, "l = " + std::to_string(l));
  check_sequence(v, "(y_1..y_{l+1}) in FR(K)", w, inst.cone, opts);
  if (v.proven()) {
    v.flags.push_back("not_strongly_infeasible");
    if (l == 0) v.flags.push_back("actually_feasible");
  }
  return v;
}

namespace {

struct ReformulatedPrimal {
  std::vector<RatMatrix> a;
  RatMatrix b;
};

std::optional<ReformulatedPrimal> reformulate_primal(Verdict& v, const PrimalInstance& inst,
                                                     const PrimalReformulation& r) {
  if (!check_reformulation_maps(v, r.M, r.t, inst.m(), inst.cone)) return std::nullopt;
  if (!v.record("mu has length m", r.mu.size() == inst.m(), std::to_string(r.mu.size()))) return std::nullopt;
  const bool psd = inst.cone.is_single_psd();
  ReformulatedPrimal out;
  out.a = transform_operator(inst.a, r.M, r.t, psd);
  RatMatrix shifted = inst.b + apply_operator(inst.a, r.mu);
  out.b = psd ? congruence(r.t, shifted) : shifted;
  return out;
}

}  // namespace

Verdict verify_primal_infeasible(const PrimalInstance& inst, const PrimalInfeasibilityWitness& w,
                                 const VerifyOptions& opts) {
  inst.validate();
  Verdict v;
  ReformulatedPrimal data{inst.a, inst.b};
  if (w.reformulation) {
    auto r = reformulate_primal(v, inst, *w.reformulation);
    if (!r) return v;
    data = std::move(*r);
  }
  const auto& seq = w.y.seq;
  if (!v.record("sequence is nonempty", !seq.empty())) return v;
  const ConeSpec ystar = dual(inst.cone);
  for (std::size_t j = 0; j < seq.size(); ++j)
    if (!element_ok(v, "y_" + std::to_string(j + 1), seq[j], ystar)) return v;
  const Index k = static_cast<Index>(seq.size()) - 1;
  for (Index j = 0; j <= k; ++j) {
    const RatMatrix& y = seq[static_cast<std::size_t>(j)];
    const std::string nm = "y_" + std::to_string(j + 1);
    RatVector r = apply_adjoint(data.a, y);
    v.record("A*" + nm + " = 0", all_zero(r), vec_str(r));
    Rat by = inner_product(data.b, y);
    Rat want = j < k ? Rat(0) : Rat(-1);
    v.record("b." + nm + " = " + want.str(), by == want, by.str());
  }
  const Index bound = chain_length(inst.cone) - 1;
  v.record("k <= " + std::to_string(bound), k <= bound, "k = " + std::to_string(k));
  check_sequence(v, "(y_1..y_{k+1}) in FR(K)", w.y, inst.cone, opts);
  if (v.proven()) v.flags.push_back("infeasible");
  return v;
}

Verdict verify_primal_not_strongly_infeasible(const PrimalInstance& inst, const PrimalNotStronglyWitness& w,
                                              const VerifyOptions& opts) {
  inst.validate();
  Verdict v;
  auto r = reformulate_primal(v, inst, w.reformulation);
  if (!r) return v;
  const Index m = inst.m();
  const Index bound = std::min(m, chain_length(dual(inst.cone)) - 1);
  if (!v.record("0 <= l <= " + std::to_string(bound), w.ell >= 0 && w.ell <= bound, "l = " + std::to_string(w.ell)))
    return v;
  SequenceWitness seq{std::vector<RatMatrix>(r->a.begin(), r->a.begin() + w.ell), w.check, w.sizes, std::nullopt};
  seq.seq.push_back(r->b);
  check_sequence(v, "(a'_1..a'_l, b') in FR(K*)", seq, dual(inst.cone), opts);
  if (v.proven()) {
    v.flags.push_back("not_strongly_infeasible");
    if (w.ell == 0) v.flags.push_back("actually_feasible");
  }
  return v;
}

Verdict verify_nonclosedness_witness(const std::vector<RatMatrix>& a_ops, const ConeSpec& cone,
                                     const SequenceWitness& aseq, const SequenceWitness& yseq,
                                     const VerifyOptions& opts) {
  Verdict v = verify_pairing(a_ops, false, cone, aseq, yseq, opts);
  if (v.proven()) v.flags.push_back("image_not_closed");
  return v;
}

Verdict verify_non_niceness_witness(const std::vector<RatMatrix>& face_span, const ConeSpec& cone,
                                    const SequenceWitness& aseq, const SequenceWitness& yseq,
                                    const VerifyOptions& opts) {
  Verdict v = verify_pairing(face_span, true, cone, aseq, yseq, opts);
  if (v.proven()) v.flags.push_back("dual_plus_face_perp_not_closed");
  return v;
}

Verdict verify_bundle(const DualInstance& inst, const CertificateBundle& bundle, const VerifyOptions& opts) {
  Verdict v;
  if (!bundle.infeasible && !bundle.not_strongly) {
    v.record("bundle carries a dual certificate", false);
    return v;
  }
  if (bundle.infeasible) v.absorb(verify_dual_infeasible(inst, *bundle.infeasible, opts), "infeasible: ");
  if (bundle.not_strongly) v.absorb(verify_dual_not_strongly_infeasible(inst, *bundle.not_strongly, opts), "not-strongly: ");
  if (v.proven() && v.has_flag("infeasible") && v.has_flag("not_strongly_infeasible")) v.flags.push_back("weakly_infeasible");
  return v;
}

Verdict verify_bundle(const PrimalInstance& inst, const CertificateBundle& bundle, const VerifyOptions& opts) {
  Verdict v;
  if (!bundle.primal_infeasible && !bundle.primal_not_strongly) {
    v.record("bundle carries a primal certificate", false);
    return v;
  }
  if (bundle.primal_infeasible) v.absorb(verify_primal_infeasible(inst, *bundle.primal_infeasible, opts), "infeasible: ");
  if (bundle.primal_not_strongly)
    v.absorb(verify_primal_not_strongly_infeasible(inst, *bundle.primal_not_strongly, opts), "not-strongly: ");
  if (v.proven() && v.has_flag("infeasible") && v.has_flag("not_strongly_infeasible")) v.flags.push_back("weakly_infeasible");
  return v;
}

// ---- polyhedral oracle ----

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Feasible: return "feasible";
    case LpStatus::StronglyInfeasible: return "strongly_infeasible";
    case LpStatus::WeaklyInfeasible: return "weakly_infeasible";
  }
  return "?";
}

namespace {

void require_polyhedral(const ConeSpec& cone) {
  if (!cone.is_polyhedral()) throw DimensionError("polyhedral oracle needs orthant/zero/free blocks, got " + describe(cone));
}

// Adds "coeffs (in block kind) " rows for every coordinate: the coordinate
// expression e_j . x must lie in the block cone.
void add_cone_rows(LinearSystem& sys, const ConeSpec& cone, const std::function<RatVector(Index)>& coord_expr) {
  Index off = 0;
  for (const auto& b : cone.blocks) {
    for (Index j = off; j < off + b.dim; ++j) {
      switch (b.kind) {
        case ConeKind::Orthant: sys.add(coord_expr(j), Relation::Ge, Rat(0)); break;
        case ConeKind::Zero: sys.add(coord_expr(j), Relation::Eq, Rat(0)); break;
        default: break;
      }
    }
    off += b.dim;
  }
}

RatVector column_of(const RatMatrix& a) { return a.col(0); }

}  // namespace

LinearSystem dual_system(const DualInstance& inst) {
  inst.validate();
  require_polyhedral(inst.cone);
  LinearSystem sys;
  sys.num_vars = inst.cone.ambient_dim();
  for (Index i = 0; i < inst.m(); ++i) sys.add(column_of(inst.a[static_cast<std::size_t>(i)]), Relation::Eq, inst.c(i));
  add_cone_rows(sys, dual(inst.cone), [&](Index j) {
    RatVector e = RatVector::Constant(sys.num_vars, Rat(0));
    e(j) = 1;
    return e;
  });
  return sys;
}

LinearSystem dual_alt_system(const DualInstance& inst) {
  inst.validate();
  require_polyhedral(inst.cone);
  LinearSystem sys;
  sys.num_vars = inst.m();
  add_cone_rows(sys, inst.cone, [&](Index j) {
    RatVector e(inst.m());
    for (Index i = 0; i < inst.m(); ++i) e(i) = inst.a[static_cast<std::size_t>(i)](j, 0);
    return e;
  });
  sys.add(inst.c, Relation::Eq, Rat(-1));
  return sys;
}

LinearSystem primal_system(const PrimalInstance& inst) {
  inst.validate();
  require_polyhedral(inst.cone);
  LinearSystem sys;
  sys.num_vars = inst.m();
  // b_j - (Ax)_j in the block cone, written as -(Ax)_j rel -b_j.
  Index off = 0;
  for (const auto& b : inst.cone.blocks) {
    for (Index j = off; j < off + b.dim; ++j) {
      RatVector e(inst.m());
      for (Index i = 0; i < inst.m(); ++i) e(i) = -inst.a[static_cast<std::size_t>(i)](j, 0);
      if (b.kind == ConeKind::Orthant) sys.add(e, Relation::Ge, -inst.b(j, 0));
      else if (b.kind == ConeKind::Zero) sys.add(e, Relation::Eq, -inst.b(j, 0));
    }
    off += b.dim;
  }
  return sys;
}

LinearSystem primal_alt_system(const PrimalInstance& inst) {
  inst.validate();
  require_polyhedral(inst.cone);
  LinearSystem sys;
  sys.num_vars = inst.cone.ambient_dim();
  for (const auto& a : inst.a) sys.add(column_of(a), Relation::Eq, Rat(0));
  sys.add(column_of(inst.b), Relation::Eq, Rat(-1));
  add_cone_rows(sys, dual(inst.cone), [&](Index j) {
    RatVector e = RatVector::Constant(sys.num_vars, Rat(0));
    e(j) = 1;
    return e;
  });
  return sys;
}

namespace {

LpOracleResult decide(const LinearSystem& main, const LinearSystem& alt, std::size_t max_rows) {
  LpOracleResult out;
  FeasibilityResult f = solve_system(main, max_rows);
  if (f.feasible) {
    out.status = LpStatus::Feasible;
    out.point = f.point;
    return out;
  }
  out.farkas = f.farkas;
  FeasibilityResult g = solve_system(alt, max_rows);
  if (g.feasible) {
    out.status = LpStatus::StronglyInfeasible;
    out.alt_point = g.point;
  } else {
    out.status = LpStatus::WeaklyInfeasible;
  }
  return out;
}

}  // namespace

LpOracleResult lp_feasibility_oracle(const DualInstance& inst, std::size_t max_rows) {
  return decide(dual_system(inst), dual_alt_system(inst), max_rows);
}

LpOracleResult lp_feasibility_oracle(const PrimalInstance& inst, std::size_t max_rows) {
  return decide(primal_system(inst), primal_alt_system(inst), max_rows);
}

AltCheckResult alt_system_check(const DualInstance& inst, long range, Index max_support) {
  inst.validate();
  AltCheckResult out;
  const Index m = inst.m();
  if (all_zero(inst.c)) {
    out.exhaustive = true;
    return out;
  }
  auto decide_exactly = [&](const LinearSystem& sys) {
    FeasibilityResult f = solve_system(sys);
    out.exhaustive = true;
    if (f.feasible) {
      out.status = AltStatus::AltFeasible;
      out.x = f.point;
    }
    return out;
  };
  if (inst.cone.is_polyhedral()) return decide_exactly(dual_alt_system(inst));

  if (inst.cone.is_single_psd()) {
    bool diagonal = std::all_of(inst.a.begin(), inst.a.end(), [](const RatMatrix& a) { return a.isDiagonal(); });
    if (diagonal) {
      // Ax is psd exactly when its diagonal is nonnegative.
      LinearSystem sys;
      sys.num_vars = m;
      for (Index j = 0; j < inst.cone.element_rows(); ++j) {
        RatVector e(m);
        for (Index i = 0; i < m; ++i) e(i) = inst.a[static_cast<std::size_t>(i)](j, j);
        sys.add(e, Relation::Ge, Rat(0));
      }
      sys.add(inst.c, Relation::Eq, Rat(-1));
      return decide_exactly(sys);
    }
  }

  // Bounded search over small supports and small integer entries.
  std::vector<Index> support;
  std::function<bool(Index)> choose = [&](Index start) -> bool {
    if (!support.empty()) {
      const Index s = static_cast<Index>(support.size());
      std::vector<long> vals(static_cast<std::size_t>(s), -range);
      while (true) {
        bool nonzero = std::all_of(vals.begin(), vals.end(), [](long x) { return x != 0; });
        if (nonzero) {
          RatVector x = RatVector::Constant(m, Rat(0));
          for (Index t = 0; t < s; ++t) x(support[static_cast<std::size_t>(t)]) = vals[static_cast<std::size_t>(t)];
          Rat cx = inst.c.dot(x);
          if (cx != 0) {
            x *= Rat(-1) / cx;
            if (cone_membership(apply_operator(inst.a, x), inst.cone)) {
              out.status = AltStatus::AltFeasible;
              out.x = x;
              return true;
            }
          }
        }
        Index pos = 0;
        while (pos < s && vals[static_cast<std::size_t>(pos)] == range) vals[static_cast<std::size_t>(pos++)] = -range;
        if (pos == s) break;
        ++vals[static_cast<std::size_t>(pos)];
      }
    }
    if (static_cast<Index>(support.size()) == max_support) return false;
    for (Index i = start; i < m; ++i) {
      support.push_back(i);
      if (choose(i + 1)) return true;
      support.pop_back();
    }
    return false;
  };
  choose(0);
  return out;
}

}  // namespace frcert
