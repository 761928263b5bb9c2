#include "frcert/facial_reduction.hpp"

namespace frcert {
namespace {

enum class CoordRole { Orthant, Free, Zero };  // role of a coordinate of y in K*

std::vector<CoordRole> roles_of(const ConeSpec& k_star) {
  std::vector<CoordRole> roles;
  for (const auto& b : k_star.blocks) {
    CoordRole r = b.kind == ConeKind::Orthant ? CoordRole::Orthant
                  : b.kind == ConeKind::Free  ? CoordRole::Free
                                              : CoordRole::Zero;
    for (Index j = 0; j < b.dim; ++j) roles.push_back(r);
  }
  return roles;
}

RatVector coordinate_row(const DualInstance& inst, Index j) {
  RatVector e(inst.m());
  for (Index i = 0; i < inst.m(); ++i) e(i) = inst.a[static_cast<std::size_t>(i)](j, 0);
  return e;
}

}  // namespace

ReductionResult facial_reduce_polyhedral(const DualInstance& inst) {
  inst.validate();
  if (!inst.cone.is_polyhedral()) throw DimensionError("facial reduction needs a polyhedral cone, got " + describe(inst.cone));
  if (!solve_system(dual_system(inst)).feasible) throw InfeasibleInputError("facial reduction needs a feasible system");

  const Index d = inst.cone.ambient_dim(), m = inst.m();
  const std::vector<CoordRole> roles = roles_of(dual(inst.cone));
  ReductionResult res;
  for (Index j = 0; j < d; ++j)
    if (roles[static_cast<std::size_t>(j)] == CoordRole::Orthant) res.minimal_face.support.push_back(j);

  // dim of {Ax : <c,x> = 0}.
  RatMatrix ct(1, m);
  ct.row(0) = inst.c.transpose();
  std::vector<RatVector> kc = kernel_basis(ct);
  RatMatrix amat(d, m);
  for (Index i = 0; i < m; ++i) amat.col(i) = inst.a[static_cast<std::size_t>(i)].col(0);
  RatMatrix kmat(m, static_cast<Index>(kc.size()));
  for (std::size_t j = 0; j < kc.size(); ++j) kmat.col(static_cast<Index>(j)) = kc[j];
  const Index dim_perp = kc.empty() ? 0 : rank(RatMatrix(amat * kmat));
  res.step_bound = std::min(chain_length(dual(inst.cone)) - 1, dim_perp);

  while (true) {
    // Reducing vectors z = Ax: <c,x> = 0, z >= 0 on the surviving support,
    // z = 0 on coordinates whose dual block is the zero cone, z_j > 0 somewhere.
    std::vector<bool> surviving(static_cast<std::size_t>(d), false);
    for (Index j : res.minimal_face.support) surviving[static_cast<std::size_t>(j)] = true;
    LinearSystem base;
    base.num_vars = m;
    base.add(inst.c, Relation::Eq, Rat(0));
    for (Index j = 0; j < d; ++j) {
      if (surviving[static_cast<std::size_t>(j)]) base.add(coordinate_row(inst, j), Relation::Ge, Rat(0));
      else if (roles[static_cast<std::size_t>(j)] == CoordRole::Free) base.add(coordinate_row(inst, j), Relation::Eq, Rat(0));
    }
    RatVector x = RatVector::Constant(m, Rat(0));
    bool found = false;
    for (Index j : res.minimal_face.support) {
      LinearSystem sys = base;
      sys.add(coordinate_row(inst, j), Relation::Ge, Rat(1));
      FeasibilityResult f = solve_system(sys);
      if (f.feasible) {
        x += f.point;
        found = true;
      }
    }
    if (!found) break;
    RatMatrix z = RatMatrix(amat * x);
    std::vector<Index> next;
    for (Index j : res.minimal_face.support)
      if (z(j, 0) == 0) next.push_back(j);
    res.minimal_face.support = std::move(next);
    res.fr_sequence.push_back(z);
    res.multipliers.push_back(x);
    ++res.steps;
  }
  return res;
}

StrictReformulation strictly_feasible_reformulation(const ReductionResult& result, const DualInstance& inst) {
  inst.validate();
  const Index m = inst.m(), d = inst.cone.ambient_dim();
  StrictReformulation out;
  out.k = static_cast<Index>(result.multipliers.size());

  // M = [x_1 .. x_k, completing unit vectors].
  std::vector<RatVector> cols = result.multipliers;
  for (Index e = 0; e < m && static_cast<Index>(cols.size()) < m; ++e) {
    RatVector u = RatVector::Constant(m, Rat(0));
    u(e) = 1;
    std::vector<RatMatrix> trial;
    for (const auto& c : cols) trial.emplace_back(c);
    trial.emplace_back(u);
    if (rank(stack_vectorized(trial)) == static_cast<Index>(trial.size())) cols.push_back(u);
  }
  if (static_cast<Index>(cols.size()) != m) throw DimensionError("reducing multipliers are linearly dependent");
  out.M = RatMatrix(m, m);
  for (Index j = 0; j < m; ++j) out.M.col(j) = cols[static_cast<std::size_t>(j)];

  out.reformulated = inst;
  for (Index i = 0; i < m; ++i) out.reformulated.a[static_cast<std::size_t>(i)] = apply_operator(inst.a, out.M.col(i));
  out.reformulated.c = out.M.transpose() * inst.c;

  // Relative interior: feasible y, positive on the minimal support.
  LinearSystem sys = dual_system(inst);
  std::vector<bool> keep(static_cast<std::size_t>(d), false);
  for (Index j : result.minimal_face.support) keep[static_cast<std::size_t>(j)] = true;
  const auto roles = roles_of(dual(inst.cone));
  for (Index j = 0; j < d; ++j) {
    if (roles[static_cast<std::size_t>(j)] != CoordRole::Orthant) continue;
    sys.add_bound(j, keep[static_cast<std::size_t>(j)] ? Relation::Gt : Relation::Eq, Rat(0));
  }
  FeasibilityResult f = solve_system(sys);
  if (!f.feasible) throw std::logic_error("minimal face has no relative interior feasible point");
  out.relative_interior = f.point;
  return out;
}

OrthantFace implicit_support_oracle(const DualInstance& inst) {
  const LinearSystem base = dual_system(inst);
  const auto roles = roles_of(dual(inst.cone));
  OrthantFace face;
  for (Index j = 0; j < inst.cone.ambient_dim(); ++j) {
    if (roles[static_cast<std::size_t>(j)] != CoordRole::Orthant) continue;
    LinearSystem sys = base;
    sys.add_bound(j, Relation::Gt, Rat(0));
    if (solve_system(sys).feasible) face.support.push_back(j);
  }
  return face;
}

}  // namespace frcert
