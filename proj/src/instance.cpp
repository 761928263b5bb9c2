#include "frcert/instance.hpp"

#include <stdexcept>

namespace frcert {

std::string to_string(SequenceCheck check) {
  switch (check) {
    case SequenceCheck::RegFR: return "regfr";
    case SequenceCheck::RevRegFR: return "revregfr";
    case SequenceCheck::ExactFaces: return "exact";
    case SequenceCheck::Rotation: return "rotation";
  }
  return "?";
}

SequenceCheck sequence_check_from_string(const std::string& name) {
  if (name == "regfr") return SequenceCheck::RegFR;
  if (name == "revregfr") return SequenceCheck::RevRegFR;
  if (name == "exact") return SequenceCheck::ExactFaces;
  if (name == "rotation") return SequenceCheck::Rotation;
  throw std::invalid_argument("unknown sequence check '" + name + "'");
}

void DualInstance::validate() const {
  cone.validate();
  if (a.empty()) throw DimensionError("instance has no constraints");
  if (c.size() != m())
    throw DimensionError("c has length " + std::to_string(c.size()) + " but there are " + std::to_string(m()) + " constraints");
  for (std::size_t i = 0; i < a.size(); ++i) require_element(a[i], cone, "a_" + std::to_string(i + 1));
  if (objective) require_element(*objective, cone, "objective");
}

void PrimalInstance::validate() const {
  cone.validate();
  if (a.empty()) throw DimensionError("instance has no variables");
  for (std::size_t i = 0; i < a.size(); ++i) require_element(a[i], cone, "a_" + std::to_string(i + 1));
  require_element(b, cone, "b");
  if (c && c->size() != m())
    throw DimensionError("c has length " + std::to_string(c->size()) + " but there are " + std::to_string(m()) + " variables");
}

bool same(const RatMatrix& x, const RatMatrix& y) {
  return x.rows() == y.rows() && x.cols() == y.cols() && x == y;
}

bool same(const RatVector& x, const RatVector& y) { return x.size() == y.size() && x == y; }

namespace {

bool same_list(const std::vector<RatMatrix>& x, const std::vector<RatMatrix>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!same(x[i], y[i])) return false;
  return true;
}

template <typename T, typename F>
bool same_opt(const std::optional<T>& x, const std::optional<T>& y, F eq) {
  if (x.has_value() != y.has_value()) return false;
  return !x || eq(*x, *y);
}

bool same_matrix_opt(const std::optional<RatMatrix>& x, const std::optional<RatMatrix>& y) {
  return same_opt(x, y, [](const RatMatrix& u, const RatMatrix& v) { return same(u, v); });
}

bool same_seq(const SequenceWitness& x, const SequenceWitness& y) {
  return same_list(x.seq, y.seq) && x.check == y.check && x.sizes == y.sizes && same_matrix_opt(x.rotation, y.rotation);
}

bool same_reform(const PrimalReformulation& x, const PrimalReformulation& y) {
  return same(x.M, y.M) && same(x.mu, y.mu) && same(x.t, y.t);
}

}  // namespace

bool same(const DualInstance& x, const DualInstance& y) {
  return same_list(x.a, y.a) && same(x.c, y.c) && x.cone == y.cone && same_matrix_opt(x.objective, y.objective);
}

bool same(const PrimalInstance& x, const PrimalInstance& y) {
  if (x.c.has_value() != y.c.has_value()) return false;
  if (x.c && !same(*x.c, *y.c)) return false;
  return same_list(x.a, y.a) && same(x.b, y.b) && x.cone == y.cone;
}

bool same(const CertificateBundle& x, const CertificateBundle& y) {
  auto inf = [](const InfeasibilityWitness& u, const InfeasibilityWitness& v) {
    return same(u.M, v.M) && same(u.t, v.t) && u.sizes == v.sizes && u.check == v.check;
  };
  auto seq = [](const SequenceWitness& u, const SequenceWitness& v) { return same_seq(u, v); };
  auto pinf = [](const PrimalInfeasibilityWitness& u, const PrimalInfeasibilityWitness& v) {
    return same_seq(u.y, v.y) && same_opt(u.reformulation, v.reformulation, same_reform);
  };
  auto pns = [](const PrimalNotStronglyWitness& u, const PrimalNotStronglyWitness& v) {
    return same_reform(u.reformulation, v.reformulation) && u.ell == v.ell && u.check == v.check && u.sizes == v.sizes;
  };
  return same_opt(x.infeasible, y.infeasible, inf) && same_opt(x.not_strongly, y.not_strongly, seq) &&
         same_opt(x.primal_infeasible, y.primal_infeasible, pinf) &&
         same_opt(x.primal_not_strongly, y.primal_not_strongly, pns) && x.label == y.label &&
         x.provenance == y.provenance;
}

}  // namespace frcert
