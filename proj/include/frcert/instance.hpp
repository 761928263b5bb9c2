#ifndef FRCERT_INSTANCE_HPP
#define FRCERT_INSTANCE_HPP

#include "frcert/cones.hpp"
#include "frcert/fr_sequences.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace frcert {

/// Dual-form system: <a_i, y> = c_i (i = 1..m), y in K*.
struct DualInstance {
  std::vector<RatMatrix> a;
  RatVector c;
  ConeSpec cone;
  std::optional<RatMatrix> objective;  // defaults to the identity when exported

  Index m() const { return static_cast<Index>(a.size()); }
  void validate() const;
};

/// Primal-form system: sum_i x_i a_i <=_K b, optionally maximizing <c, x>.
struct PrimalInstance {
  std::vector<RatMatrix> a;
  RatMatrix b;
  ConeSpec cone;
  std::optional<RatVector> c;

  Index m() const { return static_cast<Index>(a.size()); }
  void validate() const;
};

/// How membership of a sequence in a facial reduction cone is established.
enum class SequenceCheck {
  RegFR,       // r^T y_i r has the staircase pattern (exact)
  RevRegFR,    // r^T y_i r has the reversed staircase pattern (exact)
  ExactFaces,  // face-by-face exact test
  Rotation,    // floating-point rotation, residual against tolerance
};

std::string to_string(SequenceCheck check);
SequenceCheck sequence_check_from_string(const std::string& name);

/// Row operations M (m x m) and congruence t (n x n) taking an instance to
/// staircase form: a''_i = t^T (sum_j M_ji a_j) t, c'' = M^T c.
struct InfeasibilityWitness {
  RatMatrix M;
  RatMatrix t;
  BlockSizes sizes;  // k + 1 staircase sizes of a''_1 .. a''_{k+1}
  SequenceCheck check = SequenceCheck::RegFR;
};

struct SequenceWitness {
  std::vector<RatMatrix> seq;
  SequenceCheck check = SequenceCheck::ExactFaces;
  BlockSizes sizes;                  // for the structural checks
  std::optional<RatMatrix> rotation; // r, optional for the structural checks
};

/// Column operations M, shift mu and congruence t of a primal system:
/// a'_i = t^T (sum_j M_ji a_j) t, b' = t^T (b + sum_j mu_j a_j) t.
struct PrimalReformulation {
  RatMatrix M;
  RatVector mu;
  RatMatrix t;
};

struct PrimalInfeasibilityWitness {
  SequenceWitness y;
  std::optional<PrimalReformulation> reformulation;
};

/// (a'_1, ..., a'_l, b') is checked as a facial reduction sequence of K*.
struct PrimalNotStronglyWitness {
  PrimalReformulation reformulation;
  Index ell = 0;
  SequenceCheck check = SequenceCheck::RegFR;
  BlockSizes sizes;  // l + 1 sizes for the structural checks
};

struct CertificateBundle {
  std::optional<InfeasibilityWitness> infeasible;
  std::optional<SequenceWitness> not_strongly;
  std::optional<PrimalInfeasibilityWitness> primal_infeasible;
  std::optional<PrimalNotStronglyWitness> primal_not_strongly;
  std::string label;
  std::map<std::string, std::string> provenance;

  bool empty() const {
    return !infeasible && !not_strongly && !primal_infeasible && !primal_not_strongly;
  }
};

/// Exact structural equality (shapes compared before entries).
bool same(const RatMatrix& x, const RatMatrix& y);
bool same(const RatVector& x, const RatVector& y);
bool same(const DualInstance& x, const DualInstance& y);
bool same(const PrimalInstance& x, const PrimalInstance& y);
bool same(const CertificateBundle& x, const CertificateBundle& y);

}  // namespace frcert

#endif  // FRCERT_INSTANCE_HPP
