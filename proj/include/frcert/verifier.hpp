#ifndef FRCERT_VERIFIER_HPP
#define FRCERT_VERIFIER_HPP

#include "frcert/fourier_motzkin.hpp"
#include "frcert/instance.hpp"

#include <string>
#include <vector>

namespace frcert {

enum class VerdictStatus { Proven, Rejected };

struct CheckRecord {
  std::string name;
  bool passed = false;
  std::string residual;  // exact residual (or measured deviation for rotation checks)
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Proven;
  std::string reason;  // first failed check
  std::vector<CheckRecord> transcript;
  std::vector<std::string> flags;

  bool proven() const { return status == VerdictStatus::Proven; }
  bool has_flag(const std::string& f) const;
  /// Appends a check; the first failure turns the verdict into Rejected.
  bool record(std::string name, bool passed, std::string residual = {});
  void absorb(const Verdict& other, const std::string& prefix);
};

struct VerifyOptions {
  double tolerance = 1e-9;       // eigenvalue threshold of rotation checks
  double residual_bound = 1e-8;  // largest accepted rotation residual
};

/// Reformulation a''_i = t^T(sum_j M_ji a_j)t, c'' = M^T c must expose
/// c'' = (0,..,0,-1,*) with (a''_1..a''_{k+1}) in FR(K*).
Verdict verify_dual_infeasible(const DualInstance& inst, const InfeasibilityWitness& w,
                               const VerifyOptions& opts = {});

/// (y_1..y_{l+1}) in FR(K), A*y_i = 0 (i <= l), A*y_{l+1} = c.
Verdict verify_dual_not_strongly_infeasible(const DualInstance& inst, const SequenceWitness& y,
                                            const VerifyOptions& opts = {});

/// (y_1..y_{k+1}) in FR(K) with A*y_i = 0, b.y_i = 0 (i <= k),
/// A*y_{k+1} = 0, b.y_{k+1} = -1, after the optional reformulation.
Verdict verify_primal_infeasible(const PrimalInstance& inst, const PrimalInfeasibilityWitness& w,
                                 const VerifyOptions& opts = {});

/// (a'_1..a'_l, b') in FR(K*) after the reformulation.
Verdict verify_primal_not_strongly_infeasible(const PrimalInstance& inst, const PrimalNotStronglyWitness& w,
                                              const VerifyOptions& opts = {});

/// Witness that A*K* is not closed: a-sequence in FR(K*) inside R(A), y-sequence
/// in FR(K) with y_1..y_l in N(A*), <a_i, y_{l+1}> = 0 (i <= k), -1 (i = k+1).
Verdict verify_nonclosedness_witness(const std::vector<RatMatrix>& a_ops, const ConeSpec& cone,
                                     const SequenceWitness& aseq, const SequenceWitness& yseq,
                                     const VerifyOptions& opts = {});

/// Witness that K* + F^perp is not closed for the face F whose linear span
/// is spanned by face_span.
Verdict verify_non_niceness_witness(const std::vector<RatMatrix>& face_span, const ConeSpec& cone,
                                    const SequenceWitness& aseq, const SequenceWitness& yseq,
                                    const VerifyOptions& opts = {});

/// Membership check of a witnessed sequence in FR(cone).
bool check_sequence(Verdict& v, const std::string& name, const SequenceWitness& w, const ConeSpec& cone,
                    const VerifyOptions& opts);

/// Runs every witness present in the bundle against the instance.
Verdict verify_bundle(const DualInstance& inst, const CertificateBundle& bundle, const VerifyOptions& opts = {});
Verdict verify_bundle(const PrimalInstance& inst, const CertificateBundle& bundle, const VerifyOptions& opts = {});

// ---- polyhedral oracle ----

enum class LpStatus { Feasible, StronglyInfeasible, WeaklyInfeasible };
std::string to_string(LpStatus s);

struct LpOracleResult {
  LpStatus status = LpStatus::Feasible;
  RatVector point;      // feasible point of the system when Feasible
  RatVector alt_point;  // solution of the alternative system when StronglyInfeasible
  RatVector farkas;     // multipliers over the system rows when infeasible
};

/// Rows of {A*y = c, y in K*} over y (ambient coordinates).
LinearSystem dual_system(const DualInstance& inst);
/// Rows of {Ax in K, <c,x> = -1} over x.
LinearSystem dual_alt_system(const DualInstance& inst);
/// Rows of {b - Ax in K} over x.
LinearSystem primal_system(const PrimalInstance& inst);
/// Rows of {A*y = 0, y in K*, <b,y> = -1} over y.
LinearSystem primal_alt_system(const PrimalInstance& inst);

/// Exact decision for polyhedral cones (Orthant/Zero/Free blocks).
LpOracleResult lp_feasibility_oracle(const DualInstance& inst, std::size_t max_rows = 20000);
LpOracleResult lp_feasibility_oracle(const PrimalInstance& inst, std::size_t max_rows = 20000);

enum class AltStatus { AltFeasible, AltInfeasibleAtScale };

struct AltCheckResult {
  AltStatus status = AltStatus::AltInfeasibleAtScale;
  RatVector x;  // Ax in K and <c,x> = -1 when AltFeasible
  bool exhaustive = false;  // true when the search decided the question exactly
};

/// Searches for a strong-infeasibility witness x of a dual instance. A
/// negative answer is a proof only when `exhaustive` is set.
AltCheckResult alt_system_check(const DualInstance& inst, long range = 2, Index max_support = 2);

}  // namespace frcert

#endif  // FRCERT_VERIFIER_HPP
