#ifndef FRCERT_FACIAL_REDUCTION_HPP
#define FRCERT_FACIAL_REDUCTION_HPP

#include "frcert/instance.hpp"
#include "frcert/verifier.hpp"

#include <stdexcept>
#include <vector>

namespace frcert {

class InfeasibleInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Facial reduction of {y in K* : A*y = c} for K made of Orthant and Zero
/// (or Free) blocks.
struct ReductionResult {
  /// Orthant coordinates (ambient indices) not forced to zero: the minimal
  /// face of K* is {y in K* : y_j = 0 for orthant j outside this set}.
  OrthantFace minimal_face;
  std::vector<RatMatrix> fr_sequence;  // reducing vectors z_i = A x_i (d x 1)
  std::vector<RatVector> multipliers;  // the x_i, with <c, x_i> = 0
  Index steps = 0;
  Index step_bound = 0;  // min(chain length - 1, dim of the orthogonal complement of the affine set)
};

/// Each step picks a reducing vector of maximal support, so `steps` is an
/// upper bound on the singularity degree. Throws InfeasibleInputError when
/// the system is infeasible.
ReductionResult facial_reduce_polyhedral(const DualInstance& inst);

struct StrictReformulation {
  DualInstance reformulated;  // a'_i = sum_j M_ji a_j, c' = M^T c
  RatMatrix M;
  Index k = 0;                   // leading constraints with zero right-hand side
  RatVector relative_interior;   // feasible y positive on the whole minimal face
};

/// Completes the reducing multipliers to an invertible M so that the first
/// k constraints of the reformulation carry the reducing vectors, and finds
/// a point in the relative interior of the minimal face.
StrictReformulation strictly_feasible_reformulation(const ReductionResult& result, const DualInstance& inst);

/// Orthant coordinates y_j that are not identically zero over the feasible
/// set, computed independently by testing {system, y_j > 0} one at a time.
OrthantFace implicit_support_oracle(const DualInstance& inst);

}  // namespace frcert

#endif  // FRCERT_FACIAL_REDUCTION_HPP
