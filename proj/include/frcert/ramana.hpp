#ifndef FRCERT_RAMANA_HPP
#define FRCERT_RAMANA_HPP

#include "frcert/sdpa.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frcert {

/// Extended dual of sup{<c,x> : sum x_i a_i <= b} over PSD(n) whose variable
/// is a facial reduction sequence (y_1..y_{k+1}), with y_i = u_i + w_i + w_i^T,
/// u_i psd, and [[u_1+..+u_{i-1}, w_i], [w_i^T, beta_i I]] psd for i >= 2.
///
/// Written as one SDPA problem (minimize b.y_{k+1}) over the variables
///   u_i  (i = 1..k+1, n(n+1)/2 each, upper triangle row-major)
///   w_i  (i = 2..k+1, n^2 each, row-major), beta_i (i = 2..k+1)
/// so N = (k+1) n(n+1)/2 + k (n^2 + 1). Blocks: k+1 blocks of order n,
/// k blocks of order 2n, and one diagonal block of 2E rows holding the
/// E = k(m+1) + m linear equalities as pairs of opposite inequalities.
struct RamanaDualSDP {
  Index n = 0, m = 0, k = 0;
  SdpaProblem sdp;

  Index num_vars() const;
  Index num_equalities() const;
  Index u_index(Index i, Index r, Index c) const;  // 1-based i, 0-based r, c; returns 0-based var
  Index w_index(Index i, Index r, Index c) const;  // i >= 2
  Index beta_index(Index i) const;                 // i >= 2
};

/// One value per variable block; index 0 of `w`/`beta` is unused (i = 1).
struct RamanaPoint {
  std::vector<RatMatrix> u;     // k+1 symmetric matrices
  std::vector<RatMatrix> w;     // k+1 entries, w[0] ignored
  std::vector<Rat> beta;        // k+1 entries, beta[0] ignored
};

RamanaDualSDP build_ramana_dual(const PrimalInstance& inst, Index k);

/// Packs a decomposition into the SDPA variable vector.
RatVector encode_point(const RamanaDualSDP& d, const RamanaPoint& pt);

/// y_i = u_i + w_i + w_i^T.
std::vector<RatMatrix> decoded_sequence(const RamanaDualSDP& d, const RamanaPoint& pt);

struct RamanaCheck {
  bool feasible = false;
  std::string first_violation;
  Rat objective;
};

/// Exact test that sum x_i F_i - F_0 is psd block by block.
RamanaCheck check_point(const RamanaDualSDP& d, const RatVector& x);

}  // namespace frcert

#endif  // FRCERT_RAMANA_HPP
