#ifndef FRCERT_SDPA_HPP
#define FRCERT_SDPA_HPP

#include "frcert/instance.hpp"

#include <string>
#include <vector>

namespace frcert {

/// SDPA sparse data: minimize c.x subject to sum_i x_i F_i - F_0 psd, where
/// every F is block diagonal. Negative block sizes are diagonal blocks.
struct SdpaEntry {
  Index matrix;  // 0 = F_0
  Index block;   // 1-based
  Index i, j;    // 1-based, i <= j
  Rat value;
};

struct SdpaProblem {
  Index m = 0;
  std::vector<Index> block_sizes;
  RatVector c;
  std::vector<SdpaEntry> entries;
  std::vector<std::string> comments;  // written as '*' lines
};

class SdpaFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes exact decimals when every value terminates; otherwise uses 17
/// significant digits and adds a lossy comment line.
std::string write_sdpa(const SdpaProblem& p);
SdpaProblem read_sdpa(const std::string& text);

/// F_i = a_i, F_0 = -objective (identity by default), rhs = c. Single PSD
/// block, or a single orthant block written as a diagonal block.
SdpaProblem export_sdpa(const DualInstance& inst);
DualInstance import_sdpa(const SdpaProblem& p);
DualInstance import_sdpa(const std::string& text);

/// Dense block-diagonal assembly of F_index.
std::vector<RatMatrix> sdpa_matrix(const SdpaProblem& p, Index index);

}  // namespace frcert

#endif  // FRCERT_SDPA_HPP
