#ifndef FRCERT_FR_SEQUENCES_HPP
#define FRCERT_FR_SEQUENCES_HPP

#include "frcert/linalg.hpp"

#include <vector>

namespace frcert {

using BlockSizes = std::vector<Index>;

/// Forward blocks start at the top-left corner, reverse blocks at the
/// bottom-right corner and move upward.
enum class BlockDirection { Forward, Reverse };

/// Index sets (0-based) of consecutive blocks with the given sizes.
std::vector<std::vector<Index>> blocks(const BlockSizes& sizes, Index n, BlockDirection direction);

/// Staircase pattern: matrix i carries an identity of order p_i right after
/// the first p_1+...+p_{i-1} rows/cols, zeros in the rest of that trailing
/// corner, and arbitrary entries in the leading rows (and their mirror).
bool validate_regfr(const std::vector<RatMatrix>& seq, const BlockSizes& sizes);

/// Mirror image of the staircase anchored at the bottom-right corner.
bool validate_revregfr(const std::vector<RatMatrix>& seq, const BlockSizes& sizes);

bool is_strict(const BlockSizes& sizes);
bool is_pre_strict(const BlockSizes& sizes);

/// Largest entrywise deviation of a floating-point sequence from the
/// staircase pattern with the given sizes.
double regfr_deviation(const std::vector<Matrix<double>>& seq, const BlockSizes& sizes);

struct RotationResult {
  Matrix<double> t;                    // accumulated congruence
  std::vector<Matrix<double>> rotated; // t^T y_i t
  BlockSizes sizes;                    // detected identity block orders
  double residual = 0.0;               // pattern deviation plus negative curvature found
};

/// Congruence bringing a (claimed) PSD facial reduction sequence to
/// staircase form, built one member at a time from eigendecompositions of
/// the trailing principal block. Floating point; residual is reported.
RotationResult rotate_to_regfr(const std::vector<Matrix<double>>& seq, double tolerance = 1e-9);
RotationResult rotate_to_regfr(const std::vector<RatMatrix>& seq, double tolerance = 1e-9);

}  // namespace frcert

#endif  // FRCERT_FR_SEQUENCES_HPP
