#ifndef FRCERT_CONES_HPP
#define FRCERT_CONES_HPP

#include "frcert/linalg.hpp"

#include <string>
#include <vector>

namespace frcert {

/// Free is the whole space; it appears as the dual of a Zero block.
enum class ConeKind { Zero, Free, Orthant, SecondOrder, PSD };

std::string to_string(ConeKind kind);
ConeKind cone_kind_from_string(const std::string& name);

struct ConeBlock {
  ConeKind kind;
  Index dim;  // order n for PSD, vector length otherwise

  Index ambient_dim() const { return kind == ConeKind::PSD ? dim * (dim + 1) / 2 : dim; }
  bool is_vector() const { return kind != ConeKind::PSD; }
  bool operator==(const ConeBlock&) const = default;
};

/// Ordered product of primitive cone blocks.
///
/// Elements of a cone are stored as one matrix: an n x n symmetric matrix
/// when the cone is a single PSD block, and a d x 1 column (blocks laid out
/// consecutively) when every block is a vector cone.
struct ConeSpec {
  std::vector<ConeBlock> blocks;

  static ConeSpec psd(Index n) { return {{{ConeKind::PSD, n}}}; }
  static ConeSpec orthant(Index n) { return {{{ConeKind::Orthant, n}}}; }
  static ConeSpec second_order(Index n) { return {{{ConeKind::SecondOrder, n}}}; }

  ConeSpec times(const ConeSpec& other) const;
  Index ambient_dim() const;
  bool is_single_psd() const { return blocks.size() == 1 && blocks[0].kind == ConeKind::PSD; }
  bool is_vector() const;
  bool is_polyhedral() const;
  Index element_rows() const;
  Index element_cols() const { return is_single_psd() ? element_rows() : 1; }
  void validate() const;
  bool operator==(const ConeSpec&) const = default;
};

std::string describe(const ConeSpec& k);

ConeSpec dual(const ConeSpec& k);

/// Length of the longest chain of nonempty faces.
Index chain_length(const ConeSpec& k);

/// Splits a vector-cone element into per-block columns.
std::vector<RatVector> split_blocks(const RatMatrix& x, const ConeSpec& k);

/// Shape check for an element of the cone's space.
void require_element(const RatMatrix& x, const ConeSpec& k, const std::string& what);

bool cone_membership(const RatMatrix& x, const ConeSpec& k);
/// x in K*.
bool dual_cone_membership(const RatMatrix& x, const ConeSpec& k);

/// A face of R^n_+: {x >= 0 : x_i = 0 for i not in support}.
struct OrthantFace {
  std::vector<Index> support;
  bool operator==(const OrthantFace&) const = default;
};

bool fr_membership_orthant(const std::vector<RatVector>& seq, Index n);
bool fr_membership_soc(const std::vector<RatVector>& seq, Index n);
/// Exact, via nested rational kernels describing the faces met.
bool fr_membership_psd(const std::vector<RatMatrix>& seq, Index n);
bool fr_membership_block(const std::vector<RatMatrix>& seq, const ConeBlock& block);

/// seqs[b] is the sequence for block b.
bool fr_membership_product(const std::vector<std::vector<RatMatrix>>& seqs, const ConeSpec& k);

/// Membership of a sequence of whole-cone elements in FR(K).
bool fr_membership(const std::vector<RatMatrix>& seq, const ConeSpec& k);

/// Faces reached after applying an FR sequence of an orthant: the support
/// that survives. Throws if the sequence is not a member.
OrthantFace orthant_face_after(const std::vector<RatVector>& seq, Index n);

}  // namespace frcert

#endif  // FRCERT_CONES_HPP
