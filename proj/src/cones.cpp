#include "frcert/cones.hpp"

#include <stdexcept>

namespace frcert {

std::string to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::Zero: return "zero";
    case ConeKind::Free: return "free";
    case ConeKind::Orthant: return "orthant";
    case ConeKind::SecondOrder: return "soc";
    case ConeKind::PSD: return "psd";
  }
  return "?";
}

ConeKind cone_kind_from_string(const std::string& name) {
  if (name == "zero") return ConeKind::Zero;
  if (name == "free") return ConeKind::Free;
  if (name == "orthant") return ConeKind::Orthant;
  if (name == "soc") return ConeKind::SecondOrder;
  if (name == "psd") return ConeKind::PSD;
  throw std::invalid_argument("unknown cone kind '" + name + "'");
}

ConeSpec ConeSpec::times(const ConeSpec& other) const {
  ConeSpec out = *this;
  out.blocks.insert(out.blocks.end(), other.blocks.begin(), other.blocks.end());
  return out;
}

Index ConeSpec::ambient_dim() const {
  Index d = 0;
  for (const auto& b : blocks) d += b.ambient_dim();
  return d;
}

bool ConeSpec::is_vector() const {
  for (const auto& b : blocks)
    if (!b.is_vector()) return false;
  return true;
}

bool ConeSpec::is_polyhedral() const {
  for (const auto& b : blocks)
    if (b.kind == ConeKind::PSD || b.kind == ConeKind::SecondOrder) return false;
  return true;
}

Index ConeSpec::element_rows() const {
  if (is_single_psd()) return blocks[0].dim;
  if (!is_vector()) throw DimensionError("products mixing PSD and vector blocks have no single-matrix element form");
  return ambient_dim();
}

void ConeSpec::validate() const {
  if (blocks.empty()) throw DimensionError("cone has no blocks");
  for (const auto& b : blocks)
    if (b.dim < 1) throw DimensionError("cone block " + to_string(b.kind) + " has dimension " + std::to_string(b.dim));
}

std::string describe(const ConeSpec& k) {
  std::string s;
  for (const auto& b : k.blocks) {
    if (!s.empty()) s += " x ";
    s += to_string(b.kind) + "(" + std::to_string(b.dim) + ")";
  }
  return s;
}

ConeSpec dual(const ConeSpec& k) {
  ConeSpec out = k;
  for (auto& b : out.blocks) {
    if (b.kind == ConeKind::Zero) b.kind = ConeKind::Free;
    else if (b.kind == ConeKind::Free) b.kind = ConeKind::Zero;
  }
  return out;
}

namespace {

Index block_chain_length(const ConeBlock& b) {
  switch (b.kind) {
    case ConeKind::Zero:
    case ConeKind::Free: return 1;
    case ConeKind::Orthant:
    case ConeKind::PSD: return b.dim + 1;
    case ConeKind::SecondOrder: return b.dim >= 2 ? 3 : 2;
  }
  return 1;
}

RatVector as_column(const RatMatrix& m) {
  if (m.cols() != 1) throw DimensionError("vector cone element must be a column, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  return m.col(0);
}

bool soc_contains(const RatVector& x) {
  if (x.size() == 0) return true;
  if (x(0) < 0) return false;
  Rat tail(0);
  for (Index i = 1; i < x.size(); ++i) tail += x(i) * x(i);
  return x(0) * x(0) >= tail;
}

bool block_contains(const RatMatrix& x, const ConeBlock& b) {
  switch (b.kind) {
    case ConeKind::Zero:
      for (Index i = 0; i < x.size(); ++i)
        if (x(i) != 0) return false;
      return true;
    case ConeKind::Free: return true;
    case ConeKind::Orthant:
      for (Index i = 0; i < x.size(); ++i)
        if (x(i) < 0) return false;
      return true;
    case ConeKind::SecondOrder: return soc_contains(as_column(x));
    case ConeKind::PSD: return is_psd(x);
  }
  return false;
}

}  // namespace

Index chain_length(const ConeSpec& k) {
  Index total = 1;
  for (const auto& b : k.blocks) total += block_chain_length(b) - 1;
  return total;
}

std::vector<RatVector> split_blocks(const RatMatrix& x, const ConeSpec& k) {
  if (!k.is_vector()) throw DimensionError("split_blocks: cone has a PSD block");
  if (x.cols() != 1 || x.rows() != k.ambient_dim())
    throw DimensionError("split_blocks: element is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                         ", cone needs " + std::to_string(k.ambient_dim()) + "x1");
  std::vector<RatVector> out;
  Index off = 0;
  for (const auto& b : k.blocks) {
    out.emplace_back(x.col(0).segment(off, b.dim));
    off += b.dim;
  }
  return out;
}

void require_element(const RatMatrix& x, const ConeSpec& k, const std::string& what) {
  if (x.rows() != k.element_rows() || x.cols() != k.element_cols())
    throw DimensionError(what + " is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) + ", cone " +
                         describe(k) + " needs " + std::to_string(k.element_rows()) + "x" +
                         std::to_string(k.element_cols()));
  if (k.is_single_psd()) require_symmetric(x, what);
}

bool cone_membership(const RatMatrix& x, const ConeSpec& k) {
  require_element(x, k, "cone element");
  if (k.is_single_psd()) return is_psd(x);
  auto parts = split_blocks(x, k);
  for (std::size_t b = 0; b < parts.size(); ++b)
    if (!block_contains(parts[b], k.blocks[b])) return false;
  return true;
}

bool dual_cone_membership(const RatMatrix& x, const ConeSpec& k) { return cone_membership(x, dual(k)); }

OrthantFace orthant_face_after(const std::vector<RatVector>& seq, Index n) {
  OrthantFace face;
  for (Index i = 0; i < n; ++i) face.support.push_back(i);
  for (std::size_t s = 0; s < seq.size(); ++s) {
    const RatVector& y = seq[s];
    if (y.size() != n) throw DimensionError("orthant sequence member " + std::to_string(s) + " has length " + std::to_string(y.size()) + ", expected " + std::to_string(n));
    std::vector<Index> next;
    for (Index j : face.support) {
      if (y(j) < 0) throw std::domain_error("sequence leaves the facial reduction cone at member " + std::to_string(s));
      if (y(j) == 0) next.push_back(j);
    }
    face.support = std::move(next);
  }
  return face;
}

bool fr_membership_orthant(const std::vector<RatVector>& seq, Index n) {
  try {
    orthant_face_after(seq, n);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

bool fr_membership_soc(const std::vector<RatVector>& seq, Index n) {
  // Face lattice: whole cone, an extreme ray, {0}.
  enum class Level { Whole, Ray, Origin } level = Level::Whole;
  RatVector ray;
  for (std::size_t s = 0; s < seq.size(); ++s) {
    const RatVector& y = seq[s];
    if (y.size() != n) throw DimensionError("soc sequence member " + std::to_string(s) + " has length " + std::to_string(y.size()) + ", expected " + std::to_string(n));
    if (level == Level::Origin) continue;
    if (level == Level::Ray) {
      Rat v = inner_product(y, ray);
      if (v < 0) return false;
      if (v > 0) level = Level::Origin;
      continue;
    }
    if (!soc_contains(y)) return false;
    if (y.isZero()) continue;
    Rat tail(0);
    for (Index i = 1; i < n; ++i) tail += y(i) * y(i);
    if (y(0) * y(0) > tail) {
      level = Level::Origin;
    } else {
      ray = -y;
      ray(0) = y(0);
      level = Level::Ray;
    }
  }
  return true;
}

bool fr_membership_psd(const std::vector<RatMatrix>& seq, Index n) {
  RatMatrix v = identity(n);  // columns span the range allowed by the current face
  for (std::size_t s = 0; s < seq.size(); ++s) {
    const RatMatrix& y = seq[s];
    if (y.rows() != n || y.cols() != n) throw DimensionError("psd sequence member " + std::to_string(s) + " is not " + std::to_string(n) + "x" + std::to_string(n));
    require_symmetric(y, "psd sequence member " + std::to_string(s));
    if (v.cols() == 0) continue;
    RatMatrix w = congruence(v, y);
    if (!is_psd(w)) return false;
    v = restricted_kernel(v, y);
  }
  return true;
}

bool fr_membership_block(const std::vector<RatMatrix>& seq, const ConeBlock& block) {
  if (block.kind == ConeKind::PSD) return fr_membership_psd(seq, block.dim);
  std::vector<RatVector> cols;
  for (const auto& y : seq) {
    RatVector c = as_column(y);
    if (c.size() != block.dim) throw DimensionError("block sequence member has length " + std::to_string(c.size()) + ", expected " + std::to_string(block.dim));
    cols.push_back(c);
  }
  switch (block.kind) {
    case ConeKind::Zero: return true;
    case ConeKind::Free:
      for (const auto& c : cols)
        if (!c.isZero()) return false;
      return true;
    case ConeKind::Orthant: return fr_membership_orthant(cols, block.dim);
    case ConeKind::SecondOrder: return fr_membership_soc(cols, block.dim);
    case ConeKind::PSD: break;
  }
  return false;
}

bool fr_membership_product(const std::vector<std::vector<RatMatrix>>& seqs, const ConeSpec& k) {
  if (seqs.size() != k.blocks.size())
    throw DimensionError("fr_membership_product: " + std::to_string(seqs.size()) + " block sequences for " + std::to_string(k.blocks.size()) + " blocks");
  for (std::size_t b = 1; b < seqs.size(); ++b)
    if (seqs[b].size() != seqs[0].size()) throw DimensionError("fr_membership_product: block sequences differ in length");
  for (std::size_t b = 0; b < seqs.size(); ++b)
    if (!fr_membership_block(seqs[b], k.blocks[b])) return false;
  return true;
}

bool fr_membership(const std::vector<RatMatrix>& seq, const ConeSpec& k) {
  k.validate();
  if (k.is_single_psd()) return fr_membership_psd(seq, k.blocks[0].dim);
  std::vector<std::vector<RatMatrix>> per_block(k.blocks.size());
  for (const auto& y : seq) {
    auto parts = split_blocks(y, k);
    for (std::size_t b = 0; b < parts.size(); ++b) per_block[b].push_back(parts[b]);
  }
  return fr_membership_product(per_block, k);
}

}  // namespace frcert
