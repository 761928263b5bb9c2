#ifndef FRCERT_GENERATOR_HPP
#define FRCERT_GENERATOR_HPP

#include "frcert/instance.hpp"
#include "frcert/rng.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace frcert {

inline constexpr const char* kGeneratorVersion = "1.0";

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GenParams {
  Index n = 10, m = 10, k = 2, ell = 1;
  BlockSizes p{2, 3, 2};  // k + 1 sizes
  BlockSizes q{2, 1};     // ell + 1 sizes
  long range = 2;         // free entries are uniform integers in [-range, range]
  std::uint64_t seed = 1;
  bool mess = false;

  /// "paper-m10" and "paper-m20": n=10, k=2, p=(2,3,2), l=1, q=(2,1).
  static GenParams preset(const std::string& name);

  void validate_infeasible() const;
  void validate_weak() const;
};

struct Generated {
  DualInstance instance;
  CertificateBundle bundle;
};

/// Staircase a_1..a_{k+1} with sizes p, c = (0,..,0,-1,*), remaining a_i
/// random. Certificate: M = t = I.
Generated gen_infeasible(const GenParams& params);

/// Staircase a-sequence (sizes p, from the top-left) and reversed staircase
/// y-sequence (sizes q, from the bottom-right) with <a_i, y_j> = 0 except
/// <a_{k+1}, y_{l+1}> = -1; the extra a_i are orthogonal to y_1..y_l.
Generated gen_weak(const GenParams& params);

/// Largest m gen_weak can reach for the given y_1..y_l: the dimension of
/// the symmetric matrices orthogonal to all of them.
Index max_weak_constraints(const std::vector<RatMatrix>& y_prefix);

/// Sets the block a(P, Q) and y(P, Q) (and mirrors) so that <a, y> = target.
/// With an rng, both blocks are resampled first (the a pivot nonzero);
/// without one, the supplied entries are kept and only the y pivot
/// (first entry of the block) is solved for.
void step_star(RatMatrix& a, RatMatrix& y, const Rat& target, const std::vector<Index>& P,
               const std::vector<Index>& Q, SplitMix64* rng = nullptr, long range = 2);

/// Random integer row operations t and congruence v (entries in [-2,2],
/// resampled until invertible): a_i' = v^T(sum_j t_ij a_j)v, c' = t c, with
/// the certificates carried along.
Generated mess(const Generated& g, std::uint64_t seed, long range = 2);
/// The same transformation with given invertible t (m x m) and v (n x n).
Generated mess(const Generated& g, const RatMatrix& t, const RatMatrix& v);

/// Random invertible integer matrix with entries in [-range, range].
RatMatrix random_invertible(Index n, SplitMix64& rng, long range = 2, int max_draws = 1000);

}  // namespace frcert

#endif  // FRCERT_GENERATOR_HPP
