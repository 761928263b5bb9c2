#ifndef FRCERT_FOURIER_MOTZKIN_HPP
#define FRCERT_FOURIER_MOTZKIN_HPP

#include "frcert/linalg.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace frcert {

enum class Relation { Eq, Ge, Gt };

/// coeffs . x (relation) rhs
struct LinearConstraint {
  RatVector coeffs;
  Relation relation;
  Rat rhs;
};

class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LinearSystem {
  Index num_vars = 0;
  std::vector<LinearConstraint> rows;

  void add(RatVector coeffs, Relation rel, Rat rhs);
  /// x_j (relation) rhs
  void add_bound(Index j, Relation rel, Rat rhs);
};

struct FeasibilityResult {
  bool feasible = false;
  RatVector point;  // satisfies every row exactly when feasible
  /// When infeasible: multipliers lambda over the rows (free sign on Eq rows,
  /// nonnegative otherwise) with sum lambda_i coeffs_i = 0 and either
  /// sum lambda_i rhs_i > 0, or = 0 with positive weight on a Gt row.
  RatVector farkas;
};

/// Exact feasibility by equality substitution and Fourier-Motzkin
/// elimination with strict inequalities. Throws SizeGuardError when the
/// intermediate system outgrows max_rows.
FeasibilityResult solve_system(const LinearSystem& sys, std::size_t max_rows = 20000);

/// Checks a Farkas certificate produced by solve_system.
bool check_farkas(const LinearSystem& sys, const RatVector& lambda);

/// Checks that a point satisfies every row.
bool satisfies(const LinearSystem& sys, const RatVector& x);

}  // namespace frcert

#endif  // FRCERT_FOURIER_MOTZKIN_HPP
