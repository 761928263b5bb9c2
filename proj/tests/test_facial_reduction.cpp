#include <doctest.h>

#include "frcert/facial_reduction.hpp"
#include "frcert/ramana.hpp"
#include "frcert/verifier.hpp"
#include "lp_oracles.hpp"
#include "oracles.hpp"
#include "published_fixtures.hpp"

using namespace frcert;
using fixtures::q;

namespace {

RatMatrix col(std::initializer_list<Rat> v) { return RatMatrix(make_vector(v)); }

}  // namespace

using namespace lp_oracle;

TEST_CASE("one reducing step exposes the forced zeros") {
  auto d = orthant_system({make_vector({1, 1, 0}), make_vector({0, 0, 1})}, make_vector({0, 1}));
  ReductionResult r = facial_reduce_polyhedral(d);
  CHECK(r.steps == 1);
  CHECK(r.minimal_face.support == std::vector<Index>{2});
  CHECK(implicit_support_oracle(d).support == std::vector<Index>{2});
  REQUIRE(r.fr_sequence.size() == 1);
  CHECK(fr_membership({r.fr_sequence[0]}, ConeSpec::orthant(3)));

  StrictReformulation s = strictly_feasible_reformulation(r, d);
  CHECK(s.k == 1);
  CHECK(s.reformulated.c(0) == 0);
  CHECK(s.relative_interior == make_vector({0, 0, 1}));
  CHECK(apply_adjoint(s.reformulated.a, RatMatrix(s.relative_interior)) == s.reformulated.c);
}

TEST_CASE("strictly feasible systems need no reduction") {
  auto d = orthant_system({make_vector({1, 1, 1})}, make_vector({3}));
  ReductionResult r = facial_reduce_polyhedral(d);
  CHECK(r.steps == 0);
  CHECK(r.minimal_face.support == std::vector<Index>{0, 1, 2});
  StrictReformulation s = strictly_feasible_reformulation(r, d);
  CHECK(s.k == 0);
  CHECK(s.M == identity(1));
  CHECK(same(s.reformulated, d));
  for (Index j = 0; j < 3; ++j) CHECK(s.relative_interior(j) > 0);
}

TEST_CASE("infeasible and non-polyhedral inputs are errors") {
  CHECK_THROWS_AS(facial_reduce_polyhedral(orthant_system({make_vector({1, 1})}, make_vector({-1}))), InfeasibleInputError);
  CHECK_THROWS_AS(facial_reduce_polyhedral(fixtures::two_by_two()), DimensionError);
}

TEST_CASE("free coordinates of y") {
  // K = Zero(1) x R^2_+ so y_0 is free: y_0 + y_1 = 0 does not force y_1 = 0.
  DualInstance d;
  d.cone = ConeSpec{{{ConeKind::Zero, 1}, {ConeKind::Orthant, 2}}};
  d.a = {col({1, 1, 0}), col({0, 1, 1})};
  d.c = make_vector({0, 0});
  ReductionResult r = facial_reduce_polyhedral(d);
  CHECK(r.steps == 1);
  CHECK(r.minimal_face.support.empty());
  CHECK(implicit_support_oracle(d).support.empty());
  d.c = make_vector({0, 1});
  r = facial_reduce_polyhedral(d);
  CHECK(r.steps == 0);
  CHECK(r.minimal_face.support == std::vector<Index>{1, 2});
}

TEST_CASE("random feasible systems match the vertex oracle") {
  SplitMix64 rng(61);
  int reduced = 0;
  for (int it = 0; it < 60; ++it) {
    const Index n = rng.uniform(2, 5), m = rng.uniform(1, 3);
    RatVector y0(n);
    for (Index j = 0; j < n; ++j) y0(j) = rng.uniform(0, 1) ? Rat(rng.uniform(1, 2)) : Rat(0);
    std::vector<RatVector> rows;
    RatVector c(m);
    for (Index i = 0; i < m; ++i) {
      RatVector a(n);
      const bool sign_row = rng.uniform(0, 2) == 0;
      for (Index j = 0; j < n; ++j) {
        a(j) = Rat(rng.uniform(-2, 2));
        if (sign_row) a(j) = y0(j) == 0 ? Rat(rng.uniform(0, 2)) : Rat(0);
      }
      rows.push_back(a);
      c(i) = a.dot(y0);
    }
    auto d = orthant_system(rows, c);
    ReductionResult r = facial_reduce_polyhedral(d);
    CHECK(r.minimal_face.support == vertex_ray_support(d));
    CHECK(r.minimal_face.support == implicit_support_oracle(d).support);

    RatMatrix B(m, n);
    for (Index i = 0; i < m; ++i) B.row(i) = rows[static_cast<std::size_t>(i)].transpose();
    RatMatrix A = B.transpose();
    RatMatrix stacked(n + 1, m);
    stacked.topRows(n) = A;
    stacked.row(n) = c.transpose();
    RatMatrix ct(1, m);
    ct.row(0) = c.transpose();
    const Index dim_perp = oracle::rank_by_minors(stacked) - oracle::rank_by_minors(ct);
    CHECK(r.step_bound == std::min<Index>(n, dim_perp));
    CHECK(r.steps <= r.step_bound);
    reduced += r.steps > 0;

    for (std::size_t s = 0; s < r.fr_sequence.size(); ++s) CHECK(c.dot(r.multipliers[s]) == 0);
    if (!r.fr_sequence.empty()) CHECK(oracle::rank_by_minors(stack_vectorized(r.fr_sequence)) == r.steps);
    CHECK(fr_membership(r.fr_sequence, ConeSpec::orthant(n)));

    StrictReformulation s = strictly_feasible_reformulation(r, d);
    CHECK(s.reformulated.c.head(s.k).isZero());
    CHECK(oracle::determinant(s.M) != 0);
    RatMatrix yri(s.relative_interior);
    CHECK(apply_adjoint(d.a, yri) == d.c);
    CHECK(apply_adjoint(s.reformulated.a, yri) == s.reformulated.c);
    for (Index j = 0; j < n; ++j) {
      bool in = std::find(r.minimal_face.support.begin(), r.minimal_face.support.end(), j) != r.minimal_face.support.end();
      CHECK((s.relative_interior(j) > 0) == in);
      CHECK(s.relative_interior(j) >= 0);
    }
    // Same feasible set: y0 solves both.
    CHECK(apply_adjoint(s.reformulated.a, RatMatrix(y0)) == s.reformulated.c);
  }
  CHECK(reduced > 5);
}

TEST_CASE("extended dual at k = 0 is the plain dual") {
  auto p = fixtures::three_by_three_primal();
  RamanaDualSDP d = build_ramana_dual(p, 0);
  CHECK(d.num_vars() == 6);
  CHECK(d.num_equalities() == 2);
  CHECK(d.sdp.block_sizes == std::vector<Index>{3, -4});
  RamanaPoint pt{{fixtures::E(3, 3, 3)}, {}, {}};
  // y = E33 is psd but <a_1, y> = 0 != c_1 = 1.
  RamanaCheck chk = check_point(d, encode_point(d, pt));
  CHECK_FALSE(chk.feasible);
}

TEST_CASE("extended dual dimensions for a 2x2 system") {
  PrimalInstance p;
  p.cone = ConeSpec::psd(2);
  p.a = {identity(2)};
  p.b = identity(2);
  p.c = make_vector({1});
  RamanaDualSDP d = build_ramana_dual(p, 1);
  CHECK(d.num_vars() == 2 * 3 + 1 * (4 + 1));
  CHECK(d.num_equalities() == 1 * (1 + 1) + 1);
  CHECK(d.sdp.block_sizes == std::vector<Index>{2, 2, 4, -6});
  CHECK(d.sdp.m == d.num_vars());
  RamanaPoint pt{{zeros(2, 2), make_matrix({{q(1, 2), 0}, {0, q(1, 2)}})}, {zeros(2, 2), zeros(2, 2)}, {Rat(0), Rat(0)}};
  RamanaCheck chk = check_point(d, encode_point(d, pt));
  CHECK_MESSAGE(chk.feasible, chk.first_violation);
  CHECK(chk.objective == 1);
  CHECK_THROWS_AS(build_ramana_dual(p, 2), std::out_of_range);
  p.c.reset();
  CHECK_THROWS_AS(build_ramana_dual(p, 1), DimensionError);
}

TEST_CASE("extended dual accepts the known 3x3 solution") {
  auto p = fixtures::three_by_three_primal();
  RamanaDualSDP d = build_ramana_dual(p, 2);
  RamanaPoint pt;
  pt.u = {fixtures::E(3, 3, 3), make_matrix({{0, 0, 0}, {0, 2, 0}, {0, 0, 0}}), zeros(3, 3)};
  RatMatrix w2 = zeros(3, 3), w3 = zeros(3, 3);
  w2(2, 0) = -1;
  w3(1, 0) = q(1, 2);
  pt.w = {zeros(3, 3), w2, w3};
  pt.beta = {Rat(0), Rat(1), Rat(1)};
  auto ys = decoded_sequence(d, pt);
  auto expected = fixtures::three_by_three_dual_solution();
  for (std::size_t i = 0; i < 3; ++i) CHECK(ys[i] == expected[i]);
  RamanaCheck chk = check_point(d, encode_point(d, pt));
  CHECK_MESSAGE(chk.feasible, chk.first_violation);
  CHECK(chk.objective == 0);

  pt.beta[2] = Rat(1, 100);  // corner block loses semidefiniteness
  CHECK_FALSE(check_point(d, encode_point(d, pt)).feasible);
  pt.beta[2] = 1;
  pt.u[2](0, 0) = 1;  // still feasible, objective b.y_3 moves to 1
  chk = check_point(d, encode_point(d, pt));
  CHECK(chk.feasible);
  CHECK(chk.objective == 1);
  pt.u[2](1, 1) = 1;  // <a_2, y_3> becomes 1
  CHECK_FALSE(check_point(d, encode_point(d, pt)).feasible);
}

TEST_CASE("extended dual variables are distinct") {
  auto p = fixtures::three_by_three_primal();
  RamanaDualSDP d = build_ramana_dual(p, 2);
  std::vector<bool> used(static_cast<std::size_t>(d.num_vars()), false);
  auto mark = [&](Index v) {
    REQUIRE(v >= 0);
    REQUIRE(v < d.num_vars());
    CHECK_FALSE(used[static_cast<std::size_t>(v)]);
    used[static_cast<std::size_t>(v)] = true;
  };
  for (Index i = 1; i <= 3; ++i)
    for (Index r = 0; r < 3; ++r)
      for (Index c = r; c < 3; ++c) mark(d.u_index(i, r, c));
  for (Index i = 2; i <= 3; ++i) {
    for (Index r = 0; r < 3; ++r)
      for (Index c = 0; c < 3; ++c) mark(d.w_index(i, r, c));
    mark(d.beta_index(i));
  }
  CHECK(std::all_of(used.begin(), used.end(), [](bool b) { return b; }));
}
