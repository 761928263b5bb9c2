#include <doctest.h>

#include "frcert/generator.hpp"
#include "frcert/verifier.hpp"
#include "oracles.hpp"
#include "published_fixtures.hpp"

using namespace frcert;
using fixtures::q;

namespace {

InfeasibilityWitness plain(Index m, Index n, BlockSizes sizes) {
  return InfeasibilityWitness{identity(m), identity(n), std::move(sizes), SequenceCheck::RegFR};
}

RatMatrix col(std::initializer_list<Rat> v) { return RatMatrix(make_vector(v)); }

// Symmetric matrices y with <a_i, y> = 0 for all i, as a basis.
std::vector<RatMatrix> adjoint_kernel(const std::vector<RatMatrix>& a, Index n) {
  const Index d = n * (n + 1) / 2;
  RatMatrix rows(static_cast<Index>(a.size()), d);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Index k = 0;
    for (Index r = 0; r < n; ++r)
      for (Index c = r; c < n; ++c) rows(static_cast<Index>(i), k++) = (r == c ? Rat(1) : Rat(2)) * a[i](r, c);
  }
  std::vector<RatMatrix> out;
  for (const auto& v : kernel_basis(rows)) out.push_back(sym_from_upper(n, std::vector<Rat>(v.data(), v.data() + v.size())));
  return out;
}

// Rewrites {y psd : A*y = c} as sum_i x_i a'_i <= b' where b' = y_{l+1} solves
// A*y = c and a'_1..a'_l = y_1..y_l start a basis of ker A*.
PrimalInstance homogenized(const DualInstance& d, const std::vector<RatMatrix>& y) {
  const Index n = d.cone.element_rows();
  PrimalInstance p;
  p.cone = d.cone;
  p.b = y.back();
  std::vector<RatMatrix> basis(y.begin(), y.end() - 1);
  for (const auto& k : adjoint_kernel(d.a, n)) {
    basis.push_back(k);
    if (rank(stack_vectorized(basis)) < static_cast<Index>(basis.size())) basis.pop_back();
  }
  p.a = basis;
  return p;
}

}  // namespace

TEST_CASE("2x2 example is weakly infeasible") {
  auto inst = fixtures::two_by_two();
  Verdict inf = verify_dual_infeasible(inst, plain(2, 2, {1, 0}));
  CHECK_MESSAGE(inf.proven(), inf.reason);
  SequenceWitness y{fixtures::two_by_two_y(), SequenceCheck::ExactFaces, {}, std::nullopt};
  Verdict ns = verify_dual_not_strongly_infeasible(inst, y);
  CHECK_MESSAGE(ns.proven(), ns.reason);
  CHECK_FALSE(ns.has_flag("actually_feasible"));
  y.check = SequenceCheck::RevRegFR;
  y.sizes = {1, 0};
  CHECK(verify_dual_not_strongly_infeasible(inst, y).proven());

  CertificateBundle b;
  b.infeasible = plain(2, 2, {1, 0});
  b.not_strongly = y;
  CHECK(verify_bundle(inst, b).has_flag("weakly_infeasible"));
}

TEST_CASE("2x2 example with a positive corner") {
  auto inst = fixtures::two_by_two(1);
  CHECK(verify_dual_infeasible(inst, plain(2, 2, {1, 1})).proven());
  CHECK_FALSE(verify_dual_infeasible(fixtures::two_by_two(0), plain(2, 2, {1, 1})).proven());
  SequenceWitness y{fixtures::two_by_two_y(), SequenceCheck::ExactFaces, {}, std::nullopt};
  CHECK_FALSE(verify_dual_not_strongly_infeasible(inst, y).proven());
}

TEST_CASE("nonclosed 3x3 example") {
  auto inst = fixtures::nonclosed_dual();
  InfeasibilityWitness w{fixtures::nonclosed_row_ops(), identity(3), {1, 1}, SequenceCheck::RegFR};
  Verdict inf = verify_dual_infeasible(inst, w);
  CHECK_MESSAGE(inf.proven(), inf.reason);
  w.check = SequenceCheck::ExactFaces;
  CHECK(verify_dual_infeasible(inst, w).proven());
  CHECK_FALSE(verify_dual_infeasible(inst, plain(3, 3, {1, 1})).proven());

  SequenceWitness y{fixtures::nonclosed_y(), SequenceCheck::ExactFaces, {}, std::nullopt};
  CHECK(apply_adjoint(inst.a, y.seq[1]) == make_vector({0, -2, 1}));
  CHECK(verify_dual_not_strongly_infeasible(inst, y).proven());
  y.check = SequenceCheck::RevRegFR;
  y.sizes = {1, 1};
  CHECK(verify_dual_not_strongly_infeasible(inst, y).proven());
}

TEST_CASE("5x5 nonoverlapping example") {
  auto inst = fixtures::nonoverlap_dual();
  CertificateBundle b;
  b.infeasible = plain(3, 5, {1, 1, 1});
  b.not_strongly = SequenceWitness{fixtures::nonoverlap_y(), SequenceCheck::RevRegFR, {1, 1, 0}, std::nullopt};
  Verdict v = verify_bundle(inst, b);
  CHECK_MESSAGE(v.has_flag("weakly_infeasible"), v.reason);
}

TEST_CASE("zero-length witness means feasible") {
  DualInstance d;
  d.cone = ConeSpec::psd(2);
  d.a = {identity(2)};
  d.c = make_vector({1});
  SequenceWitness y{{make_matrix({{1, 0}, {0, 0}})}, SequenceCheck::ExactFaces, {}, std::nullopt};
  Verdict v = verify_dual_not_strongly_infeasible(d, y);
  CHECK(v.proven());
  CHECK(v.has_flag("actually_feasible"));
  // No staircase can certify infeasibility of a feasible system.
  for (BlockSizes s : {BlockSizes{1}, BlockSizes{2}, BlockSizes{0}}) CHECK_FALSE(verify_dual_infeasible(d, plain(1, 2, s)).proven());
}

TEST_CASE("rejections name the failing check") {
  auto inst = fixtures::two_by_two();
  InfeasibilityWitness w = plain(2, 2, {1, 0});
  w.M = make_matrix({{1, 0}, {1, 0}});
  Verdict v = verify_dual_infeasible(inst, w);
  CHECK_FALSE(v.proven());
  CHECK(v.reason.find("invertible") != std::string::npos);

  auto bad = fixtures::two_by_two_y();
  bad[1](0, 1) = bad[1](1, 0) = Rat(-1);
  Verdict r = verify_dual_not_strongly_infeasible(inst, {bad, SequenceCheck::ExactFaces, {}, std::nullopt});
  CHECK_FALSE(r.proven());
  CHECK(r.reason.find("A*y_2 = c") != std::string::npos);

  auto swapped = fixtures::two_by_two_y();
  std::swap(swapped[0], swapped[1]);
  CHECK_FALSE(verify_dual_not_strongly_infeasible(inst, {swapped, SequenceCheck::ExactFaces, {}, std::nullopt}).proven());
  Verdict shape = verify_dual_infeasible(inst, InfeasibilityWitness{identity(3), identity(2), {1, 0}});
  CHECK_FALSE(shape.proven());
  CHECK(shape.reason.find("M") != std::string::npos);
}

TEST_CASE("transcripts record exact residuals") {
  auto inst = fixtures::two_by_two();
  Verdict v = verify_dual_infeasible(inst, plain(2, 2, {1, 0}));
  REQUIRE(v.proven());
  CHECK(!v.transcript.empty());
  for (const auto& c : v.transcript) CHECK(c.passed);
  inst.c(1) = Rat(-2);
  Verdict r = verify_dual_infeasible(inst, plain(2, 2, {1, 0}));
  CHECK_FALSE(r.proven());
  bool found = false;
  for (const auto& c : r.transcript) found |= (!c.passed && c.residual == "-2");
  CHECK(found);
}

TEST_CASE("too long sequences are rejected") {
  // Four members in PSD(2) exceed the chain bound even though the pattern fits.
  DualInstance d;
  d.cone = ConeSpec::psd(2);
  d.a = {make_matrix({{1, 0}, {0, 0}}), make_matrix({{0, 0}, {0, 1}}), make_matrix({{0, 1}, {1, 0}}),
         make_matrix({{1, 1}, {1, 2}})};
  d.c = make_vector({0, 0, 0, -1});
  CHECK(verify_dual_infeasible(d, InfeasibilityWitness{identity(4), identity(2), {1, 1, 0}, SequenceCheck::RegFR}).proven() == false);
  d.c = make_vector({0, 0, -1, 0});
  CHECK(verify_dual_infeasible(d, plain(4, 2, {1, 1, 0})).proven());
  d.c = make_vector({0, 0, 0, -1});
  Verdict v = verify_dual_infeasible(d, plain(4, 2, {1, 1, 0, 0}));
  CHECK_FALSE(v.proven());
  CHECK(v.reason.find("k <= 2") != std::string::npos);
}

TEST_CASE("primal example: infeasible and not strongly infeasible") {
  auto p = fixtures::primal_weak();
  PrimalInfeasibilityWitness inf{{fixtures::primal_weak_y(), SequenceCheck::ExactFaces, {}, std::nullopt}, std::nullopt};
  Verdict a = verify_primal_infeasible(p, inf);
  CHECK_MESSAGE(a.proven(), a.reason);

  PrimalReformulation id{identity(2), RatVector::Constant(2, Rat(0)), identity(3)};
  PrimalNotStronglyWitness ns{id, 1, SequenceCheck::RegFR, {1, 1}};
  Verdict b = verify_primal_not_strongly_infeasible(p, ns);
  CHECK_MESSAGE(b.proven(), b.reason);
  CHECK(verify_primal_not_strongly_infeasible(p, PrimalNotStronglyWitness{id, 2, SequenceCheck::ExactFaces, {}}).proven());
  CHECK(verify_primal_not_strongly_infeasible(p, PrimalNotStronglyWitness{id, 2, SequenceCheck::RegFR, {1, 0, 1}}).proven());

  CertificateBundle bundle;
  bundle.primal_infeasible = inf;
  bundle.primal_not_strongly = ns;
  CHECK(verify_bundle(p, bundle).has_flag("weakly_infeasible"));
}

TEST_CASE("primal with zero right-hand side is rejected") {
  auto p = fixtures::primal_weak();
  p.b = zeros(3, 3);
  PrimalInfeasibilityWitness inf{{fixtures::primal_weak_y(), SequenceCheck::ExactFaces, {}, std::nullopt}, std::nullopt};
  Verdict v = verify_primal_infeasible(p, inf);
  CHECK_FALSE(v.proven());
  CHECK(v.reason.find("b.y_3 = -1") != std::string::npos);
}

TEST_CASE("primal 3x3 example with a maximization objective") {
  auto p = fixtures::three_by_three_primal();
  // Feasible (x = 0), so no infeasibility certificate of length 1 exists.
  PrimalInfeasibilityWitness w{{{fixtures::E(3, 3, 3)}, SequenceCheck::ExactFaces, {}, std::nullopt}, std::nullopt};
  CHECK_FALSE(verify_primal_infeasible(p, w).proven());
  PrimalReformulation id{identity(2), RatVector::Constant(2, Rat(0)), identity(3)};
  Verdict v = verify_primal_not_strongly_infeasible(p, PrimalNotStronglyWitness{id, 0, SequenceCheck::ExactFaces, {}});
  CHECK(v.proven());
  CHECK(v.has_flag("actually_feasible"));
}

TEST_CASE("primal reformulation witness") {
  // Shift by mu and a congruence applied before the check.
  auto p = fixtures::primal_weak();
  RatMatrix t = make_matrix({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}});
  RatMatrix t_inv = *invert(t);
  // Transform the instance so the reformulation (I, 0, t^{-1}) undoes it.
  PrimalInstance moved = p;
  for (auto& a : moved.a) a = congruence(t, a);
  moved.b = congruence(t, p.b);
  PrimalReformulation back{identity(2), RatVector::Constant(2, Rat(0)), t_inv};
  CHECK(verify_primal_not_strongly_infeasible(moved, PrimalNotStronglyWitness{back, 1, SequenceCheck::RegFR, {1, 1}}).proven());
  PrimalInfeasibilityWitness inf{{fixtures::primal_weak_y(), SequenceCheck::ExactFaces, {}, std::nullopt}, back};
  CHECK(verify_primal_infeasible(moved, inf).proven());
  PrimalInfeasibilityWitness plain_w{{fixtures::primal_weak_y(), SequenceCheck::ExactFaces, {}, std::nullopt}, std::nullopt};
  CHECK_FALSE(verify_primal_infeasible(moved, plain_w).proven());
}

TEST_CASE("primal recasting agrees with the dual verdict") {
  GenParams gp;
  gp.n = 6;
  gp.m = 5;
  gp.k = 2;
  gp.ell = 1;
  gp.p = {1, 2, 1};
  gp.q = {1, 1};
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    gp.seed = seed;
    Generated g = gen_weak(gp);
    REQUIRE(verify_bundle(g.instance, g.bundle).has_flag("weakly_infeasible"));
    const auto& y = g.bundle.not_strongly->seq;
    PrimalInstance p = homogenized(g.instance, y);
    CertificateBundle b;
    std::vector<RatMatrix> aseq(g.instance.a.begin(), g.instance.a.begin() + gp.k + 1);
    b.primal_infeasible = PrimalInfeasibilityWitness{{aseq, SequenceCheck::RegFR, gp.p, std::nullopt}, std::nullopt};
    b.primal_not_strongly = PrimalNotStronglyWitness{
        {identity(p.m()), RatVector::Constant(p.m(), Rat(0)), identity(gp.n)}, gp.ell, SequenceCheck::RevRegFR, gp.q};
    Verdict v = verify_bundle(p, b);
    CHECK_MESSAGE(v.has_flag("weakly_infeasible"), v.reason);
  }
}

TEST_CASE("rotation mode accepts scrambled sequences approximately") {
  GenParams gp = GenParams::preset("paper-m10");
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    gp.seed = seed;
    Generated g = mess(gen_weak(gp), seed);
    SequenceWitness s = *g.bundle.not_strongly;
    s.check = SequenceCheck::Rotation;
    s.rotation.reset();
    Verdict v = verify_dual_not_strongly_infeasible(g.instance, s);
    CHECK_MESSAGE(v.proven(), v.reason);
    CHECK(v.has_flag("approximate"));
    s.check = SequenceCheck::RevRegFR;
    CHECK_FALSE(verify_dual_not_strongly_infeasible(g.instance, s).proven());
  }
  auto inst = fixtures::two_by_two();
  auto bad = fixtures::two_by_two_y();
  bad[0] = make_matrix({{-1, 0}, {0, 1}});
  Verdict r = verify_dual_not_strongly_infeasible(inst, {bad, SequenceCheck::Rotation, {}, std::nullopt});
  CHECK_FALSE(r.proven());
}

TEST_CASE("image of the cone is not closed") {
  auto inst = fixtures::nonclosed_dual();
  RatMatrix M = fixtures::nonclosed_row_ops();
  std::vector<RatMatrix> a2;
  for (Index i = 0; i < 2; ++i) a2.push_back(apply_operator(inst.a, M.col(i)));
  SequenceWitness aseq{a2, SequenceCheck::ExactFaces, {}, std::nullopt};
  SequenceWitness yseq{fixtures::nonclosed_y(), SequenceCheck::ExactFaces, {}, std::nullopt};
  Verdict v = verify_nonclosedness_witness(inst.a, inst.cone, aseq, yseq);
  CHECK_MESSAGE(v.proven(), v.reason);
  CHECK(v.has_flag("image_not_closed"));

  auto two = fixtures::two_by_two();
  Verdict w = verify_nonclosedness_witness(two.a, two.cone, {two.a, SequenceCheck::ExactFaces, {}, std::nullopt},
                                           {fixtures::two_by_two_y(), SequenceCheck::ExactFaces, {}, std::nullopt});
  CHECK(w.proven());
  // The positive corner closes the image.
  auto closed = fixtures::two_by_two(1);
  CHECK_FALSE(verify_nonclosedness_witness(closed.a, closed.cone, {closed.a, SequenceCheck::ExactFaces, {}, std::nullopt},
                                           {fixtures::two_by_two_y(), SequenceCheck::ExactFaces, {}, std::nullopt})
                  .proven());
}

TEST_CASE("face-sum witness checks") {
  // F = psd matrices with range in span(e1, e2).
  std::vector<RatMatrix> span = {fixtures::E(3, 1, 1), fixtures::E(3, 1, 2), fixtures::E(3, 2, 2)};
  SequenceWitness aseq{{fixtures::E(3, 1, 1), fixtures::E(3, 1, 2)}, SequenceCheck::ExactFaces, {}, std::nullopt};
  SequenceWitness yseq{{fixtures::E(3, 3, 3), make_matrix({{0, q(-1, 2), 0}, {q(-1, 2), 0, 0}, {0, 0, 0}})},
                       SequenceCheck::ExactFaces, {}, std::nullopt};
  Verdict v = verify_non_niceness_witness(span, ConeSpec::psd(3), aseq, yseq);
  CHECK_FALSE(v.proven());
  CHECK(v.reason.find("FR(K)") != std::string::npos);
}

TEST_CASE("polyhedral oracle") {
  DualInstance d;
  d.cone = ConeSpec::orthant(2);
  d.a = {col({1, 1})};
  d.c = make_vector({-1});
  LpOracleResult r = lp_feasibility_oracle(d);
  CHECK(r.status == LpStatus::StronglyInfeasible);
  CHECK(satisfies(dual_alt_system(d), r.alt_point));
  CHECK(check_farkas(dual_system(d), r.farkas));

  d.c = make_vector({1});
  r = lp_feasibility_oracle(d);
  CHECK(r.status == LpStatus::Feasible);
  CHECK(satisfies(dual_system(d), r.point));

  // Zero block in K means a free coordinate of y.
  DualInstance z;
  z.cone = ConeSpec{{{ConeKind::Zero, 1}, {ConeKind::Orthant, 1}}};
  z.a = {col({1, 1})};
  z.c = make_vector({-1});
  CHECK(lp_feasibility_oracle(z).status == LpStatus::Feasible);

  PrimalInstance p;
  p.cone = ConeSpec::orthant(2);
  p.a = {col({1, -1})};
  p.b = col({-1, -1});
  LpOracleResult pr = lp_feasibility_oracle(p);
  CHECK(pr.status == LpStatus::StronglyInfeasible);
  CHECK(satisfies(primal_alt_system(p), pr.alt_point));
  p.b = col({1, 1});
  CHECK(lp_feasibility_oracle(p).status == LpStatus::Feasible);

  CHECK_THROWS_AS(lp_feasibility_oracle(fixtures::two_by_two()), DimensionError);
}

TEST_CASE("oracle never reports weak infeasibility for polyhedral systems") {
  SplitMix64 rng(51);
  int infeasible = 0;
  for (int i = 0; i < 200; ++i) {
    DualInstance d;
    Index n = rng.uniform(1, 4), m = rng.uniform(1, 3);
    d.cone = ConeSpec::orthant(n);
    for (Index j = 0; j < m; ++j) d.a.push_back(oracle::random_matrix(rng, n, 1, 2));
    d.c = RatVector(m);
    for (Index j = 0; j < m; ++j) d.c(j) = Rat(rng.uniform(-2, 2));
    LpOracleResult r = lp_feasibility_oracle(d);
    CHECK(r.status != LpStatus::WeaklyInfeasible);
    if (r.status == LpStatus::Feasible) CHECK(satisfies(dual_system(d), r.point));
    else {
      ++infeasible;
      CHECK(satisfies(dual_alt_system(d), r.alt_point));
    }
  }
  CHECK(infeasible > 10);
}

TEST_CASE("alternative system search") {
  AltCheckResult weak = alt_system_check(fixtures::two_by_two(0));
  CHECK(weak.status == AltStatus::AltInfeasibleAtScale);
  CHECK_FALSE(weak.exhaustive);
  AltCheckResult strong = alt_system_check(fixtures::two_by_two(1));
  REQUIRE(strong.status == AltStatus::AltFeasible);
  auto inst = fixtures::two_by_two(1);
  CHECK(inst.c.dot(strong.x) == -1);
  CHECK(is_psd(apply_operator(inst.a, strong.x)));

  DualInstance zero_rhs = fixtures::two_by_two();
  zero_rhs.c = make_vector({0, 0});
  CHECK(alt_system_check(zero_rhs).exhaustive);
  CHECK(alt_system_check(zero_rhs).status == AltStatus::AltInfeasibleAtScale);

  DualInstance diag;
  diag.cone = ConeSpec::psd(2);
  diag.a = {make_matrix({{1, 0}, {0, -1}}), make_matrix({{0, 0}, {0, 1}})};
  diag.c = make_vector({-3, 0});
  AltCheckResult dr = alt_system_check(diag);
  CHECK(dr.exhaustive);
  CHECK(dr.status == AltStatus::AltFeasible);
}
