#include <doctest.h>

#include "frcert/cones.hpp"
#include "frcert/fourier_motzkin.hpp"
#include "frcert/fr_sequences.hpp"
#include "frcert/rng.hpp"
#include "cone_oracles.hpp"
#include "oracles.hpp"
#include "published_fixtures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

using namespace frcert;
using fixtures::q;

using namespace cone_oracle;

TEST_CASE("cone names round trip") {
  for (ConeKind k : {ConeKind::Zero, ConeKind::Free, ConeKind::Orthant, ConeKind::SecondOrder, ConeKind::PSD})
    CHECK(cone_kind_from_string(to_string(k)) == k);
  CHECK_THROWS(cone_kind_from_string("cube"));
}

TEST_CASE("duality swaps zero and free blocks only") {
  ConeSpec k{{{ConeKind::Zero, 2}, {ConeKind::Orthant, 3}, {ConeKind::SecondOrder, 3}}};
  ConeSpec d = dual(k);
  CHECK(d.blocks[0].kind == ConeKind::Free);
  CHECK(d.blocks[1] == k.blocks[1]);
  CHECK(dual(d) == k);
  CHECK(dual(ConeSpec::psd(4)) == ConeSpec::psd(4));
}

TEST_CASE("chain lengths agree with brute-force face lattices") {
  CHECK(chain_length(ConeSpec::psd(3)) == 4);
  CHECK(chain_length(ConeSpec::orthant(4)) == 5);
  CHECK(chain_length(ConeSpec::second_order(3)) == 3);
  CHECK(chain_length(ConeSpec::second_order(1)) == 2);
  for (Index n = 1; n <= 5; ++n) CHECK(chain_length(ConeSpec::orthant(n)) == orthant_chain_bruteforce(n));

  SplitMix64 rng(21);
  const ConeKind kinds[] = {ConeKind::Zero, ConeKind::Free, ConeKind::Orthant, ConeKind::SecondOrder};
  for (int i = 0; i < 60; ++i) {
    ConeSpec k;
    std::vector<Index> heights;
    int nb = static_cast<int>(rng.uniform(1, 3));
    for (int b = 0; b < nb; ++b) {
      ConeBlock blk{kinds[rng.uniform(0, 3)], rng.uniform(1, 3)};
      k.blocks.push_back(blk);
      heights.push_back(block_height(blk));
    }
    CHECK(chain_length(k) == product_chain_bruteforce(heights));
  }
}

TEST_CASE("cone membership") {
  CHECK(cone_membership(make_matrix({{2}, {1}, {-1}}), ConeSpec::second_order(3)));
  CHECK_FALSE(cone_membership(make_matrix({{1}, {1}, {1}}), ConeSpec::second_order(3)));
  CHECK(cone_membership(make_matrix({{0}, {2}}), ConeSpec::orthant(2)));
  CHECK_FALSE(cone_membership(make_matrix({{-1}, {2}}), ConeSpec::orthant(2)));
  CHECK(cone_membership(make_matrix({{1, 1}, {1, 1}}), ConeSpec::psd(2)));
  ConeSpec k{{{ConeKind::Zero, 1}, {ConeKind::Orthant, 1}}};
  CHECK_FALSE(cone_membership(make_matrix({{1}, {1}}), k));
  CHECK(dual_cone_membership(make_matrix({{1}, {1}}), k));
  CHECK_THROWS_AS(cone_membership(identity(2), ConeSpec::orthant(2)), DimensionError);
}

TEST_CASE("orthant facial reduction membership") {
  CHECK(fr_membership_orthant({make_vector({1, 0, 0}), make_vector({-5, 2, 0})}, 3));
  CHECK_FALSE(fr_membership_orthant({make_vector({1, 0, 0}), make_vector({0, -1, 0})}, 3));
  CHECK_FALSE(fr_membership_orthant({make_vector({-1, 0, 0})}, 3));
  CHECK(orthant_face_after({make_vector({1, 0, 0}), make_vector({-5, 2, 0})}, 3).support == std::vector<Index>{2});

  SplitMix64 rng(22);
  for (int i = 0; i < 150; ++i) {
    Index n = rng.uniform(1, 4);
    std::vector<RatVector> seq;
    if (i % 2 == 0) seq = orthant_member(rng, n, static_cast<int>(rng.uniform(1, 3)));
    else
      for (int s = 0; s < 2; ++s) seq.push_back(random_vec(rng, n, 1));
    CHECK(fr_membership_orthant(seq, n) == polyhedral_fr_oracle(as_columns(seq), ConeSpec::orthant(n)));
  }
}

TEST_CASE("second order cone facial reduction membership") {
  CHECK(fr_membership_soc({make_vector({-1, 1, 5})}, 3) == false);
  CHECK(fr_membership_soc({make_vector({1, 1, 0}), make_vector({-1, -2, 5})}, 3));
  CHECK_FALSE(fr_membership_soc({make_vector({1, -1, 0}), make_vector({-1, -1, 0})}, 3));
  CHECK(fr_membership_soc({make_vector({1, -1, 0}), make_vector({-1, 1, 5})}, 3));
  CHECK_FALSE(fr_membership_soc({make_vector({1, 1, 0}), make_vector({1, 2, 5})}, 3));
  CHECK(fr_membership_soc({make_vector({2, 1, 0}), make_vector({-9, 1, 5})}, 3));
  CHECK(fr_membership_soc({make_vector({0, 0, 0}), make_vector({1, 0, 1})}, 3));
  CHECK(fr_membership_soc({make_vector({1})}, 1));
  CHECK_FALSE(fr_membership_soc({make_vector({-1})}, 1));
}

TEST_CASE("psd facial reduction membership on published sequences") {
  CHECK(fr_membership_psd(fixtures::two_by_two_y(), 2));
  CHECK(fr_membership_psd(fixtures::three_by_three_dual_solution(), 3));
  CHECK(fr_membership_psd(fixtures::nonclosed_y(), 3));
  CHECK(fr_membership_psd(fixtures::primal_weak_y(), 3));
  CHECK(fr_membership_psd(fixtures::nonoverlap_y(), 5));
  CHECK_FALSE(fr_membership_psd({fixtures::E(2, 1, 2)}, 2));
  auto y = fixtures::two_by_two_y();
  std::swap(y[0], y[1]);
  CHECK_FALSE(fr_membership_psd(y, 2));
}

TEST_CASE("zero and free blocks") {
  ConeSpec z{{{ConeKind::Zero, 2}}}, f{{{ConeKind::Free, 2}}};
  RatMatrix v = make_matrix({{1}, {-1}});
  CHECK(fr_membership({v, v}, z));
  CHECK_FALSE(fr_membership({v}, f));
  CHECK(fr_membership({zeros(2, 1)}, f));
}

TEST_CASE("facial reduction cone is a convex cone") {
  SplitMix64 rng(23);
  for (int i = 0; i < 200; ++i) {
    bool use_soc = i % 2 == 1;
    Index n = rng.uniform(2, 4);
    auto a = use_soc ? soc_member(rng, n) : orthant_member(rng, n, 2);
    auto b = use_soc ? soc_member(rng, n) : orthant_member(rng, n, 2);
    a.resize(2);
    b.resize(2);
    auto member = [&](const std::vector<RatVector>& s) {
      return use_soc ? fr_membership_soc(s, n) : fr_membership_orthant(s, n);
    };
    REQUIRE(member(a));
    REQUIRE(member(b));
    Rat lambda(rng.uniform(0, 6), 6), scale(rng.uniform(1, 4));
    std::vector<RatVector> mix;
    for (int s = 0; s < 2; ++s) mix.push_back(scale * (lambda * a[static_cast<std::size_t>(s)] + (1 - lambda) * b[static_cast<std::size_t>(s)]));
    CHECK(member(mix));
  }
}

TEST_CASE("product membership is blockwise") {
  SplitMix64 rng(24);
  for (int i = 0; i < 100; ++i) {
    ConeSpec k{{{ConeKind::Orthant, 2}, {ConeKind::SecondOrder, 3}, {ConeKind::Zero, 1}}};
    auto o = i % 3 == 0 ? std::vector<RatVector>{random_vec(rng, 2, 1), random_vec(rng, 2, 1)} : orthant_member(rng, 2, 2);
    auto s = soc_member(rng, 3);
    s.resize(2);
    if (i % 5 == 0) s[0] = random_vec(rng, 3, 2);
    std::vector<RatMatrix> whole;
    for (int t = 0; t < 2; ++t) {
      RatMatrix col(6, 1);
      col.block(0, 0, 2, 1) = o[static_cast<std::size_t>(t)];
      col.block(2, 0, 3, 1) = s[static_cast<std::size_t>(t)];
      col(5, 0) = Rat(rng.uniform(-2, 2));
      whole.push_back(col);
    }
    CHECK(fr_membership(whole, k) == (fr_membership_orthant(o, 2) && fr_membership_soc(s, 3)));
  }
}

TEST_CASE("coordinate permutations preserve orthant membership") {
  SplitMix64 rng(25);
  for (int i = 0; i < 100; ++i) {
    Index n = rng.uniform(2, 5);
    auto seq = i % 2 ? orthant_member(rng, n, 3) : std::vector<RatVector>{random_vec(rng, n, 1), random_vec(rng, n, 1)};
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (Index j = n - 1; j > 0; --j) std::swap(perm[static_cast<std::size_t>(j)], perm[static_cast<std::size_t>(rng.uniform(0, j))]);
    std::vector<RatVector> moved;
    for (const auto& y : seq) {
      RatVector z(n);
      for (Index j = 0; j < n; ++j) z(perm[static_cast<std::size_t>(j)]) = y(j);
      moved.push_back(z);
    }
    CHECK(fr_membership_orthant(seq, n) == fr_membership_orthant(moved, n));
  }
}
