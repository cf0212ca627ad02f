#include "doctest.h"
#include "ferro/construct.hpp"
#include "ferro/prng.hpp"

using namespace ferro;

static void expect_maximal(const RankMetricCode& c, unsigned delta,
                           unsigned dim) {
  REQUIRE(c.shape.has_value());
  auto rep = verify_maximal(c, *c.shape, delta, default_budget());
  CHECK(rep.dimension == dim);
  CHECK(rep.independent);
  CHECK(rep.shape_ok);
  CHECK(rep.exact);
  CHECK(rep.distance == delta);
  CHECK(rep.maximal);
}

TEST_CASE("gabidulin codes") {
  auto g1 = gabidulin(extension_field(2, 3), 3, 2);
  CHECK(code_dimension(g1.code) == 6);
  CHECK(min_rank_distance_exact(g1.code, default_budget()) == 2);

  auto g2 = gabidulin(extension_field(2, 4), 2, 2);
  CHECK(code_dimension(g2.code) == 4);
  CHECK(min_rank_distance_exact(g2.code, default_budget()) == 2);

  // ell = n: the whole matrix space, distance 1
  auto g3 = gabidulin(extension_field(2, 3), 3, 1);
  CHECK(code_dimension(g3.code) == 9);
  CHECK(min_rank_distance_exact(g3.code, default_budget()) == 1);

  CHECK_THROWS_AS(gabidulin(extension_field(2, 3), 3, 2, {1, 2, 3}),
                  PreconditionError);  // dependent points: 3 = 1 + 2
}

TEST_CASE("systematic generator column property") {
  for (unsigned delta = 2; delta <= 4; ++delta) {
    auto gen = systematic_generator(extension_field(2, 4), 4, delta);
    auto ext = gen.ext;
    for (std::size_t t = 0; t < gen.ell; ++t)
      for (std::size_t j = gen.ell; j < gen.n; ++j) {
        auto d = ext->decode(gen.G.at(t, j));
        bool in_base = true;
        for (std::size_t i = 1; i < d.size(); ++i) in_base = in_base && !d[i];
        CHECK_FALSE(in_base);  // no entry of A lies in the base field
      }
  }
  auto g1 = systematic_generator(extension_field(3, 3), 2, 2, {2, 5});
  auto ext = g1.ext;
  CHECK(g1.G.at(0, 0) == 1);
  CHECK(g1.G.at(0, 1) == ext->mul(5, ext->inv(2)));
}

TEST_CASE("full-column construction") {
  auto c = construct_fn1(FerrersDiagram::parse("1,2,3@3"), 2, 2);
  expect_maximal(c, 2, 3);
  // full rectangle: the MRD code itself
  auto full = construct_fn1(FerrersDiagram::parse("3,3,3@3"), 2, 2);
  expect_maximal(full, 2, 6);
  CHECK_THROWS_AS(construct_fn1(FerrersDiagram::parse("1,2,2@3"), 2, 2),
                  PreconditionError);  // last column not full
}

TEST_CASE("staircase construction") {
  auto c = construct_staircase(FerrersDiagram::parse("1,2,4,5,6,6@6"), 4, 2);
  expect_maximal(c, 4, 7);
  auto c2 = construct_staircase(FerrersDiagram::parse("1,3,5,7,7,8,8,8@8"), 6, 2);
  expect_maximal(c2, 6, 9);
  // eps = 0 reduces to the full-column case
  auto c3 = construct_staircase(FerrersDiagram::parse("1,2,3@3"), 2, 3);
  expect_maximal(c3, 2, 3);
  CHECK_THROWS_AS(
      construct_staircase(FerrersDiagram::parse("2,2,4,4,6,6@6"), 4, 2),
      PreconditionError);  // inequality fails
}

TEST_CASE("tall-column wrapper") {
  auto c = construct_ctn(FerrersDiagram::parse("3,4,5,6,6,7@7"), 5, 2);
  expect_maximal(c, 5, 7);
  auto c2 = construct_ctn(FerrersDiagram::parse("2,3,5,5@5"), 3, 2);
  expect_maximal(c2, 3, 5);
  // already-full last columns: same dimensions as the direct construction
  auto c3 = construct_ctn(FerrersDiagram::parse("1,2,3@3"), 2, 2);
  CHECK(code_dimension(c3) == 3);
}

TEST_CASE("generator with a prescribed column") {
  auto ext = extension_field(2, 6);
  std::uint64_t alpha = primitive_element(ext).value();
  std::uint64_t beta = subfield_element(ext, 2).value();
  std::vector<std::uint64_t> a{alpha, ext->mul(alpha, beta), beta};
  auto gen = mrd_with_first_column(ext, 6, 4, a);
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(gen.G.at(t, 3) == a[t]);
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(gen.G.at(t, j) == (t == j ? 1u : 0u));
  }

  auto ext4 = extension_field(2, 4);
  std::uint64_t al = primitive_element(ext4).value();
  std::vector<std::uint64_t> a2{al, ext4->mul(al, al)};
  auto gen2 = mrd_with_first_column(ext4, 4, 3, a2);
  CHECK(gen2.G.at(0, 2) == a2[0]);
  CHECK(gen2.G.at(1, 2) == a2[1]);

  CHECK_THROWS_AS(mrd_with_first_column(ext4, 4, 3, {al, 1}),
                  PreconditionError);  // (1, a_1, a_2) dependent
}

TEST_CASE("invariant-subspace construction") {
  auto c = construct_invariance(2, 6, 6, 4, 2);
  CHECK(c.shape->to_string() == "2,2,4,4,6,6@6");
  expect_maximal(c, 4, 8);

  auto c2 = construct_invariance(2, 4, 4, 4, 2);
  CHECK(c2.shape->to_string() == "2,2,4,4@4");
  expect_maximal(c2, 4, 2);

  auto c3 = construct_invariance(3, 4, 4, 4, 2);
  expect_maximal(c3, 4, 2);

  CHECK_THROWS_AS(construct_invariance(2, 6, 6, 4, 1), PreconditionError);
  CHECK_THROWS_AS(construct_invariance(2, 6, 6, 4, 3), PreconditionError);
}

TEST_CASE("companion-power codes") {
  auto c = construct_companion(2, 3, 2, 0);
  CHECK(c.shape->to_string() == "2,3,3@3");
  expect_maximal(c, 3, 2);

  auto c1 = construct_companion(2, 4, 1, 0);  // just <I>, distance n
  CHECK(code_dimension(c1) == 1);
  CHECK(min_rank_distance_exact(c1, default_budget()) == 4);

  auto cm = construct_companion(2, 3, 3, 0);
  CHECK(c.shape.has_value());
  CHECK(code_dimension(cm) == 3);
  CHECK(min_rank_distance_exact(cm, default_budget()) == 3);  // the full Moore row space

  auto ct = construct_companion(2, 4, 2, 1);  // one column deleted
  CHECK(ct.n == 3);
  expect_maximal(ct, 3, 2);
}

TEST_CASE("diagonal MDS construction") {
  auto r = construct_mds_diagonal(FerrersDiagram::parse("1,2,2,4,7@7"), 3, 3);
  CHECK(r.maximal);
  CHECK(r.diagonal_sum == 5);
  expect_maximal(r.code, 3, 5);

  // not MDS-constructible: still a valid code of the diagonal dimension sum
  auto r2 = construct_mds_diagonal(FerrersDiagram::parse("2,2,4,4,6@6"), 4, 5);
  CHECK_FALSE(r2.maximal);
  CHECK(code_dimension(r2.code) == r2.diagonal_sum);
  CHECK(min_rank_distance_exact(r2.code, default_budget()) >= 4);

  // delta = 1: the standard-basis code
  auto r3 = construct_mds_diagonal(FerrersDiagram::parse("1,2,3@3"), 1, 2);
  CHECK(r3.maximal);
  CHECK(code_dimension(r3.code) == 6);
}

TEST_CASE("upper-triangular distance n-1 codes") {
  auto c = construct_upper_triangular_explicit(4, 2, 1, 1);
  CHECK(c.shape->to_string() == "1,2,3,4@4");
  expect_maximal(c, 3, 3);

  auto c5 = construct_upper_triangular_explicit(5, 3, 1, 1);
  expect_maximal(c5, 4, 3);

  for (unsigned n = 3; n <= 5; ++n) {
    auto r = construct_upper_triangular_recursive(n, 2);
    CHECK(code_dimension(r) == 3);
    CHECK(min_rank_distance_exact(r, default_budget()) == n - 1);
    for (const auto& b : r.basis)
      CHECK(matrix_has_shape(b, *r.shape));
  }
}

TEST_CASE("the ad-hoc shape construction") {
  for (std::uint64_t q : {2, 3}) {
    auto c = construct_f1334(q);
    CHECK(c.shape->to_string() == "1,3,3,4@4");
    expect_maximal(c, 3, 4);
  }
  CHECK(not_subfield_realizable(FerrersDiagram::parse("1,3,3,4@4"), 3));
}

// A shape-conforming subcode of an extension-linear MRD code would need an
// invariant subspace of dimension coprime to m; check no such subspace exists
// for the generator entries actually produced.
TEST_CASE("invariant-subspace obstruction at q=2, m=4") {
  auto ext = extension_field(2, 4);
  auto gen = systematic_generator(ext, 4, 3);
  OrderedBasis P = OrderedBasis::power_basis(ext);
  for (std::size_t t = 0; t < gen.ell; ++t)
    for (std::size_t j = gen.ell; j < gen.n; ++j) {
      FieldElement a(ext, gen.G.at(t, j));
      // enumerate the 15 three-dimensional subspaces as duals of lines
      for (unsigned w = 1; w < 16; ++w) {
        std::vector<std::vector<std::uint64_t>> vecs;
        for (unsigned v = 1; v < 16; ++v) {
          unsigned dot = (v & w);
          dot = (dot & 1) ^ (dot >> 1 & 1) ^ (dot >> 2 & 1) ^ (dot >> 3 & 1);
          if (!dot) vecs.push_back(ext->decode(v));
        }
        auto V = Subspace::from_vectors(ext->base(), 4, vecs);
        REQUIRE(V.dim() == 3);
        CHECK_FALSE(scaled_subspace(V, a, P) == V);
      }
    }
}
