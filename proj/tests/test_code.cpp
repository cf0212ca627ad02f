#include "doctest.h"
#include "ferro/code.hpp"
#include "ferro/construct.hpp"
#include "ferro/prng.hpp"

using namespace ferro;

static RankMetricCode standard_basis_code(const FieldCtxPtr& f,
                                          const FerrersDiagram& shape) {
  RankMetricCode c;
  c.ctx = f;
  c.m = shape.m();
  c.n = shape.n();
  for (const auto& d : shape.dot_list()) {
    GfMatrix e(f, c.m, c.n);
    e.set(d.row - 1, d.col - 1, 1);
    c.basis.push_back(std::move(e));
  }
  c.shape = shape;
  return c;
}

TEST_CASE("exact minimum distance") {
  auto f2 = make_field(2, 1);
  auto shape = FerrersDiagram::parse("1,3,3,4@4");
  CHECK(min_rank_distance_exact(standard_basis_code(f2, shape),
                                default_budget()) == 1);

  RankMetricCode idc;
  idc.ctx = f2;
  idc.m = idc.n = 3;
  idc.basis.push_back(GfMatrix::identity(f2, 3));
  CHECK(min_rank_distance_exact(idc, default_budget()) == 3);

  auto gab = gabidulin(extension_field(2, 3), 3, 2).code;
  CHECK(code_dimension(gab) == 6);
  CHECK(min_rank_distance_exact(gab, default_budget()) == 2);

  CHECK_THROWS_AS(min_rank_distance_exact(gab, 10), BudgetExceeded);
}

TEST_CASE("sampled distance upper-bounds the exact one") {
  auto gab = gabidulin(extension_field(2, 4), 4, 3).code;
  unsigned exact = min_rank_distance_exact(gab, default_budget());
  unsigned s1 = min_rank_distance_sampled(gab, 3000, 17);
  CHECK(s1 >= exact);
  CHECK(min_rank_distance_sampled(gab, 3000, 17) == s1);  // seeded
}

TEST_CASE("maximality verification") {
  auto f = construct_f1334(2);
  auto rep = verify_maximal(f, *f.shape, 3, default_budget());
  CHECK(rep.dimension == 4);
  CHECK(rep.distance == 3);
  CHECK(rep.exact);
  CHECK(rep.maximal);

  auto comp = construct_companion(2, 3, 2, 0);
  auto repc = verify_maximal(comp, *comp.shape, 3, default_budget());
  CHECK(repc.dimension == 2);
  CHECK(repc.maximal);

  // two random shaped matrices: right shape, wrong dimension
  auto f2 = make_field(2, 1);
  auto shape = FerrersDiagram::parse("1,3,3,4@4");
  RankMetricCode small;
  small.ctx = f2;
  small.m = small.n = 4;
  TrialRng rng(23, 0);
  for (int s = 0; s < 2; ++s) {
    GfMatrix a(f2, 4, 4);
    for (const auto& d : shape.dot_list())
      a.set(d.row - 1, d.col - 1, rng.below(2));
    small.basis.push_back(std::move(a));
  }
  CHECK_FALSE(verify_maximal(small, shape, 3, default_budget()).maximal);
}

TEST_CASE("shape containment test") {
  auto f2 = make_field(2, 1);
  auto shape = FerrersDiagram::parse("1,2,3@3");
  GfMatrix in(f2, 3, 3), out(f2, 3, 3);
  in.set(0, 0, 1);
  in.set(2, 2, 1);
  CHECK(matrix_has_shape(in, shape));
  out.set(1, 0, 1);
  CHECK_FALSE(matrix_has_shape(out, shape));
}

TEST_CASE("lift pivots and rref lift") {
  CHECK(lift_pivots(FerrersDiagram::parse("1,2,4,4,5@5")) ==
        std::vector<std::size_t>{1, 3, 5, 6, 9});
  CHECK(lift_pivots(FerrersDiagram::parse("3,3,3@3")) ==
        std::vector<std::size_t>{1, 2, 3});

  auto f2 = make_field(2, 1);
  auto shape = FerrersDiagram::parse("1,2,4,4,5@5");
  GfMatrix a(f2, 5, 5);
  TrialRng rng(29, 0);
  for (const auto& d : shape.dot_list())
    a.set(d.row - 1, d.col - 1, rng.below(2));
  GfMatrix L = lift_to_rref(a, shape);
  CHECK(L.rows() == 5);
  CHECK(L.cols() == 10);
  auto [R, piv] = L.rref();
  CHECK(R == L);  // already in RREF
  CHECK(piv == std::vector<std::size_t>{0, 2, 4, 5, 8});

  // the zero matrix lifts to the bare pivot-identity RREF
  GfMatrix z = lift_to_rref(GfMatrix(f2, 5, 5), shape);
  CHECK(z.rref().first == z);
  CHECK(z.rank() == 5);
}

TEST_CASE("dropping a position walks the reduction") {
  auto f = construct_f1334(2);
  // (1,2) is a removable corner of [1,3,3,4]
  auto sub = subcode_dropping_position(f, Dot{1, 2});
  CHECK(sub.basis.size() == 3);
  for (const auto& b : sub.basis) CHECK(b.at(0, 1) == 0);
  CHECK(min_rank_distance_exact(sub, default_budget()) >= 3);

  RankMetricCode zero;
  zero.ctx = f.ctx;
  zero.m = zero.n = 4;
  zero.basis.push_back(GfMatrix(f.ctx, 4, 4));
  CHECK_THROWS_AS(subcode_dropping_position(zero, Dot{1, 1}),
                  PreconditionError);
}

TEST_CASE("code file round trip is byte identical") {
  for (auto code : {construct_f1334(3), construct_companion(2, 4, 2, 1)}) {
    std::string text = write_code_file(code);
    RankMetricCode back = read_code_file(text);
    CHECK(back.m == code.m);
    CHECK(back.n == code.n);
    CHECK(back.basis.size() == code.basis.size());
    for (std::size_t i = 0; i < code.basis.size(); ++i)
      CHECK(back.basis[i] == code.basis[i]);
    CHECK(write_code_file(back) == text);
  }
  CHECK_THROWS_AS(read_code_file("RMC 2\n"), ParseError);
}
