#include "doctest.h"
#include "ferro/matrix.hpp"
#include "ferro/prng.hpp"

using namespace ferro;

static GfMatrix from_rows(const FieldCtxPtr& f,
                          std::vector<std::vector<std::uint64_t>> rows) {
  GfMatrix m(f, rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

TEST_CASE("rank basics") {
  auto f2 = make_field(2, 1);
  CHECK(GfMatrix(f2, 3, 3).rank() == 0);
  CHECK(GfMatrix::identity(f2, 4).rank() == 4);
  // companion matrix of x^3+x+1: invertible since the constant term is 1
  auto c = from_rows(f2, {{0, 0, 1}, {1, 0, 1}, {0, 1, 0}});
  CHECK(c.rank() == 3);
  CHECK(c.det() != 0);
}

TEST_CASE("rref pins") {
  auto f2 = make_field(2, 1);
  auto [ri, pi] = GfMatrix::identity(f2, 3).rref();
  CHECK(ri == GfMatrix::identity(f2, 3));
  CHECK(pi == std::vector<std::size_t>{0, 1, 2});

  auto r = from_rows(f2, {{0, 1, 1}});
  auto [rr, pr] = r.rref();
  CHECK(rr == r);
  CHECK(pr == std::vector<std::size_t>{1});

  auto g = from_rows(f2, {{1, 0, 1, 1}, {0, 1, 1, 0}});  // (I | A)
  CHECK(g.rref().first == g);
}

TEST_CASE("rank-nullity and nullspace membership") {
  auto f3 = make_field(3, 1);
  TrialRng rng(5, 0);
  for (int t = 0; t < 50; ++t) {
    GfMatrix m(f3, 4, 6);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 6; ++j) m.set(i, j, rng.below(3));
    GfMatrix ns = m.nullspace();
    CHECK(m.rank() + ns.rows() == 6);
    for (std::size_t r = 0; r < ns.rows(); ++r) {
      GfMatrix v(f3, 6, 1);
      for (std::size_t j = 0; j < 6; ++j) v.set(j, 0, ns.at(r, j));
      CHECK((m * v).is_zero());
    }
  }
}

TEST_CASE("spectrum tests") {
  auto f2 = make_field(2, 1);
  auto one = from_rows(f2, {{1}});
  CHECK_FALSE(one.spectrum_free());
  CHECK_FALSE(from_rows(f2, {{0}}).spectrum_free());
  // companion of x^2+x+1 has no eigenvalue over GF(2)
  CHECK(from_rows(f2, {{0, 1}, {1, 1}}).spectrum_free());
  CHECK_FALSE(GfMatrix::identity(f2, 3).spectrum_free());
}

// Independent oracle for 4x4 over GF(2): bitmask elimination invertibility
// of M and M + I.
static bool inv16(unsigned mask) {
  unsigned rows[4];
  for (int i = 0; i < 4; ++i) rows[i] = (mask >> (4 * i)) & 0xf;
  int rank = 0;
  for (int c = 0; c < 4; ++c) {
    int p = -1;
    for (int r = rank; r < 4; ++r)
      if (rows[r] >> c & 1) { p = r; break; }
    if (p < 0) continue;
    std::swap(rows[rank], rows[p]);
    for (int r = 0; r < 4; ++r)
      if (r != rank && (rows[r] >> c & 1)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank == 4;
}

TEST_CASE("spectrum_free agrees with the bitmask oracle on GF(2) 4x4") {
  auto f2 = make_field(2, 1);
  TrialRng rng(9, 0);
  for (int t = 0; t < 2000; ++t) {
    unsigned mask = static_cast<unsigned>(rng.below(1u << 16));
    GfMatrix m(f2, 4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m.set(i, j, (mask >> (4 * i + j)) & 1);
    bool oracle = inv16(mask) && inv16(mask ^ 0x8421);
    CHECK(m.spectrum_free() == oracle);
  }
}

TEST_CASE("column space membership") {
  auto f2 = make_field(2, 1);
  auto m = from_rows(f2, {{1, 0}, {1, 1}, {0, 1}});
  CHECK(m.colspace_contains({0, 0, 0}));
  CHECK(m.colspace_contains({1, 1, 0}));
  CHECK(m.colspace_contains({1, 0, 1}));  // sum of the columns
  CHECK_FALSE(m.colspace_contains({1, 0, 0}));
  CHECK_FALSE(GfMatrix(f2, 3, 2).colspace_contains({1, 0, 0}));
}

TEST_CASE("subspace intersection") {
  auto f2 = make_field(2, 1);
  auto u = Subspace::from_vectors(f2, 3, {{1, 0, 1}, {0, 1, 0}});
  CHECK(intersect(u, u) == u);
  auto all = Subspace::from_vectors(f2, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(intersect(u, all) == u);
  auto l1 = Subspace::from_vectors(f2, 2, {{1, 0}});
  auto l2 = Subspace::from_vectors(f2, 2, {{0, 1}});
  CHECK(intersect(l1, l2).dim() == 0);

  // dim(U cap V) = dim U + dim V - dim(U+V) on random spans over GF(3)
  auto f3 = make_field(3, 1);
  TrialRng rng(13, 0);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::vector<std::uint64_t>> a(2), b(2);
    for (auto* v : {&a, &b})
      for (auto& row : *v) {
        row.resize(4);
        for (auto& x : row) x = rng.below(3);
      }
    auto U = Subspace::from_vectors(f3, 4, a);
    auto V = Subspace::from_vectors(f3, 4, b);
    auto both = a;
    both.insert(both.end(), b.begin(), b.end());
    auto S = Subspace::from_vectors(f3, 4, both);
    CHECK(intersect(U, V).dim() == U.dim() + V.dim() - S.dim());
  }
}

TEST_CASE("scaled subspace") {
  auto ext = make_field(2, 4);
  OrderedBasis P = OrderedBasis::power_basis(ext);
  auto v = Subspace::from_vectors(ext->base(), 4, {{1, 0, 0, 0}, {0, 1, 1, 0}});
  CHECK(scaled_subspace(v, FieldElement(ext, 1), P) == v);
  std::vector<std::vector<std::uint64_t>> full;
  for (unsigned i = 0; i < 4; ++i) {
    std::vector<std::uint64_t> e(4, 0);
    e[i] = 1;
    full.push_back(e);
  }
  auto whole = Subspace::from_vectors(ext->base(), 4, full);
  auto a = primitive_element(ext);
  CHECK(scaled_subspace(whole, a.pow(6), P) == whole);
  for (unsigned e = 1; e < 15; ++e)
    CHECK(scaled_subspace(v, a.pow(e), P).dim() == v.dim());
}
