#include "doctest.h"
#include "ferro/gf.hpp"
#include "ferro/prng.hpp"

using namespace ferro;

// Moduli are the lexicographically smallest monic irreducibles (constant
// term first), so they are pinned exactly.
TEST_CASE("modulus selection is deterministic and minimal") {
  CHECK(make_field(2, 1)->modulus() == std::vector<std::uint64_t>{0, 1});
  CHECK(make_field(2, 2)->modulus() == std::vector<std::uint64_t>{1, 1, 1});
  CHECK(make_field(3, 2)->modulus() == std::vector<std::uint64_t>{1, 0, 1});
  CHECK(make_field(2, 3)->modulus() == std::vector<std::uint64_t>{1, 0, 1, 1});
  CHECK(make_field(2, 6)->order() == 64);
  CHECK(make_field(2, 4)->modulus() == make_field(2, 4)->modulus());
}

TEST_CASE("extension towers") {
  auto gf4 = make_field(2, 2);
  auto same = extend_field(gf4, 1);
  CHECK(same->order() == 4);
  auto gf64 = extend_field(gf4, 3);
  CHECK(gf64->order() == 64);
  CHECK(gf64->tower() == std::vector<unsigned>{2, 3});
  CHECK(make_field_of_order(9)->order() == 9);
  CHECK(make_field_of_order(25)->p() == 5);
  CHECK_THROWS_AS(make_field_of_order(6), PreconditionError);
}

static void check_axioms(const FieldCtxPtr& f) {
  TrialRng rng(42, f->order());
  for (int i = 0; i < 1000; ++i) {
    std::uint64_t a = rng.below(f->order());
    std::uint64_t b = rng.below(f->order());
    std::uint64_t c = rng.below(f->order());
    CHECK(f->add(a, f->add(b, c)) == f->add(f->add(a, b), c));
    CHECK(f->mul(a, f->mul(b, c)) == f->mul(f->mul(a, b), c));
    CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
    CHECK(f->add(a, f->neg(a)) == 0);
    if (a) CHECK(f->mul(a, f->inv(a)) == 1);
    CHECK(f->sub(a, b) == f->add(a, f->neg(b)));
  }
}

TEST_CASE("field axioms on random samples") {
  check_axioms(make_field(2, 3));
  check_axioms(make_field(3, 2));
  check_axioms(make_field(5, 2));
  check_axioms(make_field(2, 6));
  check_axioms(extend_field(make_field(2, 2), 2));
}

// The flat tables must agree with the direct arithmetic; in particular
// inv_table must be a true inverse table.
TEST_CASE("operation tables match direct arithmetic") {
  for (auto f : {make_field(2, 1), make_field(2, 4), make_field(3, 3),
                 make_field(2, 8)}) {
    REQUIRE(f->has_tables());
    const auto& add = f->add_table();
    const auto& mul = f->mul_table();
    const auto& inv = f->inv_table();
    for (std::uint64_t a = 0; a < f->order(); ++a) {
      if (a) {
        CHECK(inv[a] == f->inv(a));
        CHECK(f->mul(a, inv[a]) == 1);
      }
      for (std::uint64_t b = 0; b < f->order(); ++b) {
        CHECK(add[a * 256 + b] == f->add(a, b));
        CHECK(mul[a * 256 + b] == f->mul(a, b));
      }
    }
  }
  CHECK_FALSE(make_field(2, 9)->has_tables());
}

TEST_CASE("frobenius is additive") {
  for (auto f : {make_field(2, 4), make_field(3, 3)}) {
    TrialRng rng(7, 0);
    for (int i = 0; i < 200; ++i) {
      std::uint64_t a = rng.below(f->order());
      std::uint64_t b = rng.below(f->order());
      CHECK(f->frobenius(f->add(a, b)) ==
            f->add(f->frobenius(a), f->frobenius(b)));
    }
  }
}

TEST_CASE("encode/decode round trip") {
  auto f = make_field(3, 3);
  for (std::uint64_t a = 0; a < f->order(); ++a) {
    auto d = f->decode(a);
    CHECK(d.size() == 3);
    CHECK(f->encode(d) == a);
  }
}

TEST_CASE("primitive element is smallest generator") {
  CHECK(primitive_element(make_field(2, 1)).value() == 1);
  auto gf4 = make_field(2, 2);
  CHECK(primitive_element(gf4).value() == 2);  // x
  CHECK(gf4->multiplicative_order(2) == 3);
  auto gf8 = make_field(2, 3);
  CHECK(primitive_element(gf8).value() == 2);
  for (auto f : {make_field(3, 2), make_field(2, 6), make_field(5, 2)})
    CHECK(f->multiplicative_order(primitive_element(f).value()) ==
          f->order() - 1);
}

TEST_CASE("subfield generator") {
  auto gf64 = make_field(2, 6);
  auto alpha = primitive_element(gf64);
  auto beta = subfield_element(gf64, 2);
  CHECK(beta.value() == alpha.pow(21).value());
  CHECK(gf64->multiplicative_order(beta.value()) == 3);
  CHECK(beta.pow(4) == beta);  // beta^(q^b) = beta
  CHECK(subfield_element(gf64, 6).value() == alpha.value());

  auto gf16 = make_field(2, 4);
  auto b = subfield_element(gf16, 2);
  CHECK(b.value() == primitive_element(gf16).pow(5).value());
  CHECK((b * b + b + FieldElement(gf16, 1)).is_zero());
  CHECK_THROWS_AS(subfield_element(gf16, 3), PreconditionError);
}

TEST_CASE("ordered basis coordinates") {
  auto ext = make_field(2, 4);
  OrderedBasis P = OrderedBasis::power_basis(ext);
  for (unsigned i = 0; i < 4; ++i) {
    auto c = P.coordinates(P[i]);
    for (unsigned j = 0; j < 4; ++j) CHECK(c[j] == (i == j ? 1u : 0u));
  }
  TrialRng rng(3, 0);
  for (int i = 0; i < 100; ++i) {
    FieldElement a(ext, rng.below(16));
    CHECK(P.from_coordinates(P.coordinates(a)) == a);
  }
  // a non-power basis: (1, a, a^2+1, a^3) for the primitive a
  auto a = primitive_element(ext);
  OrderedBasis B({FieldElement(ext, 1), a, a * a + FieldElement(ext, 1),
                  a.pow(3)});
  FieldElement x(ext, 13), y(ext, 6);
  auto cx = B.coordinates(x), cy = B.coordinates(y);
  auto cs = B.coordinates(x + y);
  for (unsigned j = 0; j < 4; ++j) CHECK(cs[j] == (cx[j] ^ cy[j]));
}

TEST_CASE("linear map from basis images") {
  auto ext = make_field(2, 4);
  OrderedBasis P = OrderedBasis::power_basis(ext);
  std::vector<FieldElement> id{P[0], P[1], P[2], P[3]};
  LinearMap ident = linear_map_from_basis_images(P, id);
  for (std::uint64_t v = 0; v < 16; ++v)
    CHECK(ident.apply(FieldElement(ext, v)).value() == v);

  std::vector<FieldElement> sw{P[1], P[0], P[2], P[3]};
  LinearMap swap = linear_map_from_basis_images(P, sw);
  CHECK(swap.apply(P[0]) == P[1]);
  CHECK(swap.apply(P[1]) == P[0]);
  CHECK(swap.apply(P[2]) == P[2]);

  // map with prescribed images on a completed basis: check the prescription
  // and additivity
  auto a = primitive_element(ext);
  OrderedBasis B({FieldElement(ext, 1), a.pow(5), a.pow(7), a.pow(3)});
  std::vector<FieldElement> img{FieldElement(ext, 1), a, a.pow(2), a.pow(9)};
  LinearMap phi = linear_map_from_basis_images(B, img);
  CHECK(phi.apply(B[1]) == img[1]);
  CHECK(phi.apply(B[2]) == img[2]);
  TrialRng rng(11, 0);
  for (int i = 0; i < 100; ++i) {
    FieldElement x(ext, rng.below(16)), y(ext, rng.below(16));
    CHECK(phi.apply(x + y) == phi.apply(x) + phi.apply(y));
  }
}
