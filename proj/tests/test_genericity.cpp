#include <cmath>

#include "doctest.h"
#include "ferro/genericity.hpp"
#include "ferro/matrix.hpp"

using namespace ferro;

TEST_CASE("general linear group orders") {
  CHECK(gamma_n(1, 2) == 1);
  CHECK(gamma_n(2, 2) == 6);
  CHECK(gamma_n(3, 2) == 168);
  CHECK(gamma_n(2, 3) == 48);
}

TEST_CASE("spectrum-free counts match the exhaustive oracle") {
  for (std::uint64_t q : {2, 3, 4})
    CHECK(s_n_exact(1, q) == 0);
  CHECK(s_n_exact(0, 2) == 1);
  CHECK(s_n_exact(2, 2) == count_spectrum_free_exhaustive(2, 2));
  CHECK(s_n_exact(2, 2) == 2);
  CHECK(s_n_exact(2, 3) == count_spectrum_free_exhaustive(2, 3));
  CHECK(s_n_exact(2, 3) == 18);
  CHECK(s_n_exact(2, 4) == count_spectrum_free_exhaustive(2, 4));
  CHECK(s_n_exact(2, 4) == 72);
  CHECK(s_n_exact(3, 2) == count_spectrum_free_exhaustive(3, 2));
  CHECK(s_n_exact(3, 2) == 48);
  CHECK_THROWS_AS(count_spectrum_free_exhaustive(4, 5), BudgetExceeded);
}

TEST_CASE("generating function identity") {
  CHECK(s_n_series_check(4, 2));
  CHECK(s_n_series_check(4, 3));
  CHECK(s_n_series_check(3, 5));
}

TEST_CASE("limit constants") {
  CHECK(std::abs(pi_q(2, 100) - 0.0833986) < 1e-6);
  CHECK(std::abs(pi_q(31, 200) - 0.349996) < 1e-6);
  Rational e = pi_q_exact(2, 10);
  CHECK(e > 0);
  CHECK(e < 1);
  CHECK(std::abs(e.get_d() - pi_q(2, 10)) < 1e-12);
}

TEST_CASE("two-column MRD proportion is exactly 2/35 at q=2") {
  CHECK(proportion_m2_mrd(2, 2) == Rational(2, 35));
  CHECK(proportion_m2_mrd(1, 2) == 0);
  CHECK(proportion_m2_mrd(3, 2) > 0);
  CHECK(proportion_m2_mrd(3, 2) < 1);
}

TEST_CASE("proportion upper bounds") {
  struct Row { std::uint64_t q; double rounded; };
  const Row rows[] = {{2, 0.008}, {3, 0.0313}, {5, 0.065}, {7, 0.083},
                      {11, 0.102}};
  for (const auto& r : rows) {
    double v = upper_bound_randmrd(4, 3, 3, r.q).get_d();
    CHECK(std::abs(v - r.rounded) < 5e-4);
  }
  CHECK(upper_bound_randmrd(4, 3, 1, 2) == 1);  // exponent 0

  CHECK(std::abs(upper_bound_f1334(2).get_d() - 0.044) < 5e-4);
  CHECK(std::abs(upper_bound_f1334(3).get_d() - 0.1376) < 5e-5);
  // approaches 1/3 from below as q grows
  double prev = 0;
  for (std::uint64_t q : {2, 3, 5, 11, 31, 101}) {
    double v = upper_bound_f1334(q).get_d();
    CHECK(v > prev);
    CHECK(v < 1.0 / 3.0);
    prev = v;
  }
}

TEST_CASE("exact tuple enumeration on a tiny shape") {
  auto f = FerrersDiagram::parse("1,2@2");
  auto r = proportion_generic(f, 2, 2, 0, 1, 1, true);
  CHECK(r.exact);
  CHECK(r.trials == 8);
  CHECK(r.successes == 2);
  CHECK(r.estimate == doctest::Approx(0.25));
  CHECK(r.normalized == doctest::Approx(0.5));
  CHECK(r.converted == doctest::Approx(2.0 / 7.0));
}

TEST_CASE("distance one reduces to linear independence") {
  auto f = FerrersDiagram::parse("1,1@1");
  auto r = proportion_generic(f, 1, 2, 0, 1, 1, true);
  CHECK(r.successes == 6);  // ordered independent pairs in a 4-element space
  CHECK(r.trials == 16);
  CHECK(r.converted == doctest::Approx(1.0));
}

TEST_CASE("sampling is seed-reproducible and partition-independent") {
  auto f = FerrersDiagram::parse("1,3,3,4@4");
  auto a = proportion_generic(f, 3, 2, 20000, 99, 1);
  auto b = proportion_generic(f, 3, 2, 20000, 99, 4);
  CHECK(a.successes == b.successes);
  auto c = proportion_generic(f, 3, 2, 20000, 100, 1);
  // a different seed draws a different sample (overwhelmingly likely)
  CHECK(a.successes != c.successes);

  auto m1 = mrd_proportion_normalized(3, 3, 3, 2, 20000, 5, 1);
  auto m2 = mrd_proportion_normalized(3, 3, 3, 2, 20000, 5, 3);
  CHECK(m1.successes == m2.successes);
}

TEST_CASE("exhaustive square MRD proportion at m=n=2") {
  auto r = mrd_proportion_normalized(2, 2, 2, 2, 0, 1, 1, true);
  CHECK(r.exact);
  CHECK(r.trials == 16);
  CHECK(r.successes == 2);  // the spectrum-free count s_2(2)
  CHECK(r.normalized == doctest::Approx(2.0 / 16.0));
  CHECK(r.converted == doctest::Approx(proportion_m2_mrd(2, 2).get_d()));
}

TEST_CASE("growing field size pushes the success rate up") {
  auto f = FerrersDiagram::parse("1,2,3,4@4");
  auto rows = genericity_limit_scan(f, 2, 2, 2, 20000, 7, 2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].q == 2);
  CHECK(rows[1].q == 4);
  CHECK(rows[1].report.estimate > rows[0].report.estimate);
}
