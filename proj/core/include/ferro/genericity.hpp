#pragma once

// Spectrum-free matrix counting, exact proportion formulas, and Monte-Carlo
// estimation of the proportion of maximal Ferrers diagram codes.

#include <cstdint>
#include <gmpxx.h>
#include <vector>

#include "ferro/ferrers.hpp"

namespace ferro {

using Rational = mpq_class;

// |GL_n(F_q)| = prod_{j<n} (q^n - q^j).
mpz_class gamma_n(unsigned n, std::uint64_t q);

// Number of n x n matrices over F_q with empty spectrum, computed from the
// closed form s_n = gamma_n * sum_{j<=n} [u^j] A(u)^{q-1} with
// A(u) = sum_j a_j u^j, a_j = (-1)^j / prod_{l<=j} (q^l - 1). Exact; the
// rational intermediate is asserted to collapse to an integer.
mpz_class s_n_exact(unsigned n, std::uint64_t q);

// Verifies the generating function identity
//   1 + sum_n s_n/gamma_n u^n = (1-u)^{-1} prod_{r>=1} (1 - u/q^r)^{q-1}
// for all n <= n_max. The right-hand side is expanded exactly: the log of
// the infinite product has coefficient (1 - (q-1)/(q^k - 1))/k at u^k (the
// sum over r is geometric and is summed in closed form), and exp is applied
// via the usual power-series recurrence. No truncation is involved.
bool s_n_series_check(unsigned n_max, std::uint64_t q);

// Partial product prod_{r=1}^{terms} (1 - q^{-r})^q, the limit of
// s_n(q)/q^{n^2} as n grows.
double pi_q(std::uint64_t q, unsigned terms);
Rational pi_q_exact(std::uint64_t q, unsigned terms);

// Exact proportion of [m x 2; 2]-MRD codes among all m-dimensional
// rank-metric codes in F_q^{m x 2}:
//   s_m(q)/q^{m^2} * prod_i (q^{2m} - q^{i+m}) / (q^{2m} - q^i).
Rational proportion_m2_mrd(unsigned m, std::uint64_t q);

// Upper bound (s_m(q)/q^{m^2})^{(delta-1)(n-delta+1)} on the probability
// that the random normalized generator family spans an MRD code.
Rational upper_bound_randmrd(unsigned m, unsigned n, unsigned delta,
                             std::uint64_t q);

// Upper bound for the shape [1,3,3,4] with distance 3:
//   s_3(q)/q^9 * prod_{i=2..4} (1 - q^{-i}) * (q^7 - 2q^4 + q)/q^7.
Rational upper_bound_f1334(std::uint64_t q);

// Brute-force count of spectrum-free n x n matrices over GF(q); oracle for
// s_n_exact. Requires q^{n^2} <= 2^26.
std::uint64_t count_spectrum_free_exhaustive(unsigned n, std::uint64_t q);

struct ProportionReport {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;    // successes / trials (raw sample-space fraction)
  double ci3sigma = 0.0;    // 3 * sqrt(p(1-p)/trials); 0 in exact mode
  std::uint64_t seed = 0;
  bool exact = false;
  // Sample-space conversions (see the function-level comments).
  double normalized = 0.0;  // probability over normalized (pivoted) tuples
  double converted = 0.0;   // proportion among all N-dim codes of the ambient
};

// Draws N = nu_min(F;delta) matrices with i.i.d. uniform entries on the dots
// of F and zero elsewhere; a trial succeeds when every nonzero combination
// has rank >= delta (which forces dimension N). With estimate = p:
//   normalized = p * q^{N^2} / gamma_N(q)   (pivoted tuples, the sample
//                space used in the literature's reported frequencies), and
//   converted  = p * q^{|F| N} / prod_i (q^{|F|} - q^i)   (the proportion of
//                maximal codes among all N-dimensional shaped codes).
// exact=true enumerates all q^{|F| N} tuples instead of sampling; throws
// BudgetExceeded when the tuple count or the per-trial codeword count
// exceeds `budget` (0 = default_budget()).
ProportionReport proportion_generic(const FerrersDiagram& f, unsigned delta,
                                    std::uint64_t q, std::uint64_t trials,
                                    std::uint64_t seed, unsigned threads = 1,
                                    bool exact = false,
                                    std::uint64_t budget = 0);

// Proportion of [m x n; n]-MRD codes, sampled over normalized generator
// tuples: draws n-1 uniform m x m matrices M_1..M_{n-1}; success iff every
// nontrivial F_q-combination of them is spectrum-free. estimate is the
// normalized-tuple frequency |V^|/|V|; converted multiplies by
// prod_i (q^{mn} - q^{i+m(n-1)}) / (q^{mn} - q^i) to give the proportion
// among all m-dimensional codes in F_q^{m x n}. exhaustive=true enumerates
// the whole sample space (fast bit-sliced path for q=2, m=4, n=3; otherwise
// requires q^{m^2 (n-1)} <= budget).
ProportionReport mrd_proportion_normalized(unsigned m, unsigned n,
                                           unsigned delta, std::uint64_t q,
                                           std::uint64_t trials,
                                           std::uint64_t seed,
                                           unsigned threads = 1,
                                           bool exhaustive = false,
                                           std::uint64_t budget = 0);

struct LimitScanRow {
  unsigned r = 0;
  std::uint64_t q = 0;  // q0^r
  ProportionReport report;
};

// Monte-Carlo success frequency of proportion_generic over F_{q0^r}[F] for
// r = 1..r_max. Field order is capped at 256 (table-driven kernels).
std::vector<LimitScanRow> genericity_limit_scan(const FerrersDiagram& f,
                                                unsigned delta,
                                                std::uint64_t q0,
                                                unsigned r_max,
                                                std::uint64_t trials,
                                                std::uint64_t seed,
                                                unsigned threads = 1);

}  // namespace ferro
