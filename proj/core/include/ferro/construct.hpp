#pragma once

// Constructions of maximal Ferrers-diagram rank-metric codes: Gabidulin /
// systematic MRD generators, subfield-subcode constructions with column caps,
// companion-matrix codes, MDS codes on diagonals, the upper-triangular
// distance n-1 families, and the ad-hoc [1,3,3,4] code.

#include <cstdint>
#include <vector>

#include "ferro/code.hpp"
#include "ferro/ferrers.hpp"
#include "ferro/gf.hpp"
#include "ferro/matrix.hpp"

namespace ferro {

// F_{q^m} as a degree-m extension of the field of order q.
FieldCtxPtr extension_field(std::uint64_t q, unsigned m);

// Systematic generator (I_ell | A) of an extension-linear MRD code,
// ell x n over ext; every column of A satisfies rk(1, a_1..a_ell) = ell+1.
struct SystematicMrdGenerator {
  FieldCtxPtr ext;
  std::size_t n = 0, ell = 0;
  GfMatrix G;
};

// Moore matrix with rows (g_j^{q^r})_{r=0..ell-1}.
GfMatrix moore_matrix(const FieldCtxPtr& ext, const std::vector<std::uint64_t>& g,
                      std::size_t ell);

struct GabidulinResult {
  RankMetricCode code;   // as base-field matrices, dimension m*ell
  GfMatrix generator;    // the ell x n Moore matrix over ext
};

// Gabidulin code with evaluation points g (default 1, alpha, ..., alpha^{n-1});
// requires the g_j base-field independent. delta = n - ell + 1.
GabidulinResult gabidulin(const FieldCtxPtr& ext, std::size_t n, unsigned delta,
                          std::vector<std::uint64_t> g = {});

SystematicMrdGenerator systematic_generator(const FieldCtxPtr& ext, std::size_t n,
                                            unsigned delta,
                                            std::vector<std::uint64_t> g = {});

// Code {phi_B(uG) : u_t in <x_1..x_{c_t}>} for a diagram whose last delta-1
// columns are full; any ordered basis B works.
RankMetricCode construct_fn1(const FerrersDiagram& f, unsigned delta,
                             const SystematicMrdGenerator& gen,
                             const OrderedBasis& basis);
RankMetricCode construct_fn1(const FerrersDiagram& f, unsigned delta,
                             std::uint64_t q);

// Staircase generalization: missing dots in the rightmost delta-1 columns are
// allowed when c_t <= c_{l+1} - eps*(l+1-t); the basis is built from nested
// intersections of chain subspaces. chain, when given, must be nested with
// dim V_i = i in power-basis coordinates (default: coordinate prefixes).
RankMetricCode construct_staircase(const FerrersDiagram& f, unsigned delta,
                                   const SystematicMrdGenerator& gen,
                                   const std::vector<Subspace>* chain = nullptr);
RankMetricCode construct_staircase(const FerrersDiagram& f, unsigned delta,
                                   std::uint64_t q);

// Wrapper handling diagrams whose tall columns exceed n: truncates to
// min{c_t, m_hat}, constructs on the smaller diagram and re-embeds.
RankMetricCode construct_ctn(const FerrersDiagram& f, unsigned delta,
                             std::uint64_t q);

// MRD generator whose first non-systematic column is the prescribed vector a
// (requires rk(1, a_1..a_ell) = ell+1): found as the systematic form of a
// Gabidulin code whose evaluation points solve the interpolation constraints
// f_t(g_{ell+1}) = a_t (deterministic seeded search over g_1..g_ell).
SystematicMrdGenerator mrd_with_first_column(const FieldCtxPtr& ext, std::size_t n,
                                             unsigned delta,
                                             const std::vector<std::uint64_t>& a);

// Shape [b,..,b, l+1,..,l+1, m,..,m] via a beta-invariant subspace,
// beta = alpha^{(q^m-1)/(q^b-1)}; needs 3 <= delta <= n <= m, 2 <= b <= m/2,
// b | gcd(m, l+1). Dimension b(l-b+1) + (l+1)(b-1).
RankMetricCode construct_invariance(std::uint64_t q, unsigned m, unsigned n,
                                    unsigned delta, unsigned b);

// <I, C, ..., C^{i-1}> for the companion matrix C of the modulus of F_{q^m},
// with the t rightmost columns deleted; shape [min{i-1+j, m}]_j, delta = m-t.
RankMetricCode construct_companion(std::uint64_t q, unsigned m, unsigned i,
                                   unsigned t);

struct MdsDiagonalCode {
  RankMetricCode code;
  unsigned diagonal_sum = 0;
  bool maximal = false;  // diagonal_sum == nu_min
};

// One MDS code per diagonal carrying at least delta dots; needs
// q >= max |D_r ∩ F| - 1. Maximal exactly when (F; delta) is
// MDS-constructible; otherwise a valid code of dimension diagonal_sum.
MdsDiagonalCode construct_mds_diagonal(const FerrersDiagram& f, unsigned delta,
                                       std::uint64_t q);

// Dimension-3 distance n-1 codes of upper-triangular shape [1,2,...,n].
RankMetricCode construct_upper_triangular_explicit(unsigned n, std::uint64_t q,
                                                   std::uint64_t c,
                                                   std::uint64_t d);
RankMetricCode construct_upper_triangular_recursive(unsigned n, std::uint64_t q);

// Dimension-4 distance-3 code of shape [1,3,3,4] over any F_q, assembled from
// a normalized basis of a 3x3 full-distance code; exists even though the
// shape is not realizable inside any extension-linear MRD code.
RankMetricCode construct_f1334(std::uint64_t q);

}  // namespace ferro
