#pragma once

// F_q-linear rank-metric codes given by a list of basis matrices, exact and
// sampled minimum-distance computation, maximality verification, and the
// RREF lift used by the multilevel subspace construction.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ferro/ferrers.hpp"
#include "ferro/matrix.hpp"

namespace ferro {

struct RankMetricCode {
  FieldCtxPtr ctx;
  std::size_t m = 0, n = 0;
  std::vector<GfMatrix> basis;
  std::optional<FerrersDiagram> shape;  // claimed shape, if any
  std::optional<unsigned> delta;        // claimed designed distance, if any
};

// Enumeration budget for exact distance computation: number of projective
// coefficient vectors examined. Default 2^24, overridable via FERRO_BUDGET.
std::uint64_t default_budget();

// Rank of the flattened basis; the span's dimension (<= basis.size()).
std::size_t code_dimension(const RankMetricCode& c);

// Exact minimum rank distance by projective enumeration of all nonzero
// codewords (first nonzero coefficient normalized to 1). Throws
// BudgetExceeded when (q^k-1)/(q-1) > budget. dim 0 is an error.
unsigned min_rank_distance_exact(const RankMetricCode& c, std::uint64_t budget);

// Sampled lower-confidence variant: minimum over `trials` random nonzero
// codewords. An upper bound witness for the true distance.
unsigned min_rank_distance_sampled(const RankMetricCode& c, std::uint64_t trials,
                                   std::uint64_t seed);

struct VerificationReport {
  std::size_t dimension = 0;
  bool independent = false;   // basis matrices independent
  bool shape_ok = false;      // all basis matrices supported inside F
  unsigned distance = 0;      // exact when `exact`, else sampled upper bound
  bool exact = false;
  std::uint64_t codewords_examined = 0;
  unsigned nu_min = 0;
  bool maximal = false;       // exact && dimension == nu_min && distance >= delta
};

// Checks dim == nu_min(F; delta), support containment in F, and (exactly,
// within budget) distance >= delta.
VerificationReport verify_maximal(const RankMetricCode& c, const FerrersDiagram& f,
                                  unsigned delta, std::uint64_t budget);

bool matrix_has_shape(const GfMatrix& a, const FerrersDiagram& f);

// Pivot columns of the lifted m x (m+n) RREF: t_{i-1} + i with
// t_i = |{j : c_j <= i}|.
std::vector<std::size_t> lift_pivots(const FerrersDiagram& f);

// Inserts identity columns at the pivot positions; requires shape(F).
GfMatrix lift_to_rref(const GfMatrix& a, const FerrersDiagram& f);
std::vector<GfMatrix> lift_to_rref(const RankMetricCode& c, const FerrersDiagram& f);

// Basis change zeroing the entry at `dot` in all but one basis matrix, then
// drops that matrix: a dimension k-1 code supported inside F minus the dot.
// Error when every basis matrix is already zero there.
RankMetricCode subcode_dropping_position(const RankMetricCode& c, Dot dot);

// --- code file format -------------------------------------------------------
//
//   RMC 1
//   field p=<p> tower=<k1>,<k2>,...
//   modulus <c0>,<c1>,...        (one line per tower level, base codes)
//   dims m=<m> n=<n> k=<k>
//   shape <c1>,...,<cn>@<m>      (optional)
//   delta <d>                    (optional)
//   matrix <index>
//   <row of n integers, space separated> x m
//   (blank line between matrices)

std::string write_code_file(const RankMetricCode& c);
RankMetricCode read_code_file(const std::string& text);

}  // namespace ferro
