#pragma once

// Ferrers diagrams (top- and right-aligned dot patterns), the dimension bound
// profile, and the combinatorial predicates attached to a pair (F; delta).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ferro/gf.hpp"

namespace ferro {

struct Dot {
  unsigned row = 0, col = 0;  // 1-based
  bool operator==(const Dot& o) const { return row == o.row && col == o.col; }
  bool operator<(const Dot& o) const {
    return row != o.row ? row < o.row : col < o.col;
  }
};

class FerrersDiagram {
 public:
  // Column counts c_1 <= ... <= c_n, each <= m. c_1 = 0 and c_n < m allowed.
  FerrersDiagram(unsigned m, std::vector<unsigned> cols);
  // "c1,c2,...,cn" or "c1,...,cn@m" (default m = c_n).
  static FerrersDiagram parse(const std::string& text);
  std::string to_string() const;  // always includes @m

  unsigned m() const { return m_; }
  unsigned n() const { return static_cast<unsigned>(cols_.size()); }
  const std::vector<unsigned>& cols() const { return cols_; }
  unsigned dots() const;
  bool contains(unsigned row, unsigned col) const;  // 1-based
  std::vector<Dot> dot_list() const;

  // Drops empty leading columns and shrinks m to the tallest column.
  FerrersDiagram normalized() const;
  FerrersDiagram transposed() const;

  bool operator==(const FerrersDiagram& o) const {
    return m_ == o.m_ && cols_ == o.cols_;
  }
  bool operator<(const FerrersDiagram& o) const {
    return cols_ != o.cols_ ? cols_ < o.cols_ : m_ < o.m_;
  }

 private:
  unsigned m_;
  std::vector<unsigned> cols_;
};

struct BoundProfile {
  unsigned delta;
  std::vector<unsigned> nu;         // nu_0 .. nu_{delta-1}
  unsigned nu_min;
  unsigned argmin;                  // smallest attaining index
  std::vector<unsigned> all_argmin; // every attaining index
};

// nu_j = dots left after deleting the top j rows and the rightmost
// delta-1-j columns; nu_min is the dimension bound for [F; delta]-codes.
BoundProfile nu_profile(const FerrersDiagram& f, unsigned delta);

// Dots whose individual removal keeps the diagram a Ferrers diagram and
// leaves nu_min unchanged.
std::vector<Dot> pending_dots(const FerrersDiagram& f, unsigned delta);

// One-dot-removed subdiagrams whose nu_min dropped by exactly one
// (the reduction step: a maximal code for f yields one for each child).
std::vector<FerrersDiagram> reduction_children(const FerrersDiagram& f,
                                               unsigned delta);

// |D_r intersect F| for r = 1..m, where D_r = {(i,j) : j - i = n - r}.
std::vector<unsigned> diagonal_intersections(const FerrersDiagram& f);

// nu_min == sum_r max(|D_r ∩ F| - delta + 1, 0).
bool mds_constructible(const FerrersDiagram& f, unsigned delta);

// Diagonal witness equivalent to mds_constructible: for some alpha attaining
// nu_min, a diagonal D_s carrying exactly delta-1 dots outside the residual
// diagram F_(alpha), with no residual dots below D_s and at least one on it.
struct MdsDiagonalWitness {
  bool found = false;
  unsigned alpha = 0, s = 0;
};
MdsDiagonalWitness mds_diagonal(const FerrersDiagram& f, unsigned delta);

// The staircase inequality c_t <= c_{l+1} - eps*(l+1-t) for t in [l], where
// l = n-delta+1 and eps = dots missing from the rightmost delta-1 columns.
bool staircase_check(const FerrersDiagram& f, unsigned delta);

// c_l = c_{l+1} < m, gcd(c_l, m) = 1 and nu_min = nu_0: no maximal code of
// this shape sits inside any extension-linear MRD code.
bool not_subfield_realizable(const FerrersDiagram& f, unsigned delta);

// Classification for delta = n over an algebraically closed field.
struct DeltaNReport {
  bool nu_min_zero = false;
  unsigned nu_min = 0;
  // true: nu_min attained by some nu_j with j > 0 (case with the
  // "c_s = s staircase corner" criterion); false: attained only by nu_0.
  bool attained_beyond_nu0 = false;
  bool mds_constructible = false;
  bool maximal_exists_closed_field = false;
  int c = 0;                        // min(c_t - t + 1)
  std::optional<unsigned> corner_s; // witness s with c_s = s, c_t <= s-1 below
};
DeltaNReport delta_n_classification(const FerrersDiagram& f);

// All m x n diagrams (including empty leading columns), lexicographic order.
std::vector<FerrersDiagram> enumerate_diagrams(unsigned m, unsigned n);

}  // namespace ferro
