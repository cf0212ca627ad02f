#pragma once

// Dense matrices over a FieldCtx, plus row-space utilities.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ferro/gf.hpp"

namespace ferro {

class GfMatrix {
 public:
  GfMatrix() = default;
  GfMatrix(FieldCtxPtr ctx, std::size_t rows, std::size_t cols)
      : ctx_(std::move(ctx)), rows_(rows), cols_(cols), e_(rows * cols, 0) {}

  static GfMatrix identity(const FieldCtxPtr& ctx, std::size_t n);

  const FieldCtxPtr& ctx() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint64_t at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, std::uint64_t v) { e_[i * cols_ + j] = v; }
  const std::vector<std::uint64_t>& data() const { return e_; }

  bool is_zero() const;
  GfMatrix operator+(const GfMatrix& o) const;
  GfMatrix operator-(const GfMatrix& o) const;
  GfMatrix operator*(const GfMatrix& o) const;
  GfMatrix scaled(std::uint64_t c) const;
  GfMatrix transposed() const;
  bool operator==(const GfMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }

  std::size_t rank() const;
  std::uint64_t det() const;
  // Reduced row echelon form and its pivot column indices.
  std::pair<GfMatrix, std::vector<std::size_t>> rref() const;
  // Basis of the right nullspace, one vector per row.
  GfMatrix nullspace() const;

  // True when det(x*I - M) has no root in the field, i.e. the matrix has no
  // eigenvalue (empty spectrum).
  bool spectrum_free() const;

  // Whether v lies in the span of this matrix's columns.
  bool colspace_contains(const std::vector<std::uint64_t>& v) const;

  std::vector<std::uint64_t> row(std::size_t i) const;
  void set_row(std::size_t i, const std::vector<std::uint64_t>& v);

 private:
  FieldCtxPtr ctx_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint64_t> e_;
};

// Row space in RREF. The canonical representation makes equality and
// membership tests cheap.
class Subspace {
 public:
  Subspace(FieldCtxPtr ctx, std::size_t ambient);
  static Subspace from_vectors(const FieldCtxPtr& ctx, std::size_t ambient,
                               const std::vector<std::vector<std::uint64_t>>& vecs);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const GfMatrix& basis() const { return basis_; }
  const FieldCtxPtr& ctx() const { return ctx_; }
  bool contains(const std::vector<std::uint64_t>& v) const;
  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

 private:
  FieldCtxPtr ctx_;
  std::size_t ambient_;
  GfMatrix basis_;  // RREF, no zero rows
};

Subspace intersect(const Subspace& u, const Subspace& v);

// Image of a subspace of the extension field (rows = coordinates w.r.t. B)
// under multiplication by a.
Subspace scaled_subspace(const Subspace& v, const FieldElement& a,
                         const OrderedBasis& B);

}  // namespace ferro
