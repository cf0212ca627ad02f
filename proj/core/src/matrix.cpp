#include "ferro/matrix.hpp"

#include <algorithm>

namespace ferro {

GfMatrix GfMatrix::identity(const FieldCtxPtr& ctx, std::size_t n) {
  GfMatrix m(ctx, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

bool GfMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](std::uint64_t v) { return v == 0; });
}

GfMatrix GfMatrix::operator+(const GfMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw PreconditionError("matrix addition: shape mismatch");
  GfMatrix r(ctx_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = ctx_->add(e_[i], o.e_[i]);
  return r;
}

GfMatrix GfMatrix::operator-(const GfMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw PreconditionError("matrix subtraction: shape mismatch");
  GfMatrix r(ctx_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = ctx_->sub(e_[i], o.e_[i]);
  return r;
}

GfMatrix GfMatrix::operator*(const GfMatrix& o) const {
  if (cols_ != o.rows_) throw PreconditionError("matrix product: shape mismatch");
  GfMatrix r(ctx_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        r.set(i, j, ctx_->add(r.at(i, j), ctx_->mul(a, o.at(k, j))));
    }
  return r;
}

GfMatrix GfMatrix::scaled(std::uint64_t c) const {
  GfMatrix r(ctx_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = ctx_->mul(e_[i], c);
  return r;
}

GfMatrix GfMatrix::transposed() const {
  GfMatrix r(ctx_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

std::pair<GfMatrix, std::vector<std::size_t>> GfMatrix::rref() const {
  GfMatrix a = *this;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
    std::size_t piv = r;
    while (piv < rows_ && a.at(piv, col) == 0) ++piv;
    if (piv == rows_) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols_; ++j) {
        std::uint64_t t = a.at(piv, j);
        a.set(piv, j, a.at(r, j));
        a.set(r, j, t);
      }
    std::uint64_t s = ctx_->inv(a.at(r, col));
    for (std::size_t j = col; j < cols_; ++j) a.set(r, j, ctx_->mul(a.at(r, j), s));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      std::uint64_t c = a.at(i, col);
      if (c == 0) continue;
      for (std::size_t j = col; j < cols_; ++j)
        a.set(i, j, ctx_->sub(a.at(i, j), ctx_->mul(c, a.at(r, j))));
    }
    pivots.push_back(col);
    ++r;
  }
  return {a, pivots};
}

std::size_t GfMatrix::rank() const {
  GfMatrix a = *this;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
    std::size_t piv = r;
    while (piv < rows_ && a.at(piv, col) == 0) ++piv;
    if (piv == rows_) continue;
    if (piv != r)
      for (std::size_t j = col; j < cols_; ++j) {
        std::uint64_t t = a.at(piv, j);
        a.set(piv, j, a.at(r, j));
        a.set(r, j, t);
      }
    std::uint64_t s = ctx_->inv(a.at(r, col));
    for (std::size_t i = r + 1; i < rows_; ++i) {
      std::uint64_t c = a.at(i, col);
      if (c == 0) continue;
      std::uint64_t f = ctx_->mul(c, s);
      for (std::size_t j = col; j < cols_; ++j)
        a.set(i, j, ctx_->sub(a.at(i, j), ctx_->mul(f, a.at(r, j))));
    }
    ++r;
  }
  return r;
}

std::uint64_t GfMatrix::det() const {
  if (rows_ != cols_) throw PreconditionError("determinant: square matrix required");
  GfMatrix a = *this;
  std::uint64_t d = 1;
  for (std::size_t col = 0; col < cols_; ++col) {
    std::size_t piv = col;
    while (piv < rows_ && a.at(piv, col) == 0) ++piv;
    if (piv == rows_) return 0;
    if (piv != col) {
      for (std::size_t j = col; j < cols_; ++j) {
        std::uint64_t t = a.at(piv, j);
        a.set(piv, j, a.at(col, j));
        a.set(col, j, t);
      }
      d = ctx_->neg(d);
    }
    std::uint64_t pv = a.at(col, col);
    d = ctx_->mul(d, pv);
    std::uint64_t s = ctx_->inv(pv);
    for (std::size_t i = col + 1; i < rows_; ++i) {
      std::uint64_t c = a.at(i, col);
      if (c == 0) continue;
      std::uint64_t f = ctx_->mul(c, s);
      for (std::size_t j = col; j < cols_; ++j)
        a.set(i, j, ctx_->sub(a.at(i, j), ctx_->mul(f, a.at(col, j))));
    }
  }
  return d;
}

GfMatrix GfMatrix::nullspace() const {
  auto [r, pivots] = rref();
  std::vector<std::size_t> free_cols;
  {
    std::size_t pi = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (pi < pivots.size() && pivots[pi] == j)
        ++pi;
      else
        free_cols.push_back(j);
    }
  }
  GfMatrix ns(ctx_, free_cols.size(), cols_);
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    std::size_t fc = free_cols[f];
    ns.set(f, fc, 1);
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
      ns.set(f, pivots[pi], ctx_->neg(r.at(pi, fc)));
  }
  return ns;
}

bool GfMatrix::spectrum_free() const {
  if (rows_ != cols_) throw PreconditionError("spectrum: square matrix required");
  for (std::uint64_t lam = 0; lam < ctx_->order(); ++lam) {
    GfMatrix a = *this;
    for (std::size_t i = 0; i < rows_; ++i) a.set(i, i, ctx_->sub(at(i, i), lam));
    if (a.det() == 0) return false;
  }
  return true;
}

bool GfMatrix::colspace_contains(const std::vector<std::uint64_t>& v) const {
  if (v.size() != rows_) throw PreconditionError("colspace_contains: length mismatch");
  GfMatrix aug(ctx_, rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug.set(i, j, at(i, j));
    aug.set(i, cols_, v[i]);
  }
  return aug.rank() == rank();
}

std::vector<std::uint64_t> GfMatrix::row(std::size_t i) const {
  return {e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_};
}

void GfMatrix::set_row(std::size_t i, const std::vector<std::uint64_t>& v) {
  if (v.size() != cols_) throw PreconditionError("set_row: length mismatch");
  std::copy(v.begin(), v.end(), e_.begin() + i * cols_);
}

Subspace::Subspace(FieldCtxPtr ctx, std::size_t ambient)
    : ctx_(std::move(ctx)), ambient_(ambient), basis_(ctx_, 0, ambient) {}

Subspace Subspace::from_vectors(
    const FieldCtxPtr& ctx, std::size_t ambient,
    const std::vector<std::vector<std::uint64_t>>& vecs) {
  GfMatrix m(ctx, vecs.size(), ambient);
  for (std::size_t i = 0; i < vecs.size(); ++i) m.set_row(i, vecs[i]);
  auto [r, pivots] = m.rref();
  Subspace s(ctx, ambient);
  GfMatrix b(ctx, pivots.size(), ambient);
  for (std::size_t i = 0; i < pivots.size(); ++i) b.set_row(i, r.row(i));
  s.basis_ = std::move(b);
  return s;
}

bool Subspace::contains(const std::vector<std::uint64_t>& v) const {
  std::vector<std::uint64_t> w = v;
  // Reduce against the RREF basis.
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    // The pivot of row i is its first nonzero entry (value 1).
    std::size_t p = 0;
    while (p < ambient_ && basis_.at(i, p) == 0) ++p;
    if (p == ambient_) continue;
    std::uint64_t c = w[p];
    if (c == 0) continue;
    for (std::size_t j = p; j < ambient_; ++j)
      w[j] = ctx_->sub(w[j], ctx_->mul(c, basis_.at(i, j)));
  }
  return std::all_of(w.begin(), w.end(), [](std::uint64_t x) { return x == 0; });
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient())
    throw PreconditionError("intersect: ambient dimension mismatch");
  const auto& ctx = u.ctx();
  const std::size_t du = u.dim(), dv = v.dim(), amb = u.ambient();
  // Solve x*U - y*V = 0; the x*U parts span the intersection.
  GfMatrix sys(ctx, amb, du + dv);
  for (std::size_t j = 0; j < du; ++j)
    for (std::size_t i = 0; i < amb; ++i) sys.set(i, j, u.basis().at(j, i));
  for (std::size_t j = 0; j < dv; ++j)
    for (std::size_t i = 0; i < amb; ++i)
      sys.set(i, du + j, ctx->neg(v.basis().at(j, i)));
  GfMatrix ker = sys.nullspace();
  std::vector<std::vector<std::uint64_t>> vecs;
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    std::vector<std::uint64_t> w(amb, 0);
    for (std::size_t j = 0; j < du; ++j) {
      std::uint64_t c = ker.at(r, j);
      if (c == 0) continue;
      for (std::size_t i = 0; i < amb; ++i)
        w[i] = ctx->add(w[i], ctx->mul(c, u.basis().at(j, i)));
    }
    vecs.push_back(std::move(w));
  }
  return Subspace::from_vectors(ctx, amb, vecs);
}

Subspace scaled_subspace(const Subspace& v, const FieldElement& a,
                         const OrderedBasis& B) {
  if (v.ambient() != B.size())
    throw PreconditionError("scaled_subspace: basis size must match ambient dim");
  std::vector<std::vector<std::uint64_t>> vecs;
  for (std::size_t r = 0; r < v.dim(); ++r) {
    FieldElement e = B.from_coordinates(v.basis().row(r)) * a;
    vecs.push_back(B.coordinates(e));
  }
  return Subspace::from_vectors(v.ctx(), v.ambient(), vecs);
}

}  // namespace ferro
