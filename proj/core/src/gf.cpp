#include "ferro/gf.hpp"

#include <algorithm>

namespace ferro {
namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % p);
}

// Polynomial helpers over an arbitrary coefficient field, dense little-endian
// vectors of element codes.
using Poly = std::vector<std::uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const FieldCtx& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
  }
  return c;
}

// Remainder of a modulo monic b.
Poly poly_rem(const FieldCtx& f, Poly a, const Poly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    std::uint64_t c = a.back();
    std::size_t shift = a.size() - 1 - db;
    if (c != 0)
      for (std::size_t j = 0; j < db; ++j)
        a[shift + j] = f.sub(a[shift + j], f.mul(c, b[j]));
    a.pop_back();
    trim(a);
    if (a.size() <= db) break;
  }
  trim(a);
  return a;
}

bool poly_is_zero(const Poly& a) { return a.empty(); }

// Exhaustive irreducibility test: no root over the base, and for degree >= 4
// no monic factor of degree 2..deg/2 (trial division).
bool is_irreducible(const FieldCtx& f, const Poly& mod) {
  const std::size_t k = mod.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  const std::uint64_t q = f.order();
  if (q > (1u << 20))
    throw PreconditionError("irreducibility test: base field too large");
  for (std::uint64_t x = 0; x < q; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;) acc = f.add(f.mul(acc, x), mod[i]);
    if (acc == 0) return false;
  }
  for (std::size_t d = 2; 2 * d <= k; ++d) {
    double cand = 1;
    for (std::size_t i = 0; i < d; ++i) cand *= static_cast<double>(q);
    if (cand > double(1u << 22))
      throw PreconditionError("irreducibility test: degree too large");
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= q;
    Poly div(d + 1, 0);
    div[d] = 1;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t t = idx;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = t % q;
        t /= q;
      }
      if (poly_is_zero(poly_rem(f, mod, div))) return false;
    }
  }
  return true;
}

// Smallest prime factor based factorization; fine at the scales we accept.
std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

// Gaussian inverse of a k x k matrix over f; returns empty if singular.
std::vector<std::uint64_t> gauss_inverse(const FieldCtx& f, unsigned k,
                                         std::vector<std::uint64_t> a) {
  std::vector<std::uint64_t> inv(std::size_t(k) * k, 0);
  for (unsigned i = 0; i < k; ++i) inv[std::size_t(i) * k + i] = 1;
  for (unsigned col = 0; col < k; ++col) {
    unsigned piv = col;
    while (piv < k && a[std::size_t(piv) * k + col] == 0) ++piv;
    if (piv == k) return {};
    if (piv != col)
      for (unsigned j = 0; j < k; ++j) {
        std::swap(a[std::size_t(piv) * k + j], a[std::size_t(col) * k + j]);
        std::swap(inv[std::size_t(piv) * k + j], inv[std::size_t(col) * k + j]);
      }
    std::uint64_t s = f.inv(a[std::size_t(col) * k + col]);
    for (unsigned j = 0; j < k; ++j) {
      a[std::size_t(col) * k + j] = f.mul(a[std::size_t(col) * k + j], s);
      inv[std::size_t(col) * k + j] = f.mul(inv[std::size_t(col) * k + j], s);
    }
    for (unsigned r = 0; r < k; ++r) {
      if (r == col) continue;
      std::uint64_t c = a[std::size_t(r) * k + col];
      if (c == 0) continue;
      for (unsigned j = 0; j < k; ++j) {
        a[std::size_t(r) * k + j] =
            f.sub(a[std::size_t(r) * k + j], f.mul(c, a[std::size_t(col) * k + j]));
        inv[std::size_t(r) * k + j] =
            f.sub(inv[std::size_t(r) * k + j], f.mul(c, inv[std::size_t(col) * k + j]));
      }
    }
  }
  return inv;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

void FieldCtx::build_tables() {
  if (order_ > 256) return;
  const unsigned q = static_cast<unsigned>(order_);
  add_tab_.assign(256 * 256, 0);
  mul_tab_.assign(256 * 256, 0);
  inv_tab_.assign(256, 0);
  for (unsigned a = 0; a < q; ++a) {
    for (unsigned b = 0; b < q; ++b) {
      add_tab_[a * 256 + b] = static_cast<std::uint8_t>(add(a, b));
      mul_tab_[a * 256 + b] = static_cast<std::uint8_t>(mul(a, b));
    }
    // not inv(): that would read back the half-built table
    if (a) inv_tab_[a] = static_cast<std::uint8_t>(pow(a, order_ - 2));
  }
}

FieldCtxPtr FieldCtx::make(std::uint64_t p, unsigned k) {
  if (!is_prime(p)) throw PreconditionError("characteristic must be prime");
  if (k == 0) throw PreconditionError("extension degree must be positive");
  auto prime = std::shared_ptr<FieldCtx>(new FieldCtx());
  prime->p_ = p;
  prime->k_ = 1;
  prime->order_ = p;
  prime->mod_ = {0, 1};
  prime->build_tables();
  if (k == 1) return prime;
  return extend(prime, k);
}

FieldCtxPtr FieldCtx::extend(const FieldCtxPtr& base, unsigned m) {
  if (!base) throw PreconditionError("null base field");
  if (m == 0) throw PreconditionError("extension degree must be positive");
  if (m == 1) return base;
  const std::uint64_t q = base->order();
  // Search moduli in lexicographic order, constant term most significant.
  std::uint64_t total = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (total > (std::uint64_t(1) << 40) / q)
      throw PreconditionError("modulus search space too large");
    total *= q;
  }
  std::vector<std::uint64_t> mod(m + 1, 0);
  mod[m] = 1;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    // Lexicographic on (c_0, ..., c_{m-1}) with c_0 most significant, so the
    // constant term is the slowest-varying digit of idx.
    std::uint64_t t = idx;
    for (unsigned pos = m; pos-- > 0;) {
      mod[pos] = t % q;
      t /= q;
    }
    mod[m] = 1;
    if (is_irreducible(*base, mod)) return with_modulus(base, mod);
  }
  throw PreconditionError("no irreducible modulus found");
}

FieldCtxPtr FieldCtx::with_modulus(const FieldCtxPtr& base,
                                   std::vector<std::uint64_t> mod) {
  if (!base) throw PreconditionError("null base field");
  if (mod.size() < 2 || mod.back() != 1)
    throw PreconditionError("modulus must be monic of degree >= 1");
  for (std::uint64_t c : mod)
    if (c >= base->order()) throw PreconditionError("modulus coefficient out of range");
  if (!is_irreducible(*base, mod)) throw PreconditionError("modulus is reducible");
  auto f = std::shared_ptr<FieldCtx>(new FieldCtx());
  f->p_ = base->p();
  f->k_ = static_cast<unsigned>(mod.size() - 1);
  f->base_ = base;
  f->mod_ = std::move(mod);
  std::uint64_t order = 1;
  for (unsigned i = 0; i < f->k_; ++i) {
    if (order > std::uint64_t(1) << 56)
      throw PreconditionError("field order too large");
    order *= base->order();
  }
  f->order_ = order;
  f->build_tables();
  return f;
}

std::vector<unsigned> FieldCtx::tower() const {
  std::vector<unsigned> t;
  for (const FieldCtx* f = this; f && f->base_; f = f->base_.get())
    t.push_back(f->k_);
  std::reverse(t.begin(), t.end());
  return t;
}

std::string FieldCtx::describe() const {
  std::string s = "GF(" + std::to_string(p_);
  std::uint64_t o = order_;
  unsigned e = 0;
  while (o > 1) {
    o /= p_;
    ++e;
  }
  if (e > 1) s += "^" + std::to_string(e);
  return s + ")";
}

std::uint64_t FieldCtx::add(std::uint64_t a, std::uint64_t b) const {
  if (prime_field()) {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  const std::uint64_t B = base_->order();
  std::uint64_t out = 0, mult = 1;
  for (unsigned i = 0; i < k_; ++i) {
    out += base_->add(a % B, b % B) * mult;
    a /= B;
    b /= B;
    mult *= B;
  }
  return out;
}

std::uint64_t FieldCtx::neg(std::uint64_t a) const {
  if (prime_field()) return a == 0 ? 0 : p_ - a;
  const std::uint64_t B = base_->order();
  std::uint64_t out = 0, mult = 1;
  for (unsigned i = 0; i < k_; ++i) {
    out += base_->neg(a % B) * mult;
    a /= B;
    mult *= B;
  }
  return out;
}

std::uint64_t FieldCtx::sub(std::uint64_t a, std::uint64_t b) const {
  return add(a, neg(b));
}

std::uint64_t FieldCtx::mul(std::uint64_t a, std::uint64_t b) const {
  if (prime_field()) {
    if (p_ <= (std::uint64_t(1) << 32)) return a * b % p_;
    return mulmod(a, b, p_);
  }
  const std::uint64_t B = base_->order();
  std::uint64_t da[64], db[64], dc[128];
  for (unsigned i = 0; i < k_; ++i) {
    da[i] = a % B;
    a /= B;
    db[i] = b % B;
    b /= B;
  }
  const unsigned nc = 2 * k_ - 1;
  for (unsigned i = 0; i < nc; ++i) dc[i] = 0;
  for (unsigned i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j)
      dc[i + j] = base_->add(dc[i + j], base_->mul(da[i], db[j]));
  }
  for (unsigned i = nc; i-- > k_;) {
    std::uint64_t c = dc[i];
    if (c == 0) continue;
    for (unsigned j = 0; j < k_; ++j)
      dc[i - k_ + j] = base_->sub(dc[i - k_ + j], base_->mul(c, mod_[j]));
    dc[i] = 0;
  }
  std::uint64_t out = 0, mult = 1;
  for (unsigned i = 0; i < k_; ++i) {
    out += dc[i] * mult;
    mult *= B;
  }
  return out;
}

std::uint64_t FieldCtx::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t FieldCtx::inv(std::uint64_t a) const {
  if (a == 0) throw PreconditionError("inverse of zero");
  if (has_tables()) return inv_tab_[a];
  return pow(a, order_ - 2);
}

std::uint64_t FieldCtx::multiplicative_order(std::uint64_t a) const {
  if (a == 0) throw PreconditionError("order of zero");
  std::uint64_t n = order_ - 1;
  for (std::uint64_t f : prime_factors(order_ - 1))
    while (n % f == 0 && pow(a, n / f) == 1) n /= f;
  return n;
}

std::vector<std::uint64_t> FieldCtx::decode(std::uint64_t a) const {
  std::vector<std::uint64_t> d(k_);
  const std::uint64_t B = base_order();
  for (unsigned i = 0; i < k_; ++i) {
    d[i] = a % B;
    a /= B;
  }
  return d;
}

std::uint64_t FieldCtx::encode(const std::vector<std::uint64_t>& digits) const {
  const std::uint64_t B = base_order();
  std::uint64_t out = 0, mult = 1;
  for (unsigned i = 0; i < k_; ++i) {
    std::uint64_t d = i < digits.size() ? digits[i] : 0;
    if (d >= B) throw PreconditionError("digit out of range");
    out += d * mult;
    mult *= B;
  }
  return out;
}

FieldCtxPtr make_field(std::uint64_t p, unsigned k) { return FieldCtx::make(p, k); }

FieldCtxPtr extend_field(const FieldCtxPtr& base, unsigned m) {
  return FieldCtx::extend(base, m);
}

FieldCtxPtr make_field_of_order(std::uint64_t q) {
  if (q < 2) throw PreconditionError("field order must be at least 2");
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    unsigned k = 0;
    std::uint64_t t = q;
    while (t % p == 0) {
      t /= p;
      ++k;
    }
    if (t != 1) throw PreconditionError("field order must be a prime power");
    return make_field(p, k);
  }
  return make_field(q, 1);  // q prime
}

FieldElement primitive_element(const FieldCtxPtr& ctx) {
  for (std::uint64_t v = 1; v < ctx->order(); ++v)
    if (ctx->multiplicative_order(v) == ctx->order() - 1) return {ctx, v};
  throw PreconditionError("no primitive element found");
}

FieldElement subfield_element(const FieldCtxPtr& ctx, unsigned b) {
  if (ctx->prime_field()) throw PreconditionError("subfield_element: need an extension field");
  if (b == 0 || ctx->degree() % b != 0)
    throw PreconditionError("subfield degree must divide the extension degree");
  const std::uint64_t q = ctx->base_order();
  std::uint64_t qb = 1;
  for (unsigned i = 0; i < b; ++i) qb *= q;
  FieldElement alpha = primitive_element(ctx);
  return alpha.pow((ctx->order() - 1) / (qb - 1));
}

OrderedBasis::OrderedBasis(std::vector<FieldElement> elems)
    : elems_(std::move(elems)) {
  if (elems_.empty()) throw PreconditionError("empty basis");
  field_ = elems_[0].ctx();
  if (!field_ || field_->prime_field())
    throw PreconditionError("basis elements must live in an extension field");
  basef_ = field_->base();
  k_ = field_->degree();
  if (elems_.size() != k_) throw PreconditionError("basis has wrong size");
  std::vector<std::uint64_t> mat(std::size_t(k_) * k_);
  for (unsigned j = 0; j < k_; ++j) {
    auto d = field_->decode(elems_[j].value());
    for (unsigned i = 0; i < k_; ++i) mat[std::size_t(i) * k_ + j] = d[i];
  }
  inv_ = gauss_inverse(*basef_, k_, std::move(mat));
  if (inv_.empty()) throw PreconditionError("basis elements are dependent");
}

OrderedBasis OrderedBasis::power_basis(const FieldCtxPtr& ext) {
  if (!ext || ext->prime_field())
    throw PreconditionError("power basis: need an extension field");
  std::vector<FieldElement> e;
  const std::uint64_t g = ext->base_order();  // digits (0,1,0,...) = the root
  FieldElement x(ext, g), acc(ext, 1);
  for (unsigned i = 0; i < ext->degree(); ++i) {
    e.push_back(acc);
    acc = acc * x;
  }
  return OrderedBasis(std::move(e));
}

std::vector<std::uint64_t> OrderedBasis::coordinates(const FieldElement& a) const {
  auto d = field_->decode(a.value());
  std::vector<std::uint64_t> out(k_, 0);
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned j = 0; j < k_; ++j)
      out[i] = basef_->add(out[i], basef_->mul(inv_[std::size_t(i) * k_ + j], d[j]));
  return out;
}

FieldElement OrderedBasis::from_coordinates(
    const std::vector<std::uint64_t>& coords) const {
  FieldElement acc(field_, 0);
  for (unsigned i = 0; i < k_ && i < coords.size(); ++i) {
    FieldElement c(field_, field_->encode({coords[i]}));
    acc = acc + c * elems_[i];
  }
  return acc;
}

std::vector<std::uint64_t> coordinates(const FieldElement& a, const OrderedBasis& B) {
  return B.coordinates(a);
}

LinearMap::LinearMap(OrderedBasis domain, std::vector<FieldElement> images)
    : domain_(std::move(domain)), images_(std::move(images)) {
  if (images_.size() != domain_.size())
    throw PreconditionError("linear map: image count must match basis size");
}

FieldElement LinearMap::apply(const FieldElement& a) const {
  auto c = domain_.coordinates(a);
  FieldElement acc(domain_.field(), 0);
  const auto& bf = domain_.base_field();
  for (std::size_t i = 0; i < images_.size(); ++i) {
    FieldElement ci(domain_.field(), domain_.field()->encode({c[i]}));
    (void)bf;
    acc = acc + ci * images_[i];
  }
  return acc;
}

LinearMap linear_map_from_basis_images(const OrderedBasis& domain,
                                       const std::vector<FieldElement>& images) {
  return LinearMap(domain, images);
}

}  // namespace ferro
