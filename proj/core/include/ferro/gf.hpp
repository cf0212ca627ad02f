#pragma once

// Finite field arithmetic for small fields and explicit extension towers.
//
// Elements are carried around as integer codes in [0, order). For a prime
// field GF(p) the code is just the residue. For an extension of degree k over
// a base field of order B, the code is the base-B mixed-radix encoding of the
// coefficient vector (constant term least significant). Chaining this through
// a tower reproduces the base-p digit expansion of the flattened coefficient
// vector, which is also the on-disk serialization.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ferro {

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Inconclusive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class FieldCtx;
using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

class FieldCtx {
 public:
  // GF(p^k) over GF(p) with the lexicographically smallest monic irreducible
  // modulus (coefficient tuples compared constant term first). k=1 gives the
  // prime field itself (modulus x).
  static FieldCtxPtr make(std::uint64_t p, unsigned k);
  // Degree-m extension of an arbitrary base field, same modulus rule.
  static FieldCtxPtr extend(const FieldCtxPtr& base, unsigned m);
  // Extension with a caller-supplied monic modulus (length m+1, base codes).
  // Verifies irreducibility.
  static FieldCtxPtr with_modulus(const FieldCtxPtr& base,
                                  std::vector<std::uint64_t> mod);

  std::uint64_t p() const { return p_; }
  unsigned degree() const { return k_; }  // over the immediate base
  std::uint64_t order() const { return order_; }
  std::uint64_t base_order() const { return base_ ? base_->order() : p_; }
  const FieldCtxPtr& base() const { return base_; }
  bool prime_field() const { return base_ == nullptr; }
  // Monic modulus over the immediate base; {0,1} (i.e. "x") for prime fields.
  const std::vector<std::uint64_t>& modulus() const { return mod_; }
  // Tower degrees from the prime field up, e.g. GF((3^2)^4) -> {2,4}.
  std::vector<unsigned> tower() const;
  std::string describe() const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t div(std::uint64_t a, std::uint64_t b) const { return mul(a, inv(b)); }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  // a ^ base_order(): the relative Frobenius of this extension step.
  std::uint64_t frobenius(std::uint64_t a) const { return pow(a, base_order()); }
  std::uint64_t multiplicative_order(std::uint64_t a) const;

  // Coefficient vector over the immediate base (length degree()).
  std::vector<std::uint64_t> decode(std::uint64_t a) const;
  std::uint64_t encode(const std::vector<std::uint64_t>& digits) const;

  // Flat operation tables, available when order() <= 256. Indexed a*256+b.
  bool has_tables() const { return !mul_tab_.empty(); }
  const std::vector<std::uint8_t>& add_table() const { return add_tab_; }
  const std::vector<std::uint8_t>& mul_table() const { return mul_tab_; }
  const std::vector<std::uint8_t>& inv_table() const { return inv_tab_; }

 private:
  FieldCtx() = default;
  void build_tables();

  std::uint64_t p_ = 0;
  unsigned k_ = 1;
  std::uint64_t order_ = 0;
  FieldCtxPtr base_;               // null for prime fields
  std::vector<std::uint64_t> mod_; // monic, length k_+1
  std::vector<std::uint8_t> add_tab_, mul_tab_, inv_tab_;
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldCtxPtr ctx, std::uint64_t v) : ctx_(std::move(ctx)), v_(v) {}

  std::uint64_t value() const { return v_; }
  const FieldCtxPtr& ctx() const { return ctx_; }
  bool is_zero() const { return v_ == 0; }

  FieldElement operator+(const FieldElement& o) const { return {ctx_, ctx_->add(v_, o.v_)}; }
  FieldElement operator-(const FieldElement& o) const { return {ctx_, ctx_->sub(v_, o.v_)}; }
  FieldElement operator*(const FieldElement& o) const { return {ctx_, ctx_->mul(v_, o.v_)}; }
  FieldElement operator/(const FieldElement& o) const { return {ctx_, ctx_->div(v_, o.v_)}; }
  FieldElement operator-() const { return {ctx_, ctx_->neg(v_)}; }
  bool operator==(const FieldElement& o) const { return v_ == o.v_; }
  bool operator!=(const FieldElement& o) const { return v_ != o.v_; }
  FieldElement inverse() const { return {ctx_, ctx_->inv(v_)}; }
  FieldElement pow(std::uint64_t e) const { return {ctx_, ctx_->pow(v_, e)}; }
  FieldElement frobenius() const { return {ctx_, ctx_->frobenius(v_)}; }

 private:
  FieldCtxPtr ctx_;
  std::uint64_t v_ = 0;
};

FieldCtxPtr make_field(std::uint64_t p, unsigned k);
FieldCtxPtr extend_field(const FieldCtxPtr& base, unsigned m);
// Builds GF(q) for a prime power q by factoring q = p^k.
FieldCtxPtr make_field_of_order(std::uint64_t q);

// Smallest element (by integer code, i.e. coefficient order with the constant
// term least significant) of multiplicative order q-1.
FieldElement primitive_element(const FieldCtxPtr& ctx);

// beta = alpha^((q^m-1)/(q^b-1)) generating the order-b subfield over the
// base, where alpha is the primitive element of ctx and q the base order.
FieldElement subfield_element(const FieldCtxPtr& ctx, unsigned b);

// Ordered basis of an extension field over its immediate base.
class OrderedBasis {
 public:
  explicit OrderedBasis(std::vector<FieldElement> elems);
  // 1, g, g^2, ..., g^{k-1} where g is the adjoined root of the modulus.
  static OrderedBasis power_basis(const FieldCtxPtr& ext);

  std::size_t size() const { return elems_.size(); }
  const FieldElement& operator[](std::size_t i) const { return elems_[i]; }
  const FieldCtxPtr& field() const { return field_; }
  const FieldCtxPtr& base_field() const { return basef_; }

  // Coordinates over the base field such that a = sum coords[i]*elems_[i].
  std::vector<std::uint64_t> coordinates(const FieldElement& a) const;
  FieldElement from_coordinates(const std::vector<std::uint64_t>& coords) const;

 private:
  std::vector<FieldElement> elems_;
  FieldCtxPtr field_, basef_;
  unsigned k_ = 0;
  std::vector<std::uint64_t> inv_; // k x k inverse of the coordinate matrix
};

std::vector<std::uint64_t> coordinates(const FieldElement& a, const OrderedBasis& B);

// Base-linear map of the extension field fixed by images of a basis.
class LinearMap {
 public:
  LinearMap(OrderedBasis domain, std::vector<FieldElement> images);
  FieldElement apply(const FieldElement& a) const;

 private:
  OrderedBasis domain_;
  std::vector<FieldElement> images_;
};

LinearMap linear_map_from_basis_images(const OrderedBasis& domain,
                                       const std::vector<FieldElement>& images);

}  // namespace ferro
