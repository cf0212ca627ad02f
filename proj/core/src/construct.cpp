#include "ferro/construct.hpp"
#include "ferro/prng.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace ferro {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Incremental Gaussian span over the base field.
class SpanBuilder {
 public:
  SpanBuilder(FieldCtxPtr f, std::size_t ambient)
      : f_(std::move(f)), amb_(ambient) {}

  std::size_t dim() const { return rows_.size(); }

  bool contains(std::vector<std::uint64_t> v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(),
                       [](std::uint64_t x) { return x == 0; });
  }

  // Adds v to the span; returns false if it was already contained.
  bool add(std::vector<std::uint64_t> v) {
    reduce(v);
    std::size_t lead = 0;
    while (lead < amb_ && v[lead] == 0) ++lead;
    if (lead == amb_) return false;
    std::uint64_t piv = f_->inv(v[lead]);
    for (auto& x : v) x = f_->mul(x, piv);
    rows_.push_back(std::move(v));
    leads_.push_back(lead);
    return true;
  }

 private:
  void reduce(std::vector<std::uint64_t>& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::uint64_t c = v[leads_[r]];
      if (c == 0) continue;
      for (std::size_t i = 0; i < amb_; ++i)
        v[i] = f_->sub(v[i], f_->mul(c, rows_[r][i]));
    }
  }

  FieldCtxPtr f_;
  std::size_t amb_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> leads_;
};

// First vector of `space` (in ascending coefficient order over its reduced
// basis) lying outside `span`. Throws if the whole subspace is contained.
std::vector<std::uint64_t> first_outside(const Subspace& space,
                                         const SpanBuilder& span) {
  const auto& f = space.basis().ctx();
  const std::uint64_t q = f->order();
  const std::size_t d = space.dim(), amb = space.ambient();
  std::vector<std::uint64_t> coeff(d, 0);
  const std::uint64_t total = ipow(q, static_cast<unsigned>(d));
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::uint64_t t = idx;
    for (std::size_t i = 0; i < d; ++i) {
      coeff[i] = t % q;
      t /= q;
    }
    std::vector<std::uint64_t> v(amb, 0);
    for (std::size_t i = 0; i < d; ++i) {
      if (coeff[i] == 0) continue;
      for (std::size_t j = 0; j < amb; ++j)
        v[j] = f->add(v[j], f->mul(coeff[i], space.basis().at(i, j)));
    }
    if (!span.contains(v)) return v;
  }
  throw PreconditionError("subspace exhausted while extending a basis");
}

Subspace coordinate_prefix(const FieldCtxPtr& base, std::size_t m,
                           std::size_t i) {
  std::vector<std::vector<std::uint64_t>> vecs;
  for (std::size_t r = 0; r < i; ++r) {
    std::vector<std::uint64_t> e(m, 0);
    e[r] = 1;
    vecs.push_back(std::move(e));
  }
  return Subspace::from_vectors(base, m, vecs);
}

// phi_B of the extension row vector w (entry codes), as a base-field matrix.
GfMatrix phi_columns(const FieldCtxPtr& ext, const OrderedBasis& B,
                     const std::vector<std::uint64_t>& w) {
  const std::size_t m = ext->degree(), n = w.size();
  GfMatrix out(ext->base(), m, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto col = B.coordinates(FieldElement(ext, w[j]));
    for (std::size_t i = 0; i < m; ++i) out.set(i, j, col[i]);
  }
  return out;
}

// Code spanned by phi_B(x_s e_t G) for t in [caps.size()], s in [caps[t]].
RankMetricCode caps_code(const SystematicMrdGenerator& gen, const OrderedBasis& B,
                         const std::vector<unsigned>& caps) {
  const auto& ext = gen.ext;
  RankMetricCode code;
  code.ctx = ext->base();
  code.m = ext->degree();
  code.n = gen.n;
  for (std::size_t t = 0; t < caps.size(); ++t)
    for (unsigned s = 0; s < caps[t]; ++s) {
      std::vector<std::uint64_t> w(gen.n);
      for (std::size_t j = 0; j < gen.n; ++j)
        w[j] = ext->mul(B[s].value(), gen.G.at(t, j));
      code.basis.push_back(phi_columns(ext, B, w));
    }
  return code;
}

// Exact rank distance of the extension-linear code generated by G, by
// projective enumeration over the extension field.
unsigned ext_code_distance(const FieldCtxPtr& ext, const GfMatrix& G) {
  const std::size_t ell = G.rows(), n = G.cols(), m = ext->degree();
  const auto& base = ext->base();
  unsigned best = static_cast<unsigned>(n) + 1;
  std::vector<std::uint64_t> u(ell, 0);
  for (std::size_t lead = 0; lead < ell; ++lead) {
    std::fill(u.begin(), u.end(), 0);
    u[lead] = 1;
    while (true) {
      GfMatrix span(base, n, m);
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t w = 0;
        for (std::size_t t = lead; t < ell; ++t)
          w = ext->add(w, ext->mul(u[t], G.at(t, j)));
        span.set_row(j, ext->decode(w));
      }
      best = std::min(best, static_cast<unsigned>(span.rank()));
      std::size_t j = lead + 1;
      while (j < ell && u[j] == ext->order() - 1) u[j++] = 0;
      if (j >= ell) break;
      ++u[j];
    }
  }
  return best;
}

void maybe_verify_mrd(const FieldCtxPtr& ext, const GfMatrix& G, unsigned delta) {
  const std::size_t ell = G.rows();
  double count = 1;
  for (std::size_t t = 0; t + 1 < ell; ++t) count *= double(ext->order());
  if (count > double(1 << 20)) return;
  if (ext_code_distance(ext, G) != delta)
    throw PreconditionError("generator does not reach the full rank distance");
}

std::vector<unsigned> ell_caps(const FerrersDiagram& f, unsigned delta) {
  const unsigned ell = f.n() - delta + 1;
  return {f.cols().begin(), f.cols().begin() + ell};
}

std::uint64_t ext_order_of(std::uint64_t q, unsigned m) {
  std::uint64_t o = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (o > (std::uint64_t(1) << 56) / q)
      throw PreconditionError("extension field too large");
    o *= q;
  }
  return o;
}

}  // namespace

FieldCtxPtr extension_field(std::uint64_t q, unsigned m) {
  if (m == 0) throw PreconditionError("extension degree must be positive");
  ext_order_of(q, m);
  return extend_field(make_field_of_order(q), m);
}

GfMatrix moore_matrix(const FieldCtxPtr& ext, const std::vector<std::uint64_t>& g,
                      std::size_t ell) {
  if (!ext || ext->prime_field())
    throw PreconditionError("need an extension field");
  GfMatrix M(ext, ell, g.size());
  const std::uint64_t q = ext->base_order();
  for (std::size_t j = 0; j < g.size(); ++j) {
    std::uint64_t v = g[j];
    for (std::size_t r = 0; r < ell; ++r) {
      M.set(r, j, v);
      v = ext->pow(v, q);
    }
  }
  return M;
}

GabidulinResult gabidulin(const FieldCtxPtr& ext, std::size_t n, unsigned delta,
                          std::vector<std::uint64_t> g) {
  const unsigned m = ext->degree();
  if (n > m || delta < 1 || delta > n)
    throw PreconditionError("need 1 <= delta <= n <= m");
  if (g.empty()) {
    FieldElement alpha = primitive_element(ext), acc(ext, 1);
    for (std::size_t j = 0; j < n; ++j) {
      g.push_back(acc.value());
      acc = acc * alpha;
    }
  }
  if (g.size() != n) throw PreconditionError("need n evaluation points");
  GfMatrix coords(ext->base(), n, m);
  for (std::size_t j = 0; j < n; ++j) coords.set_row(j, ext->decode(g[j]));
  if (coords.rank() != n)
    throw PreconditionError("evaluation points are linearly dependent");

  const std::size_t ell = n - delta + 1;
  GabidulinResult res{{}, moore_matrix(ext, g, ell)};
  res.code.ctx = ext->base();
  res.code.m = m;
  res.code.n = n;
  res.code.delta = delta;
  OrderedBasis P = OrderedBasis::power_basis(ext);
  for (std::size_t t = 0; t < ell; ++t)
    for (unsigned s = 0; s < m; ++s) {
      std::vector<std::uint64_t> w(n);
      for (std::size_t j = 0; j < n; ++j)
        w[j] = ext->mul(P[s].value(), res.generator.at(t, j));
      res.code.basis.push_back(phi_columns(ext, P, w));
    }
  return res;
}

SystematicMrdGenerator systematic_generator(const FieldCtxPtr& ext, std::size_t n,
                                            unsigned delta,
                                            std::vector<std::uint64_t> g) {
  GfMatrix M = gabidulin(ext, n, delta, std::move(g)).generator;
  auto [R, pivots] = M.rref();
  const std::size_t ell = M.rows();
  for (std::size_t t = 0; t < ell; ++t)
    if (pivots.size() <= t || pivots[t] != t)
      throw PreconditionError("Moore matrix has a singular leading minor");
  // Column-wise independence of (1, a_{1j}, .., a_{ell j}) over the base.
  for (std::size_t j = ell; j < n; ++j) {
    GfMatrix coords(ext->base(), ell + 1, ext->degree());
    coords.set_row(0, ext->decode(1));
    for (std::size_t t = 0; t < ell; ++t)
      coords.set_row(t + 1, ext->decode(R.at(t, j)));
    if (coords.rank() != ell + 1)
      throw PreconditionError("systematic generator violates the column "
                              "independence property");
  }
  return {ext, n, ell, std::move(R)};
}

RankMetricCode construct_fn1(const FerrersDiagram& f, unsigned delta,
                             const SystematicMrdGenerator& gen,
                             const OrderedBasis& basis) {
  const unsigned m = f.m(), n = f.n();
  if (delta < 2 || delta > n || n > m)
    throw PreconditionError("need 2 <= delta <= n <= m");
  if (gen.ext->degree() != m || gen.n != n || gen.ell != n - delta + 1)
    throw PreconditionError("generator does not match the diagram");
  for (unsigned j = n - delta + 1; j < n; ++j)
    if (f.cols()[j] != m)
      throw PreconditionError("the last delta-1 columns must be full");
  RankMetricCode code = caps_code(gen, basis, ell_caps(f, delta));
  code.shape = f;
  code.delta = delta;
  return code;
}

RankMetricCode construct_fn1(const FerrersDiagram& f, unsigned delta,
                             std::uint64_t q) {
  FieldCtxPtr ext = extension_field(q, f.m());
  return construct_fn1(f, delta, systematic_generator(ext, f.n(), delta),
                       OrderedBasis::power_basis(ext));
}

RankMetricCode construct_staircase(const FerrersDiagram& f, unsigned delta,
                                   const SystematicMrdGenerator& gen,
                                   const std::vector<Subspace>* chain) {
  const unsigned m = f.m(), n = f.n();
  if (delta < 2 || delta > n || n > m)
    throw PreconditionError("need 2 <= delta <= n <= m");
  if (gen.ext->degree() != m || gen.n != n || gen.ell != n - delta + 1)
    throw PreconditionError("generator does not match the diagram");
  if (!staircase_check(f, delta))
    throw PreconditionError("staircase condition violated");
  const unsigned ell = n - delta + 1;
  const auto& ext = gen.ext;
  const auto& base = ext->base();
  const auto& c = f.cols();

  std::vector<Subspace> defchain;
  if (!chain) {
    for (std::size_t i = 1; i <= m; ++i)
      defchain.push_back(coordinate_prefix(base, m, i));
    chain = &defchain;
  }
  if (chain->size() != m)
    throw PreconditionError("chain must have one subspace per dimension");
  for (std::size_t i = 0; i < m; ++i)
    if ((*chain)[i].dim() != i + 1 || (*chain)[i].ambient() != m)
      throw PreconditionError("chain subspace has the wrong dimension");
  auto V = [&](unsigned i) -> const Subspace& { return (*chain)[i - 1]; };
  OrderedBasis P = OrderedBasis::power_basis(ext);

  // W_t = intersection over the non-full tall columns of V_{c_{l+j}} a_{tj}^{-1}.
  std::vector<Subspace> W;
  for (unsigned t = 0; t < ell; ++t) {
    Subspace w = V(m);
    for (unsigned j = 1; j <= n - ell; ++j) {
      if (c[ell + j - 1] == m) continue;
      FieldElement a(ext, gen.G.at(t, ell + j - 1));
      w = intersect(w, scaled_subspace(V(c[ell + j - 1]), a.inverse(), P));
    }
    W.push_back(std::move(w));
  }

  // Nested sections S_t = V_{c_{l+1}} ∩ ∩_{j>=t} W_j, t = 1..l (0-based here).
  std::vector<Subspace> S(ell, V(m));
  if (c[ell] > 0) {
    for (int t = int(ell) - 1; t >= 0; --t) {
      const Subspace& upper = t + 1 < int(ell) ? S[t + 1] : V(c[ell]);
      S[t] = intersect(upper, W[t]);
      if (S[t].dim() < c[t])
        throw PreconditionError("intersection bound failed (internal)");
    }
  }

  // x_1..x_m: fill prefixes from the sections, then complete along the chain
  // so that <x_1..x_{c_{l+j}}> recovers V_{c_{l+j}}.
  SpanBuilder span(base, m);
  std::vector<std::vector<std::uint64_t>> xs;
  for (unsigned t = 0; t < ell; ++t)
    while (xs.size() < c[t]) {
      auto v = first_outside(S[t], span);
      span.add(v);
      xs.push_back(std::move(v));
    }
  while (xs.size() < m) {
    unsigned target = m;
    for (unsigned j = 1; j <= n - ell; ++j)
      if (c[ell + j - 1] >= xs.size() + 1)
        target = std::min(target, c[ell + j - 1]);
    auto v = first_outside(V(target), span);
    span.add(v);
    xs.push_back(std::move(v));
  }

  std::vector<FieldElement> elems;
  for (const auto& v : xs) elems.push_back(P.from_coordinates(v));
  OrderedBasis B(std::move(elems));

  RankMetricCode code = caps_code(gen, B, ell_caps(f, delta));
  for (const auto& a : code.basis)
    if (!matrix_has_shape(a, f))
      throw PreconditionError("staircase codeword escapes the shape (internal)");
  code.shape = f;
  code.delta = delta;
  return code;
}

RankMetricCode construct_staircase(const FerrersDiagram& f, unsigned delta,
                                   std::uint64_t q) {
  FieldCtxPtr ext = extension_field(q, f.m());
  return construct_staircase(f, delta, systematic_generator(ext, f.n(), delta));
}

RankMetricCode construct_ctn(const FerrersDiagram& f, unsigned delta,
                             std::uint64_t q) {
  const unsigned m = f.m(), n = f.n();
  if (delta < 2 || delta > n || n > m)
    throw PreconditionError("need 2 <= delta <= n <= m");
  const unsigned ell = n - delta + 1;
  const auto& c = f.cols();
  unsigned mhat;
  RankMetricCode inner;
  if (ell + 1 <= n && c[ell] >= n) {
    // Tall columns all reach n: truncate at max{c_l, n} and the last delta-1
    // columns of the truncated diagram are full.
    for (unsigned j = ell; j < n; ++j)
      if (c[j] < n)
        throw PreconditionError("the last delta-1 columns must have >= n dots");
    mhat = std::max(c[ell - 1], n);
    std::vector<unsigned> ch(n);
    for (unsigned j = 0; j < n; ++j) ch[j] = std::min(c[j], mhat);
    inner = construct_fn1(FerrersDiagram(mhat, ch), delta, q);
  } else {
    for (unsigned j = ell + 1; j < n; ++j)
      if (c[j] < n)
        throw PreconditionError("the last delta-2 columns must have >= n dots");
    for (unsigned t = 1; t <= ell; ++t) {
      long bound = long(n) - long(n - c[ell]) * long(ell + 2 - t);
      if (long(c[t - 1]) > bound)
        throw PreconditionError("staircase condition violated");
    }
    mhat = n;
    std::vector<unsigned> ch(n);
    for (unsigned j = 0; j < n; ++j) ch[j] = std::min(c[j], mhat);
    inner = construct_staircase(FerrersDiagram(mhat, ch), delta, q);
  }
  RankMetricCode code;
  code.ctx = inner.ctx;
  code.m = m;
  code.n = n;
  for (const auto& a : inner.basis) {
    GfMatrix big(inner.ctx, m, n);
    for (unsigned i = 0; i < mhat; ++i)
      for (unsigned j = 0; j < n; ++j) big.set(i, j, a.at(i, j));
    code.basis.push_back(std::move(big));
  }
  code.shape = f;
  code.delta = delta;
  return code;
}

SystematicMrdGenerator mrd_with_first_column(const FieldCtxPtr& ext, std::size_t n,
                                             unsigned delta,
                                             const std::vector<std::uint64_t>& a) {
  const unsigned m = ext->degree();
  const std::size_t ell = n - delta + 1;
  if (a.size() != ell) throw PreconditionError("need one entry per row");
  if (ell >= n) throw PreconditionError("need delta >= 2");
  SpanBuilder acheck(ext->base(), m);
  acheck.add(ext->decode(1));
  for (std::uint64_t ai : a)
    if (!acheck.add(ext->decode(ai)))
      throw PreconditionError("(1, a_1..a_ell) must be independent");

  // Search for evaluation points g_1..g_n whose systematic Moore generator
  // carries the requested column.  Writing f_t for the q-linearized
  // interpolator with f_t(g_s) = [s == t] (s, t <= ell), the systematic rows
  // evaluate to f_t at the remaining points, so the requirement is
  // f_t(g_{ell+1}) = a_t for all t.  With g_1..g_ell fixed each f_t is an
  // explicit F_q-linear map, so the requirement is a linear system in the
  // coordinates of g_{ell+1}; it is overdetermined (ell*m equations, m
  // unknowns) and consistent for roughly one random choice of g_1..g_ell in
  // q^{(ell-1)m}.  Rank distance then holds by construction.
  const std::uint64_t q = ext->base_order();
  const std::uint64_t q_m = ext->order();
  auto base = ext->base();

  std::uint64_t expected = 1;
  for (std::size_t i = 0; i < (ell - 1) * m && expected <= (1ull << 26); ++i)
    expected *= q;
  if (expected > (1ull << 26))
    throw PreconditionError("prescribed-column search space is too large");

  auto qpow = [&](std::uint64_t x, std::size_t i) {
    std::uint64_t r = x;
    for (std::size_t k = 0; k < i; ++k) r = ext->pow(r, q);
    return r;
  };
  auto unit = [&](unsigned d) {
    std::vector<std::uint64_t> dig(m, 0);
    dig[d] = 1;
    return ext->encode(dig);
  };

  const std::uint64_t cap = 256 * expected + (1ull << 16);
  for (std::uint64_t attempt = 0; attempt < cap; ++attempt) {
    TrialRng rng(0x4d6f6f7265ull, attempt);
    std::vector<std::uint64_t> g(ell);
    for (auto& x : g) x = 1 + rng.below(q_m - 1);
    SpanBuilder gsp(base, m);
    bool indep = true;
    for (std::uint64_t x : g) indep = indep && gsp.add(ext->decode(x));
    if (!indep) continue;

    // Interpolator coefficients: invert the ell x ell Moore matrix of the g's.
    GfMatrix aug(ext, ell, 2 * ell);
    for (std::size_t s = 0; s < ell; ++s) {
      for (std::size_t i = 0; i < ell; ++i) aug.set(s, i, qpow(g[s], i));
      aug.set(s, ell + s, 1);
    }
    auto [Vr, vpiv] = aug.rref();
    if (vpiv.size() != ell || vpiv[ell - 1] != ell - 1) continue;

    // Stacked coordinate system for g_{ell+1}, augmented with the targets.
    GfMatrix sys(base, ell * m, m + 1);
    for (std::size_t t = 0; t < ell; ++t) {
      for (unsigned bc = 0; bc < m; ++bc) {
        std::uint64_t img = 0;
        for (std::size_t i = 0; i < ell; ++i)
          img = ext->add(img, ext->mul(Vr.at(i, ell + t), qpow(unit(bc), i)));
        auto dig = ext->decode(img);
        for (unsigned r = 0; r < m; ++r) sys.set(t * m + r, bc, dig[r]);
      }
      auto dig = ext->decode(a[t]);
      for (unsigned r = 0; r < m; ++r) sys.set(t * m + r, m, dig[r]);
    }
    auto [R, piv] = sys.rref();
    bool consistent = true;
    for (std::size_t p : piv) consistent = consistent && p != m;
    if (!consistent) continue;
    std::vector<std::uint64_t> sol(m, 0);
    for (std::size_t r = 0; r < piv.size(); ++r) sol[piv[r]] = R.at(r, m);
    std::uint64_t gnext = ext->encode(sol);
    if (!gsp.add(ext->decode(gnext))) continue;
    g.push_back(gnext);

    for (std::uint64_t c = 1; c < q_m && g.size() < n; ++c)
      if (gsp.add(ext->decode(c))) g.push_back(c);
    if (g.size() != n) continue;

    SystematicMrdGenerator gen = systematic_generator(ext, n, delta, g);
    for (std::size_t t = 0; t < ell; ++t)
      if (gen.G.at(t, ell) != a[t])
        throw PreconditionError("prescribed-column solve mismatch (internal)");
    maybe_verify_mrd(ext, gen.G, delta);
    return gen;
  }
  throw Inconclusive("no generator with the prescribed column was found");
}

RankMetricCode construct_invariance(std::uint64_t q, unsigned m, unsigned n,
                                    unsigned delta, unsigned b) {
  if (!(3 <= delta && delta <= n && n <= m))
    throw PreconditionError("need 3 <= delta <= n <= m");
  const unsigned ell = n - delta + 1;
  if (b < 2) throw PreconditionError("b = 1 degenerates; use the full-column "
                                     "construction instead");
  if (2 * b > m) throw PreconditionError("need b <= m/2");
  if (m % b != 0 || (ell + 1) % b != 0)
    throw PreconditionError("b must divide both m and l+1");

  FieldCtxPtr ext = extension_field(q, m);
  FieldElement alpha = primitive_element(ext);
  FieldElement beta = subfield_element(ext, b);
  const unsigned s = (ell + 1) / b - 1;

  // V-basis alpha^i beta^j ordered with i outer, and the first column of A.
  std::vector<std::uint64_t> vbasis, firstcol;
  for (unsigned i = 0; i <= s; ++i)
    for (unsigned j = 0; j < b; ++j) {
      FieldElement e = alpha.pow(i) * beta.pow(j);
      vbasis.push_back(e.value());
      if (i > 0) firstcol.push_back(e.value());
    }
  for (unsigned j = 1; j < b; ++j) firstcol.push_back(beta.pow(j).value());

  SystematicMrdGenerator gen = mrd_with_first_column(ext, n, delta, firstcol);

  SpanBuilder sp(ext->base(), m);
  std::vector<std::uint64_t> blist = vbasis;
  for (std::uint64_t v : blist)
    if (!sp.add(ext->decode(v)))
      throw PreconditionError("invariant subspace basis is dependent");
  for (std::uint64_t v = 1; v < ext->order() && blist.size() < m; ++v)
    if (sp.add(ext->decode(v))) blist.push_back(v);
  std::vector<FieldElement> elems;
  for (std::uint64_t v : blist) elems.emplace_back(ext, v);
  OrderedBasis B(std::move(elems));

  std::vector<unsigned> caps(ell, b);
  for (unsigned t = ell - b + 1; t < ell; ++t) caps[t] = ell + 1;
  RankMetricCode code = caps_code(gen, B, caps);

  std::vector<unsigned> shape;
  for (unsigned t = 0; t < ell - b + 1; ++t) shape.push_back(b);
  for (unsigned t = 0; t < b; ++t) shape.push_back(ell + 1);
  for (unsigned t = 0; t < delta - 2; ++t) shape.push_back(m);
  code.shape = FerrersDiagram(m, shape);
  code.delta = delta;
  for (const auto& a : code.basis)
    if (!matrix_has_shape(a, *code.shape))
      throw PreconditionError("codeword escapes the shape (internal)");
  return code;
}

RankMetricCode construct_companion(std::uint64_t q, unsigned m, unsigned i,
                                   unsigned t) {
  if (i < 1 || i > m) throw PreconditionError("need 1 <= i <= m");
  if (t + 1 > i) throw PreconditionError("need t <= i-1");
  FieldCtxPtr ext = extension_field(q, m);
  const auto& base = ext->base();
  const auto& mod = ext->modulus();
  GfMatrix C(base, m, m);
  for (unsigned r = 0; r + 1 < m; ++r) C.set(r + 1, r, 1);
  for (unsigned r = 0; r < m; ++r) C.set(r, m - 1, base->neg(mod[r]));

  const unsigned n = m - t;
  RankMetricCode code;
  code.ctx = base;
  code.m = m;
  code.n = n;
  GfMatrix power = GfMatrix::identity(base, m);
  for (unsigned k = 0; k < i; ++k) {
    GfMatrix trunc(base, m, n);
    for (unsigned r = 0; r < m; ++r)
      for (unsigned j = 0; j < n; ++j) trunc.set(r, j, power.at(r, j));
    code.basis.push_back(std::move(trunc));
    power = C * power;
  }
  std::vector<unsigned> shape(n);
  for (unsigned j = 0; j < n; ++j) shape[j] = std::min(i + j, m);
  code.shape = FerrersDiagram(m, shape);
  code.delta = n;
  return code;
}

namespace {

// Systematic generator of an [len, k] MDS code over F_q: Reed-Solomon
// evaluation (extended by the degree-(k-1) coefficient column when
// len = q+1), row-reduced; all maximal minors checked for small lengths.
GfMatrix mds_generator(const FieldCtxPtr& f, std::size_t len, std::size_t k) {
  const std::uint64_t q = f->order();
  if (len > q + 1)
    throw PreconditionError("field too small for an MDS code of this length");
  const bool extended = len == q + 1;
  const std::size_t points = extended ? len - 1 : len;
  GfMatrix M(f, k, len);
  for (std::size_t j = 0; j < points; ++j) {
    std::uint64_t x = static_cast<std::uint64_t>(j), p = 1;
    for (std::size_t r = 0; r < k; ++r) {
      M.set(r, j, p);
      p = f->mul(p, x);
    }
  }
  if (extended) M.set(k - 1, len - 1, 1);
  auto [R, pivots] = M.rref();
  if (pivots.size() != k)
    throw PreconditionError("MDS evaluation matrix lost rank (internal)");
  if (len <= 8) {
    std::vector<std::size_t> pick(k);
    // All k-subsets of columns: every maximal minor must be nonzero.
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t at,
                                                            std::size_t from) {
      if (at == k) {
        GfMatrix sub(f, k, k);
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t cidx = 0; cidx < k; ++cidx)
            sub.set(r, cidx, R.at(r, pick[cidx]));
        if (sub.det() == 0)
          throw PreconditionError("vanishing maximal minor (internal)");
        return;
      }
      for (std::size_t j = from; j + (k - at) <= len; ++j) {
        pick[at] = j;
        rec(at + 1, j + 1);
      }
    };
    rec(0, 0);
  }
  return R;
}

}  // namespace

MdsDiagonalCode construct_mds_diagonal(const FerrersDiagram& f, unsigned delta,
                                       std::uint64_t q) {
  const unsigned m = f.m(), n = f.n();
  if (delta < 1 || delta > n) throw PreconditionError("need 1 <= delta <= n");
  FieldCtxPtr base = make_field_of_order(q);
  auto counts = diagonal_intersections(f);
  MdsDiagonalCode out;
  out.code.ctx = base;
  out.code.m = m;
  out.code.n = n;
  for (unsigned r = 1; r <= m; ++r) {
    const unsigned nr = counts[r - 1];
    if (nr < delta) continue;
    out.diagonal_sum += nr - delta + 1;
    // Dots of D_r inside F, by ascending column.
    std::vector<Dot> dots;
    for (unsigned i = 1; i <= m; ++i) {
      int j = int(i) + int(n) - int(r);
      if (j >= 1 && j <= int(n) && f.contains(i, unsigned(j)))
        dots.push_back({i, unsigned(j)});
    }
    if (dots.size() != nr)
      throw PreconditionError("diagonal count mismatch (internal)");
    std::sort(dots.begin(), dots.end(),
              [](const Dot& a, const Dot& b) { return a.col < b.col; });
    GfMatrix G = mds_generator(base, nr, nr - delta + 1);
    for (std::size_t row = 0; row + delta <= nr; ++row) {
      GfMatrix a(base, m, n);
      for (unsigned jj = 0; jj < nr; ++jj)
        a.set(dots[jj].row - 1, dots[jj].col - 1, G.at(row, jj));
      out.code.basis.push_back(std::move(a));
    }
  }
  out.code.shape = f;
  out.code.delta = delta;
  out.maximal = out.diagonal_sum == nu_profile(f, delta).nu_min;
  return out;
}

RankMetricCode construct_upper_triangular_explicit(unsigned n, std::uint64_t q,
                                                   std::uint64_t c,
                                                   std::uint64_t d) {
  if (n < 2) throw PreconditionError("need n >= 2");
  FieldCtxPtr f = make_field_of_order(q);
  if (c >= q || d >= q) throw PreconditionError("coefficients out of range");
  for (std::uint64_t x = 0; x < q; ++x)
    if (f->mul(x, x) == f->add(f->mul(d, x), c))
      throw PreconditionError("x^2 - dx - c must be irreducible");

  GfMatrix A1(f, n, n), A2(f, n, n), A3(f, n, n);
  for (unsigned i = 1; i < n; ++i) A1.set(i, i, 1);
  for (unsigned i = 0; i + 1 < n; ++i) A2.set(i, i + 1, 1);
  auto put = [&](unsigned i, unsigned j, std::uint64_t v) {
    if (i < n && j < n) A3.set(i, j, v);
  };
  put(0, 0, 1);
  put(0, 1, d);
  put(0, 2, f->neg(1));
  for (unsigned k = 1; 2 * k < n; ++k) {
    put(2 * k - 1, 2 * k + 1, 1);             // even row 2k, column 2k+2
    put(2 * k, 2 * k, c);                     // odd row 2k+1
    put(2 * k, 2 * k + 1, d);
    put(2 * k, 2 * k + 2, f->neg(1));
  }
  RankMetricCode code;
  code.ctx = f;
  code.m = n;
  code.n = n;
  code.basis = {A1, A2, A3};
  std::vector<unsigned> shape(n);
  std::iota(shape.begin(), shape.end(), 1u);
  code.shape = FerrersDiagram(n, shape);
  code.delta = n - 1;
  return code;
}

RankMetricCode construct_upper_triangular_recursive(unsigned n, std::uint64_t q) {
  if (n < 2) throw PreconditionError("need n >= 2");
  FieldCtxPtr f = make_field_of_order(q);
  GfMatrix A(f, 2, 2), B(f, 2, 2), C(f, 2, 2);
  A.set(0, 0, 1);
  B.set(1, 1, 1);
  C.set(0, 1, 1);

  for (unsigned size = 2; size < n; ++size) {
    // v in colsp(B) \ colsp(A), first in coefficient order.
    std::vector<std::uint64_t> v;
    {
      Subspace colB = Subspace::from_vectors(
          f, size, [&] {
            std::vector<std::vector<std::uint64_t>> cols;
            for (unsigned j = 0; j < size; ++j) {
              std::vector<std::uint64_t> col(size);
              for (unsigned i = 0; i < size; ++i) col[i] = B.at(i, j);
              cols.push_back(std::move(col));
            }
            return cols;
          }());
      SpanBuilder colA(f, size);
      for (unsigned j = 0; j < size; ++j) {
        std::vector<std::uint64_t> col(size);
        for (unsigned i = 0; i < size; ++i) col[i] = A.at(i, j);
        colA.add(std::move(col));
      }
      v = first_outside(colB, colA);
    }

    // w such that lambda*v + mu*w avoids colsp(lambda*A + mu*B) whenever that
    // combination is singular; exists by a counting argument.
    std::vector<std::uint64_t> w(size, 0);
    bool found = false;
    const std::uint64_t total = ipow(q, size);
    for (std::uint64_t idx = 0; idx < total && !found; ++idx) {
      std::uint64_t tt = idx;
      for (unsigned i = 0; i < size; ++i) {
        w[i] = tt % q;
        tt /= q;
      }
      bool ok = true;
      // Projective pairs (1, 0) and (lambda, 1).
      for (std::uint64_t lam = 0; lam <= q && ok; ++lam) {
        std::uint64_t l = lam == q ? 1 : lam, mu = lam == q ? 0 : 1;
        GfMatrix comb = A.scaled(l) + B.scaled(mu);
        if (comb.rank() == size) continue;
        std::vector<std::uint64_t> target(size);
        for (unsigned i = 0; i < size; ++i)
          target[i] = f->add(f->mul(l, v[i]), f->mul(mu, w[i]));
        if (comb.colspace_contains(target)) ok = false;
      }
      found = ok;
    }
    if (!found)
      throw PreconditionError("no admissible extension vector (internal)");

    GfMatrix Ah(f, size + 1, size + 1), Bh(f, size + 1, size + 1),
        Ch(f, size + 1, size + 1);
    for (unsigned i = 0; i < size; ++i)
      for (unsigned j = 0; j < size; ++j) {
        Ah.set(i, j, A.at(i, j));
        Ch.set(i, j, B.at(i, j));
        Bh.set(i, j, C.at(i, j));
      }
    for (unsigned i = 0; i < size; ++i) {
      Ah.set(i, size, v[i]);
      Ch.set(i, size, w[i]);
    }
    Bh.set(size, size, 1);
    A = std::move(Ah);
    B = std::move(Bh);
    C = std::move(Ch);

    // The next round needs colsp(B) not inside colsp(A).
    SpanBuilder colA(f, size + 1);
    for (unsigned j = 0; j <= size; ++j) {
      std::vector<std::uint64_t> col(size + 1);
      for (unsigned i = 0; i <= size; ++i) col[i] = A.at(i, j);
      colA.add(std::move(col));
    }
    bool outside = false;
    for (unsigned j = 0; j <= size && !outside; ++j) {
      std::vector<std::uint64_t> col(size + 1);
      for (unsigned i = 0; i <= size; ++i) col[i] = B.at(i, j);
      outside = !colA.contains(col);
    }
    if (!outside)
      throw PreconditionError("column space invariant lost (internal)");
  }

  RankMetricCode code;
  code.ctx = f;
  code.m = n;
  code.n = n;
  code.basis = {A, B, C};
  std::vector<unsigned> shape(n);
  std::iota(shape.begin(), shape.end(), 1u);
  code.shape = FerrersDiagram(n, shape);
  code.delta = n - 1;
  return code;
}

RankMetricCode construct_f1334(std::uint64_t q) {
  RankMetricCode comp = construct_companion(q, 3, 3, 0);
  const auto& f = comp.ctx;
  std::vector<GfMatrix> B = comp.basis;  // first columns e1, e2, e3
  if (B[0].at(1, 1) == 0) {
    // Make the (2,2) entry of the first basis matrix nonzero: swap the two
    // bottom rows everywhere and relabel the second and third matrices.
    for (auto& M : B)
      for (unsigned j = 0; j < 3; ++j) {
        std::uint64_t tmp = M.at(1, j);
        M.set(1, j, M.at(2, j));
        M.set(2, j, tmp);
      }
    std::swap(B[1], B[2]);
  }
  if (B[0].at(1, 1) == 0)
    throw PreconditionError("normalization failed (internal)");

  RankMetricCode code;
  code.ctx = f;
  code.m = 4;
  code.n = 4;
  for (unsigned l = 0; l < 3; ++l) {
    GfMatrix a(f, 4, 4);
    a.set(l, 1, 1);
    for (unsigned i = 0; i < 3; ++i) {
      a.set(i, 2, B[l].at(i, 1));
      a.set(i, 3, B[l].at(i, 2));
    }
    code.basis.push_back(std::move(a));
  }
  GfMatrix a4(f, 4, 4);
  a4.set(0, 0, 1);
  a4.set(2, 2, 1);
  a4.set(3, 3, 1);
  code.basis.push_back(std::move(a4));
  code.shape = FerrersDiagram(4, {1, 3, 3, 4});
  code.delta = 3;
  return code;
}

}  // namespace ferro
