#include "ferro/genericity.hpp"

#include <cassert>
#include <cmath>
#include <cstring>
#include <thread>

#include "ferro/code.hpp"
#include "ferro/matrix.hpp"
#include "ferro/prng.hpp"

namespace ferro {

namespace {

mpz_class zpow(std::uint64_t q, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q),
                static_cast<unsigned long>(e));
  return r;
}

// q^e, or ~0 on overflow of uint64.
std::uint64_t upow_sat(std::uint64_t q, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) {
    if (r > ~0ull / q) return ~0ull;
    r *= q;
  }
  return r;
}

using Poly = std::vector<Rational>;  // coefficients, index = degree

Poly poly_mul_trunc(const Poly& a, const Poly& b, std::size_t deg) {
  Poly r(deg + 1, Rational(0));
  for (std::size_t i = 0; i < a.size() && i <= deg; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= deg; ++j)
      r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly poly_pow_trunc(Poly base, std::uint64_t e, std::size_t deg) {
  Poly r(1, Rational(1));
  while (e) {
    if (e & 1) r = poly_mul_trunc(r, base, deg);
    base = poly_mul_trunc(base, base, deg);
    e >>= 1;
  }
  return r;
}

// Rational q-Pochhammer reciprocals a_j = (-1)^j / prod_{l<=j}(q^l - 1).
Poly a_series(unsigned n, std::uint64_t q) {
  Poly a(n + 1);
  a[0] = 1;
  for (unsigned j = 1; j <= n; ++j)
    a[j] = -a[j - 1] / Rational(zpow(q, j) - 1);
  return a;
}

// s_n(q)/gamma_n(q) for n = 0..n_max, from the explicit composition sum
// (coefficient sums of A(u)^{q-1}).
std::vector<Rational> sn_over_gamma(unsigned n_max, std::uint64_t q) {
  Poly p = poly_pow_trunc(a_series(n_max, q), q - 1, n_max);
  std::vector<Rational> out(n_max + 1, Rational(0));
  Rational acc(0);
  for (unsigned n = 0; n <= n_max; ++n) {
    acc += p[n];
    out[n] = acc;
  }
  return out;
}

// Table-driven arithmetic on uint8 codes; keeps the field context alive.
struct Kern {
  FieldCtxPtr ctx;
  unsigned q = 0;
  const std::uint8_t* addt = nullptr;
  const std::uint8_t* mult = nullptr;
  const std::uint8_t* invt = nullptr;
  std::uint8_t negt[256] = {};

  explicit Kern(FieldCtxPtr c) : ctx(std::move(c)) {
    if (!ctx->has_tables())
      throw PreconditionError("sampling kernels need field order <= 256");
    q = static_cast<unsigned>(ctx->order());
    addt = ctx->add_table().data();
    mult = ctx->mul_table().data();
    invt = ctx->inv_table().data();
    for (unsigned a = 0; a < q; ++a)
      negt[a] = static_cast<std::uint8_t>(ctx->neg(a));
  }
  std::uint8_t add(std::uint8_t a, std::uint8_t b) const {
    return addt[static_cast<unsigned>(a) << 8 | b];
  }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
    return mult[static_cast<unsigned>(a) << 8 | b];
  }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const {
    return add(a, negt[b]);
  }
};

unsigned rank_u8(std::uint8_t* a, unsigned rows, unsigned cols, const Kern& K) {
  unsigned r = 0;
  for (unsigned c = 0; c < cols && r < rows; ++c) {
    unsigned piv = r;
    while (piv < rows && !a[piv * cols + c]) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (unsigned j = c; j < cols; ++j)
        std::swap(a[r * cols + j], a[piv * cols + j]);
    const std::uint8_t ip = K.invt[a[r * cols + c]];
    for (unsigned i = r + 1; i < rows; ++i) {
      const std::uint8_t f = a[i * cols + c];
      if (!f) continue;
      const std::uint8_t g = K.mul(f, ip);
      for (unsigned j = c; j < cols; ++j)
        a[i * cols + j] = K.sub(a[i * cols + j], K.mul(g, a[r * cols + j]));
    }
    ++r;
  }
  return r;
}

bool spectrum_free_u8(const std::uint8_t* m_, unsigned n, const Kern& K,
                      std::uint8_t* scratch) {
  for (unsigned lam = 0; lam < K.q; ++lam) {
    std::memcpy(scratch, m_, static_cast<std::size_t>(n) * n);
    for (unsigned d = 0; d < n; ++d)
      scratch[d * n + d] = K.sub(scratch[d * n + d],
                                 static_cast<std::uint8_t>(lam));
    if (rank_u8(scratch, n, n, K) < n) return false;
  }
  return true;
}

// Visits all coefficient vectors of length k over 0..q-1 with the first
// nonzero entry equal to 1; returns false as soon as the visitor does.
template <class Fn>
bool all_projective(unsigned k, unsigned q, std::vector<std::uint8_t>& lam,
                    Fn&& fn) {
  for (unsigned lead = 0; lead < k; ++lead) {
    std::fill(lam.begin(), lam.end(), 0);
    lam[lead] = 1;
    for (;;) {
      if (!fn(lam)) return false;
      unsigned j = lead + 1;
      while (j < k && lam[j] == q - 1) lam[j++] = 0;
      if (j >= k) break;
      ++lam[j];
    }
  }
  return true;
}

// Sums fn(trial) over [0, trials) across worker threads; counts merge by
// addition, so any partition gives the same total (TrialRng is per-trial).
template <class Fn>
std::uint64_t sum_trials(std::uint64_t trials, unsigned threads, Fn&& fn) {
  if (threads <= 1) {
    std::uint64_t cnt = 0;
    for (std::uint64_t t = 0; t < trials; ++t) cnt += fn(t);
    return cnt;
  }
  std::vector<std::uint64_t> part(threads, 0);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t lo = trials * w / threads;
    const std::uint64_t hi = trials * (w + 1) / threads;
    pool.emplace_back([&, lo, hi, w] {
      std::uint64_t cnt = 0;
      for (std::uint64_t t = lo; t < hi; ++t) cnt += fn(t);
      part[w] = cnt;
    });
  }
  for (auto& th : pool) th.join();
  std::uint64_t cnt = 0;
  for (auto c : part) cnt += c;
  return cnt;
}

void finish_report(ProportionReport& r) {
  r.estimate = r.trials ? static_cast<double>(r.successes) /
                              static_cast<double>(r.trials)
                        : 0.0;
  r.ci3sigma = r.exact || !r.trials
                   ? 0.0
                   : 3.0 * std::sqrt(r.estimate * (1.0 - r.estimate) /
                                     static_cast<double>(r.trials));
}

}  // namespace

mpz_class gamma_n(unsigned n, std::uint64_t q) {
  if (n == 0) return 1;
  mpz_class r = 1;
  const mpz_class qn = zpow(q, n);
  for (unsigned j = 0; j < n; ++j) r *= qn - zpow(q, j);
  return r;
}

mpz_class s_n_exact(unsigned n, std::uint64_t q) {
  Rational v = Rational(gamma_n(n, q)) * sn_over_gamma(n, q)[n];
  v.canonicalize();
  if (v.get_den() != 1)
    throw std::logic_error("spectrum-free count did not reduce to an integer");
  return v.get_num();
}

bool s_n_series_check(unsigned n_max, std::uint64_t q) {
  // exp of the exact log-series of (1-u)^{-1} prod_r (1-u/q^r)^{q-1}:
  // k * [u^k] log(...) = 1 - (q-1)/(q^k - 1)  (geometric sum over r).
  std::vector<Rational> c(n_max + 1), p(n_max + 1);
  for (unsigned k = 1; k <= n_max; ++k)
    c[k] = Rational(1) - Rational(q - 1) / Rational(zpow(q, k) - 1);
  p[0] = 1;
  for (unsigned n = 1; n <= n_max; ++n) {
    Rational s(0);
    for (unsigned k = 1; k <= n; ++k) s += c[k] * p[n - k];
    p[n] = s / Rational(n);
  }
  const std::vector<Rational> lhs = sn_over_gamma(n_max, q);
  for (unsigned n = 0; n <= n_max; ++n)
    if (lhs[n] != p[n]) return false;
  return true;
}

Rational pi_q_exact(std::uint64_t q, unsigned terms) {
  if (terms < 1) throw PreconditionError("need at least one product term");
  Rational r(1);
  for (unsigned k = 1; k <= terms; ++k) {
    Rational f = Rational(1) - Rational(1) / Rational(zpow(q, k));
    mpz_pow_ui(f.get_num_mpz_t(), f.get_num_mpz_t(),
               static_cast<unsigned long>(q));
    mpz_pow_ui(f.get_den_mpz_t(), f.get_den_mpz_t(),
               static_cast<unsigned long>(q));
    r *= f;
  }
  r.canonicalize();
  return r;
}

double pi_q(std::uint64_t q, unsigned terms) {
  if (terms < 1) throw PreconditionError("need at least one product term");
  double r = 1.0;
  for (unsigned k = 1; k <= terms; ++k) {
    const double f = 1.0 - std::pow(static_cast<double>(q), -double(k));
    if (f == 1.0) break;
    r *= std::pow(f, static_cast<double>(q));
  }
  return r;
}

Rational proportion_m2_mrd(unsigned m, std::uint64_t q) {
  if (m < 1) throw PreconditionError("m must be positive");
  Rational r = Rational(s_n_exact(m, q)) / Rational(zpow(q, std::uint64_t(m) * m));
  const mpz_class q2m = zpow(q, 2ull * m);
  for (unsigned i = 0; i < m; ++i)
    r *= Rational(q2m - zpow(q, i + std::uint64_t(m))) /
         Rational(q2m - zpow(q, i));
  r.canonicalize();
  return r;
}

Rational upper_bound_randmrd(unsigned m, unsigned n, unsigned delta,
                             std::uint64_t q) {
  if (m < 1 || delta < 1 || delta > n)
    throw PreconditionError("need m >= 1 and 1 <= delta <= n");
  const unsigned long e =
      static_cast<unsigned long>(delta - 1) * (n - delta + 1);
  Rational base =
      Rational(s_n_exact(m, q)) / Rational(zpow(q, std::uint64_t(m) * m));
  Rational r = base;
  if (e == 0) return Rational(1);
  mpz_pow_ui(r.get_num_mpz_t(), r.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), r.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

Rational upper_bound_f1334(std::uint64_t q) {
  if (q < 2) throw PreconditionError("q must be a prime power");
  Rational r = Rational(s_n_exact(3, q)) / Rational(zpow(q, 9));
  for (unsigned i = 2; i <= 4; ++i)
    r *= Rational(1) - Rational(1) / Rational(zpow(q, i));
  r *= Rational(zpow(q, 7) - 2 * zpow(q, 4) + q) / Rational(zpow(q, 7));
  r.canonicalize();
  return r;
}

std::uint64_t count_spectrum_free_exhaustive(unsigned n, std::uint64_t q) {
  const std::uint64_t total = upow_sat(q, std::uint64_t(n) * n);
  if (total > (1ull << 26))
    throw BudgetExceeded("q^(n^2) too large for exhaustive spectrum count");
  const FieldCtxPtr ctx = make_field_of_order(q);
  GfMatrix a(ctx, n, n);
  std::vector<std::uint64_t> e(std::size_t(n) * n, 0);
  std::uint64_t cnt = 0;
  for (std::uint64_t idx = 0;; ++idx) {
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) a.set(i, j, e[i * n + j]);
    if (a.spectrum_free()) ++cnt;
    std::size_t j = 0;
    while (j < e.size() && e[j] == q - 1) e[j++] = 0;
    if (j >= e.size()) break;
    ++e[j];
  }
  return cnt;
}

ProportionReport proportion_generic(const FerrersDiagram& f, unsigned delta,
                                    std::uint64_t q, std::uint64_t trials,
                                    std::uint64_t seed, unsigned threads,
                                    bool exact, std::uint64_t budget) {
  const BoundProfile prof = nu_profile(f, delta);
  const unsigned N = prof.nu_min;
  if (N == 0) throw PreconditionError("nu_min is zero; nothing to sample");
  if (!budget) budget = default_budget();
  Kern K(make_field_of_order(q));
  const unsigned m = f.m(), n = f.n();
  std::vector<std::size_t> dots;
  for (const Dot& d : f.dot_list())
    dots.push_back(std::size_t(d.row - 1) * n + (d.col - 1));
  const std::size_t D = dots.size();

  // per-trial cost: one rank per projective coefficient vector
  const std::uint64_t combos =
      upow_sat(q, N) == ~0ull ? ~0ull : (upow_sat(q, N) - 1) / (q - 1);
  if (combos > budget)
    throw BudgetExceeded("per-trial codeword enumeration exceeds budget");

  // tuple: N compressed matrices, one uint8 per dot
  const auto trial_ok = [&](const std::vector<std::uint8_t>& tup,
                            std::vector<std::uint8_t>& lam,
                            std::vector<std::uint8_t>& combo,
                            std::vector<std::uint8_t>& full) {
    return all_projective(N, K.q, lam, [&](const std::vector<std::uint8_t>& l) {
      std::fill(combo.begin(), combo.end(), 0);
      for (unsigned i = 0; i < N; ++i) {
        if (!l[i]) continue;
        const std::uint8_t* ai = tup.data() + std::size_t(i) * D;
        for (std::size_t d = 0; d < D; ++d)
          combo[d] = K.add(combo[d], K.mul(l[i], ai[d]));
      }
      std::fill(full.begin(), full.end(), 0);
      for (std::size_t d = 0; d < D; ++d) full[dots[d]] = combo[d];
      return rank_u8(full.data(), m, n, K) >= delta;
    });
  };

  ProportionReport rep;
  rep.seed = seed;
  if (exact) {
    const std::uint64_t total = upow_sat(q, D * N);
    if (total > budget)
      throw BudgetExceeded("exact tuple enumeration exceeds budget");
    rep.exact = true;
    rep.trials = total;
    std::vector<std::uint8_t> tup(std::size_t(N) * D, 0), lam(N),
        combo(D), full(std::size_t(m) * n);
    for (;;) {
      if (trial_ok(tup, lam, combo, full)) ++rep.successes;
      std::size_t j = 0;
      while (j < tup.size() && tup[j] == K.q - 1) tup[j++] = 0;
      if (j >= tup.size()) break;
      ++tup[j];
    }
  } else {
    rep.trials = trials;
    rep.successes = sum_trials(trials, threads, [&](std::uint64_t t) {
      thread_local std::vector<std::uint8_t> tup, lam, combo, full;
      tup.assign(std::size_t(N) * D, 0);
      lam.assign(N, 0);
      combo.assign(D, 0);
      full.assign(std::size_t(m) * n, 0);
      TrialRng rng(seed, t);
      for (auto& e : tup) e = static_cast<std::uint8_t>(rng.below(K.q));
      return trial_ok(tup, lam, combo, full) ? 1u : 0u;
    });
  }
  finish_report(rep);

  // normalized tuples fix the N pivot entries; all-tuple sampling relates by
  // P_norm = P * q^{N^2} / gamma_N  and the subspace proportion by
  // |T^|/|T| = P * q^{|F| N} / prod_i (q^{|F|} - q^i).
  Rational cnorm = Rational(zpow(q, std::uint64_t(N) * N)) /
                   Rational(gamma_n(N, q));
  cnorm.canonicalize();
  rep.normalized = rep.estimate * cnorm.get_d();
  Rational csub(zpow(q, std::uint64_t(D) * N));
  const mpz_class qF = zpow(q, D);
  for (unsigned i = 0; i < N; ++i) csub /= Rational(qF - zpow(q, i));
  csub.canonicalize();
  rep.converted = rep.estimate * csub.get_d();
  return rep;
}

namespace {

// 4x4 GF(2) matrices as 16-bit masks, row i in bits 4i..4i+3.
bool invertible16(std::uint32_t v) {
  std::uint32_t rows[4] = {v & 15, (v >> 4) & 15, (v >> 8) & 15, (v >> 12) & 15};
  unsigned r = 0;
  for (unsigned c = 0; c < 4; ++c) {
    unsigned p = r;
    while (p < 4 && !(rows[p] >> c & 1)) ++p;
    if (p == 4) return false;
    std::swap(rows[p], rows[r]);
    for (unsigned i = 0; i < 4; ++i)
      if (i != r && (rows[i] >> c & 1)) rows[i] ^= rows[r];
    ++r;
  }
  return true;
}

// Exhaustive count over all pairs (M1, M2) of 4x4 GF(2) matrices of those
// with M1, M2, M1+M2 all spectrum-free.
std::uint64_t exhaustive_q2_m4_n3() {
  constexpr std::uint32_t kIdentity = 0x8421;
  std::vector<std::uint8_t> sf(1u << 16, 0);
  std::vector<std::uint32_t> list;
  for (std::uint32_t a = 0; a < (1u << 16); ++a) {
    sf[a] = invertible16(a) && invertible16(a ^ kIdentity);
    if (sf[a]) list.push_back(a);
  }
  std::uint64_t cnt = 0;
  for (std::uint32_t a : list)
    for (std::uint32_t b : list) cnt += sf[a ^ b];
  return cnt;
}

}  // namespace

ProportionReport mrd_proportion_normalized(unsigned m, unsigned n,
                                           unsigned delta, std::uint64_t q,
                                           std::uint64_t trials,
                                           std::uint64_t seed, unsigned threads,
                                           bool exhaustive,
                                           std::uint64_t budget) {
  if (delta != n || n < 2)
    throw PreconditionError("normalized MRD sampling requires delta = n >= 2");
  if (!budget) budget = default_budget();
  Kern K(make_field_of_order(q));
  const unsigned k = n - 1;  // number of drawn square matrices
  const std::size_t mm = std::size_t(m) * m;

  const auto tuple_ok = [&](const std::vector<std::uint8_t>& tup,
                            std::vector<std::uint8_t>& mu,
                            std::vector<std::uint8_t>& combo,
                            std::vector<std::uint8_t>& scratch) {
    return all_projective(k, K.q, mu, [&](const std::vector<std::uint8_t>& u) {
      std::fill(combo.begin(), combo.end(), 0);
      for (unsigned j = 0; j < k; ++j) {
        if (!u[j]) continue;
        const std::uint8_t* mj = tup.data() + std::size_t(j) * mm;
        for (std::size_t d = 0; d < mm; ++d)
          combo[d] = K.add(combo[d], K.mul(u[j], mj[d]));
      }
      return spectrum_free_u8(combo.data(), m, K, scratch.data());
    });
  };

  ProportionReport rep;
  rep.seed = seed;
  if (exhaustive) {
    if (q == 2 && m == 4 && n == 3) {
      rep.successes = exhaustive_q2_m4_n3();
      rep.trials = 1ull << 32;
    } else {
      const std::uint64_t total = upow_sat(q, std::uint64_t(k) * mm);
      if (total > budget)
        throw BudgetExceeded("exhaustive normalized-tuple space exceeds budget");
      rep.trials = total;
      std::vector<std::uint8_t> tup(std::size_t(k) * mm, 0), mu(k), combo(mm),
          scratch(mm);
      for (;;) {
        if (tuple_ok(tup, mu, combo, scratch)) ++rep.successes;
        std::size_t j = 0;
        while (j < tup.size() && tup[j] == K.q - 1) tup[j++] = 0;
        if (j >= tup.size()) break;
        ++tup[j];
      }
    }
    rep.exact = true;
  } else {
    rep.trials = trials;
    rep.successes = sum_trials(trials, threads, [&](std::uint64_t t) {
      thread_local std::vector<std::uint8_t> tup, mu, combo, scratch;
      tup.assign(std::size_t(k) * mm, 0);
      mu.assign(k, 0);
      combo.assign(mm, 0);
      scratch.assign(mm, 0);
      TrialRng rng(seed, t);
      for (auto& e : tup) e = static_cast<std::uint8_t>(rng.below(K.q));
      return tuple_ok(tup, mu, combo, scratch) ? 1u : 0u;
    });
  }
  finish_report(rep);

  rep.normalized = rep.estimate;
  Rational conv(1);
  const mpz_class qmn = zpow(q, std::uint64_t(m) * n);
  for (unsigned i = 0; i < m; ++i)
    conv *= Rational(qmn - zpow(q, i + std::uint64_t(m) * (n - 1))) /
            Rational(qmn - zpow(q, i));
  conv.canonicalize();
  rep.converted = rep.estimate * conv.get_d();
  return rep;
}

std::vector<LimitScanRow> genericity_limit_scan(const FerrersDiagram& f,
                                                unsigned delta,
                                                std::uint64_t q0,
                                                unsigned r_max,
                                                std::uint64_t trials,
                                                std::uint64_t seed,
                                                unsigned threads) {
  std::vector<LimitScanRow> rows;
  std::uint64_t qr = 1;
  for (unsigned r = 1; r <= r_max; ++r) {
    qr *= q0;
    if (qr > 256)
      throw PreconditionError("field order exceeds the 256-element kernel cap");
    LimitScanRow row;
    row.r = r;
    row.q = qr;
    row.report = proportion_generic(f, delta, qr, trials, seed, threads);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ferro
