#include "ferro/code.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "ferro/prng.hpp"

namespace ferro {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("FERRO_BUDGET")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
    throw PreconditionError("FERRO_BUDGET must be a positive integer");
  }
  return std::uint64_t(1) << 24;
}

std::size_t code_dimension(const RankMetricCode& c) {
  if (c.basis.empty()) return 0;
  GfMatrix flat(c.ctx, c.basis.size(), c.m * c.n);
  for (std::size_t i = 0; i < c.basis.size(); ++i)
    flat.set_row(i, c.basis[i].data());
  return flat.rank();
}

namespace {

// Visit all projective coefficient vectors (first nonzero entry = 1) of
// length k over GF(q); stop early when the visitor returns false.
template <typename Fn>
std::uint64_t for_each_projective(std::uint64_t q, std::size_t k, Fn&& visit) {
  std::vector<std::uint64_t> lam(k, 0);
  std::uint64_t seen = 0;
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::fill(lam.begin(), lam.end(), 0);
    lam[lead] = 1;
    // Odometer over the free positions lead+1..k-1.
    while (true) {
      ++seen;
      if (!visit(lam)) return seen;
      std::size_t j = lead + 1;
      while (j < k && lam[j] == q - 1) lam[j++] = 0;
      if (j >= k) break;
      ++lam[j];
    }
  }
  return seen;
}

GfMatrix combination(const RankMetricCode& c,
                     const std::vector<std::uint64_t>& lam) {
  GfMatrix acc(c.ctx, c.m, c.n);
  for (std::size_t i = 0; i < c.basis.size(); ++i) {
    if (lam[i] == 0) continue;
    acc = acc + c.basis[i].scaled(lam[i]);
  }
  return acc;
}

std::uint64_t projective_count(std::uint64_t q, std::size_t k) {
  // (q^k - 1)/(q - 1), with overflow guard.
  std::uint64_t total = 0, powq = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total += powq;
    if (powq > (std::uint64_t(1) << 62) / q) return ~std::uint64_t(0);
    powq *= q;
  }
  return total;
}

}  // namespace

unsigned min_rank_distance_exact(const RankMetricCode& c, std::uint64_t budget) {
  const std::size_t k = c.basis.size();
  if (k == 0) throw PreconditionError("distance of the zero code is undefined");
  const std::uint64_t q = c.ctx->order();
  if (projective_count(q, k) > budget)
    throw BudgetExceeded("codeword enumeration exceeds budget");
  unsigned best = static_cast<unsigned>(std::min(c.m, c.n)) + 1;
  for_each_projective(q, k, [&](const std::vector<std::uint64_t>& lam) {
    unsigned r = static_cast<unsigned>(combination(c, lam).rank());
    if (r < best) best = r;
    return best > 0;  // rank 0 means dependent basis; cannot go lower
  });
  return best;
}

unsigned min_rank_distance_sampled(const RankMetricCode& c, std::uint64_t trials,
                                   std::uint64_t seed) {
  const std::size_t k = c.basis.size();
  if (k == 0) throw PreconditionError("distance of the zero code is undefined");
  const std::uint64_t q = c.ctx->order();
  unsigned best = static_cast<unsigned>(std::min(c.m, c.n)) + 1;
  for (std::uint64_t t = 0; t < trials; ++t) {
    TrialRng rng(seed, t);
    std::vector<std::uint64_t> lam(k, 0);
    bool nonzero = false;
    while (!nonzero) {
      for (auto& l : lam) {
        l = rng.below(q);
        nonzero |= l != 0;
      }
    }
    unsigned r = static_cast<unsigned>(combination(c, lam).rank());
    best = std::min(best, r);
  }
  return best;
}

bool matrix_has_shape(const GfMatrix& a, const FerrersDiagram& f) {
  if (a.rows() != f.m() || a.cols() != f.n()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != 0 &&
          !f.contains(static_cast<unsigned>(i + 1), static_cast<unsigned>(j + 1)))
        return false;
  return true;
}

VerificationReport verify_maximal(const RankMetricCode& c, const FerrersDiagram& f,
                                  unsigned delta, std::uint64_t budget) {
  VerificationReport rep;
  rep.nu_min = nu_profile(f, delta).nu_min;
  rep.dimension = code_dimension(c);
  rep.independent = rep.dimension == c.basis.size();
  rep.shape_ok = std::all_of(c.basis.begin(), c.basis.end(), [&](const GfMatrix& a) {
    return matrix_has_shape(a, f);
  });
  if (!c.basis.empty()) {
    rep.distance = min_rank_distance_exact(c, budget);
    rep.exact = true;
    rep.codewords_examined = projective_count(c.ctx->order(), c.basis.size());
  }
  rep.maximal = rep.independent && rep.shape_ok && rep.exact &&
                rep.dimension == rep.nu_min && rep.distance >= delta &&
                rep.nu_min > 0;
  return rep;
}

std::vector<std::size_t> lift_pivots(const FerrersDiagram& f) {
  const unsigned m = f.m(), n = f.n();
  std::vector<std::size_t> pivots;
  for (unsigned i = 1; i <= m; ++i) {
    unsigned t_prev = 0;  // t_{i-1} = |{j : c_j <= i-1}|
    for (unsigned c : f.cols())
      if (c <= i - 1) ++t_prev;
    pivots.push_back(t_prev + i);
  }
  (void)n;
  return pivots;
}

GfMatrix lift_to_rref(const GfMatrix& a, const FerrersDiagram& f) {
  if (!matrix_has_shape(a, f))
    throw PreconditionError("lift: matrix does not have the given shape");
  const std::size_t m = f.m(), n = f.n();
  auto pivots = lift_pivots(f);
  GfMatrix out(a.ctx(), m, m + n);
  std::vector<bool> is_pivot(m + n + 1, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  for (std::size_t i = 0; i < m; ++i) out.set(i, pivots[i] - 1, 1);
  std::size_t src = 0;
  for (std::size_t col = 1; col <= m + n; ++col) {
    if (is_pivot[col]) continue;
    for (std::size_t i = 0; i < m; ++i) out.set(i, col - 1, a.at(i, src));
    ++src;
  }
  return out;
}

std::vector<GfMatrix> lift_to_rref(const RankMetricCode& c,
                                   const FerrersDiagram& f) {
  std::vector<GfMatrix> out;
  out.reserve(c.basis.size());
  for (const auto& a : c.basis) out.push_back(lift_to_rref(a, f));
  return out;
}

RankMetricCode subcode_dropping_position(const RankMetricCode& c, Dot dot) {
  if (dot.row < 1 || dot.row > c.m || dot.col < 1 || dot.col > c.n)
    throw PreconditionError("drop position outside the matrix");
  const std::size_t i = dot.row - 1, j = dot.col - 1;
  std::vector<GfMatrix> basis = c.basis;
  std::size_t piv = basis.size();
  for (std::size_t s = 0; s < basis.size(); ++s)
    if (basis[s].at(i, j) != 0) {
      piv = s;
      break;
    }
  if (piv == basis.size())
    throw PreconditionError("all basis matrices vanish at the given position");
  std::swap(basis[piv], basis.back());
  const auto& ctx = c.ctx;
  std::uint64_t pval = basis.back().at(i, j);
  for (std::size_t s = 0; s + 1 < basis.size(); ++s) {
    std::uint64_t v = basis[s].at(i, j);
    if (v == 0) continue;
    basis[s] = basis[s] - basis.back().scaled(ctx->div(v, pval));
  }
  RankMetricCode out;
  out.ctx = c.ctx;
  out.m = c.m;
  out.n = c.n;
  out.basis.assign(basis.begin(), basis.end() - 1);
  out.delta = c.delta;
  return out;
}

// --- code file format --------------------------------------------------------

namespace {

std::vector<const FieldCtx*> tower_chain(const FieldCtxPtr& ctx) {
  std::vector<const FieldCtx*> chain;
  for (const FieldCtx* f = ctx.get(); f; f = f->base().get())
    chain.push_back(f);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::vector<std::uint64_t> parse_uint_list(const std::string& s,
                                           const std::string& what) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoull(tok));
    } catch (...) {
      throw ParseError("bad " + what + ": " + s);
    }
  }
  if (out.empty()) throw ParseError("empty " + what);
  return out;
}

}  // namespace

std::string write_code_file(const RankMetricCode& c) {
  std::ostringstream out;
  out << "RMC 1\n";
  auto chain = tower_chain(c.ctx);
  out << "field p=" << c.ctx->p() << " tower=";
  for (std::size_t i = 0; i < chain.size(); ++i)
    out << (i ? "," : "") << chain[i]->degree();
  out << "\n";
  for (const FieldCtx* f : chain) {
    out << "modulus ";
    const auto& mod = f->modulus();
    for (std::size_t i = 0; i < mod.size(); ++i) out << (i ? "," : "") << mod[i];
    out << "\n";
  }
  out << "dims m=" << c.m << " n=" << c.n << " k=" << c.basis.size() << "\n";
  if (c.shape) out << "shape " << c.shape->to_string() << "\n";
  if (c.delta) out << "delta " << *c.delta << "\n";
  for (std::size_t idx = 0; idx < c.basis.size(); ++idx) {
    out << "\nmatrix " << idx << "\n";
    for (std::size_t i = 0; i < c.m; ++i) {
      for (std::size_t j = 0; j < c.n; ++j)
        out << (j ? " " : "") << c.basis[idx].at(i, j);
      out << "\n";
    }
  }
  return out.str();
}

RankMetricCode read_code_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&](bool required) -> bool {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    if (required) throw ParseError("unexpected end of code file");
    return false;
  };
  next_line(true);
  if (line != "RMC 1") throw ParseError("not a code file (missing RMC 1 header)");
  next_line(true);
  std::uint64_t p = 0;
  std::vector<std::uint64_t> tower;
  {
    std::stringstream ss(line);
    std::string word;
    ss >> word;
    if (word != "field") throw ParseError("expected field line");
    while (ss >> word) {
      if (word.rfind("p=", 0) == 0)
        p = std::stoull(word.substr(2));
      else if (word.rfind("tower=", 0) == 0)
        tower = parse_uint_list(word.substr(6), "tower");
      else
        throw ParseError("unexpected token in field line: " + word);
    }
    if (p == 0 || tower.empty()) throw ParseError("incomplete field line");
  }
  FieldCtxPtr ctx;
  for (std::size_t level = 0; level < tower.size(); ++level) {
    next_line(true);
    if (line.rfind("modulus ", 0) != 0) throw ParseError("expected modulus line");
    auto mod = parse_uint_list(line.substr(8), "modulus");
    if (mod.size() != tower[level] + 1)
      throw ParseError("modulus degree does not match tower");
    if (level == 0) {
      if (!(mod.size() == 2 && mod[0] == 0 && mod[1] == 1)) {
        // degree >= 2 over the prime field
        ctx = FieldCtx::with_modulus(make_field(p, 1), mod);
      } else {
        ctx = make_field(p, 1);
      }
    } else {
      ctx = FieldCtx::with_modulus(ctx, mod);
    }
  }
  next_line(true);
  std::size_t m = 0, n = 0, k = 0;
  {
    std::stringstream ss(line);
    std::string word;
    ss >> word;
    if (word != "dims") throw ParseError("expected dims line");
    while (ss >> word) {
      if (word.rfind("m=", 0) == 0)
        m = std::stoull(word.substr(2));
      else if (word.rfind("n=", 0) == 0)
        n = std::stoull(word.substr(2));
      else if (word.rfind("k=", 0) == 0)
        k = std::stoull(word.substr(2));
      else
        throw ParseError("unexpected token in dims line: " + word);
    }
    if (m == 0 || n == 0) throw ParseError("incomplete dims line");
  }
  RankMetricCode code;
  code.ctx = ctx;
  code.m = m;
  code.n = n;
  bool have_next = next_line(false);
  while (have_next && line.rfind("matrix ", 0) != 0) {
    if (line.rfind("shape ", 0) == 0)
      code.shape = FerrersDiagram::parse(line.substr(6));
    else if (line.rfind("delta ", 0) == 0)
      code.delta = static_cast<unsigned>(std::stoul(line.substr(6)));
    else
      throw ParseError("unexpected line: " + line);
    have_next = next_line(false);
  }
  while (have_next) {
    if (line.rfind("matrix ", 0) != 0) throw ParseError("expected matrix block");
    GfMatrix a(ctx, m, n);
    for (std::size_t i = 0; i < m; ++i) {
      next_line(true);
      std::stringstream ss(line);
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t v;
        if (!(ss >> v)) throw ParseError("short matrix row");
        if (v >= ctx->order()) throw ParseError("entry out of field range");
        a.set(i, j, v);
      }
    }
    code.basis.push_back(std::move(a));
    have_next = next_line(false);
  }
  if (code.basis.size() != k) throw ParseError("matrix count does not match k");
  return code;
}

}  // namespace ferro
