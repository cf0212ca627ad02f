#include "ferro/ferrers.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ferro {

FerrersDiagram::FerrersDiagram(unsigned m, std::vector<unsigned> cols)
    : m_(m), cols_(std::move(cols)) {
  if (cols_.empty()) throw PreconditionError("diagram needs at least one column");
  if (m_ == 0) throw PreconditionError("diagram needs at least one row");
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    if (cols_[j] > m_) throw PreconditionError("column count exceeds row count");
    if (j > 0 && cols_[j] < cols_[j - 1])
      throw PreconditionError("column counts must be nondecreasing");
  }
}

FerrersDiagram FerrersDiagram::parse(const std::string& text) {
  std::string cols_part = text;
  unsigned m = 0;
  bool have_m = false;
  if (auto at = text.find('@'); at != std::string::npos) {
    cols_part = text.substr(0, at);
    try {
      m = static_cast<unsigned>(std::stoul(text.substr(at + 1)));
    } catch (...) {
      throw ParseError("bad row count in diagram: " + text);
    }
    have_m = true;
  }
  std::vector<unsigned> cols;
  std::stringstream ss(cols_part);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      cols.push_back(static_cast<unsigned>(std::stoul(tok)));
    } catch (...) {
      throw ParseError("bad column count in diagram: " + text);
    }
  }
  if (cols.empty()) throw ParseError("empty diagram: " + text);
  if (!have_m) m = cols.back();
  try {
    return FerrersDiagram(m, std::move(cols));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string(e.what()) + ": " + text);
  }
}

std::string FerrersDiagram::to_string() const {
  std::string s;
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    if (j) s += ',';
    s += std::to_string(cols_[j]);
  }
  return s + "@" + std::to_string(m_);
}

unsigned FerrersDiagram::dots() const {
  return std::accumulate(cols_.begin(), cols_.end(), 0u);
}

bool FerrersDiagram::contains(unsigned row, unsigned col) const {
  return col >= 1 && col <= n() && row >= 1 && row <= cols_[col - 1];
}

std::vector<Dot> FerrersDiagram::dot_list() const {
  std::vector<Dot> out;
  for (unsigned j = 1; j <= n(); ++j)
    for (unsigned i = 1; i <= cols_[j - 1]; ++i) out.push_back({i, j});
  return out;
}

FerrersDiagram FerrersDiagram::normalized() const {
  std::vector<unsigned> cols;
  for (unsigned c : cols_)
    if (c > 0) cols.push_back(c);
  if (cols.empty()) throw PreconditionError("cannot normalize an empty diagram");
  const unsigned m = cols.back();
  return FerrersDiagram(m, std::move(cols));
}

FerrersDiagram FerrersDiagram::transposed() const {
  // Row i of this diagram has |{j : c_j >= i}| dots; rows, reversed, become
  // the column counts of the transpose.
  const unsigned rows = cols_.back();
  std::vector<unsigned> t(rows, 0);
  for (unsigned i = 1; i <= rows; ++i)
    for (unsigned c : cols_)
      if (c >= i) ++t[i - 1];
  std::reverse(t.begin(), t.end());
  if (t.empty()) throw PreconditionError("cannot transpose an empty diagram");
  return FerrersDiagram(static_cast<unsigned>(cols_.size()), std::move(t));
}

BoundProfile nu_profile(const FerrersDiagram& f, unsigned delta) {
  const unsigned n = f.n();
  if (delta < 1 || delta > n)
    throw PreconditionError("nu_profile: delta must be in [1, n]");
  BoundProfile p;
  p.delta = delta;
  for (unsigned j = 0; j < delta; ++j) {
    unsigned nu = 0;
    for (unsigned t = 1; t <= n - delta + 1 + j; ++t) {
      unsigned c = f.cols()[t - 1];
      nu += c > j ? c - j : 0;
    }
    p.nu.push_back(nu);
  }
  p.nu_min = *std::min_element(p.nu.begin(), p.nu.end());
  for (unsigned j = 0; j < delta; ++j)
    if (p.nu[j] == p.nu_min) p.all_argmin.push_back(j);
  p.argmin = p.all_argmin.front();
  return p;
}

namespace {

// Corner dots: bottom of a column whose removal keeps the tuple a Ferrers
// diagram (column stays >= its left neighbour).
std::vector<std::pair<Dot, FerrersDiagram>> removable_corners(
    const FerrersDiagram& f) {
  std::vector<std::pair<Dot, FerrersDiagram>> out;
  const auto& c = f.cols();
  for (unsigned j = 1; j <= f.n(); ++j) {
    if (c[j - 1] == 0) continue;
    unsigned left = j > 1 ? c[j - 2] : 0;
    if (c[j - 1] - 1 < left) continue;
    auto child = c;
    child[j - 1] -= 1;
    out.push_back({Dot{c[j - 1], j}, FerrersDiagram(f.m(), std::move(child))});
  }
  return out;
}

}  // namespace

std::vector<Dot> pending_dots(const FerrersDiagram& f, unsigned delta) {
  const unsigned base = nu_profile(f, delta).nu_min;
  std::vector<Dot> out;
  for (auto& [dot, child] : removable_corners(f))
    if (nu_profile(child, delta).nu_min == base) out.push_back(dot);
  return out;
}

std::vector<FerrersDiagram> reduction_children(const FerrersDiagram& f,
                                               unsigned delta) {
  const unsigned base = nu_profile(f, delta).nu_min;
  std::vector<FerrersDiagram> out;
  if (base == 0) return out;
  for (auto& [dot, child] : removable_corners(f))
    if (nu_profile(child, delta).nu_min == base - 1) out.push_back(child);
  return out;
}

std::vector<unsigned> diagonal_intersections(const FerrersDiagram& f) {
  const unsigned m = f.m(), n = f.n();
  std::vector<unsigned> out(m, 0);
  for (unsigned r = 1; r <= m; ++r) {
    unsigned count = 0;
    for (unsigned i = (r + 1 > n ? r + 1 - n : 1); i <= r; ++i) {
      unsigned j = i + n - r;
      if (j >= 1 && j <= n && f.contains(i, j)) ++count;
    }
    out[r - 1] = count;
  }
  return out;
}

bool mds_constructible(const FerrersDiagram& f, unsigned delta) {
  auto d = diagonal_intersections(f);
  unsigned sum = 0;
  for (unsigned len : d) sum += len + 1 > delta ? len + 1 - delta : 0;
  return sum == nu_profile(f, delta).nu_min;
}

MdsDiagonalWitness mds_diagonal(const FerrersDiagram& f, unsigned delta) {
  const unsigned m = f.m(), n = f.n();
  auto profile = nu_profile(f, delta);
  for (unsigned alpha : profile.all_argmin) {
    // Residual diagram F_(alpha): drop the top alpha rows and the last
    // delta-1-alpha columns.
    auto in_residual = [&](unsigned i, unsigned j) {
      return f.contains(i, j) && i > alpha && j + (delta - 1 - alpha) <= n;
    };
    for (unsigned s = 1; s <= m; ++s) {
      const int off = static_cast<int>(n) - static_cast<int>(s);  // j - i on D_s
      unsigned outside = 0;
      bool on_residual = false, below_residual = false;
      for (unsigned j = 1; j <= n; ++j)
        for (unsigned i = 1; i <= f.cols()[j - 1]; ++i) {
          int d = static_cast<int>(j) - static_cast<int>(i);
          bool res = in_residual(i, j);
          if (d == off && !res) ++outside;
          if (res && d == off) on_residual = true;
          if (res && d < off) below_residual = true;
        }
      if (outside == delta - 1 && on_residual && !below_residual)
        return {true, alpha, s};
    }
  }
  return {};
}

bool staircase_check(const FerrersDiagram& f, unsigned delta) {
  const unsigned n = f.n();
  if (delta < 2 || delta > n) return false;
  const unsigned ell = n - delta + 1;
  long eps = 0;
  for (unsigned t = ell + 1; t <= n; ++t)
    eps += static_cast<long>(f.m()) - f.cols()[t - 1];
  for (unsigned t = 1; t <= ell; ++t)
    if (static_cast<long>(f.cols()[t - 1]) >
        static_cast<long>(f.cols()[ell]) - eps * static_cast<long>(ell + 1 - t))
      return false;
  return true;
}

bool not_subfield_realizable(const FerrersDiagram& f, unsigned delta) {
  const unsigned n = f.n();
  if (delta < 2 || delta > n) return false;
  const unsigned ell = n - delta + 1;
  if (ell + 1 > n) return false;
  const unsigned cl = f.cols()[ell - 1], cl1 = f.cols()[ell];
  if (!(cl == cl1 && cl < f.m())) return false;
  if (std::gcd(cl, f.m()) != 1) return false;
  auto p = nu_profile(f, delta);
  return p.nu_min == p.nu[0];
}

DeltaNReport delta_n_classification(const FerrersDiagram& f) {
  const unsigned n = f.n();
  if (n > f.m())
    throw PreconditionError("delta_n_classification: requires n <= m");
  DeltaNReport r;
  auto p = nu_profile(f, n);
  r.nu_min = p.nu_min;
  r.mds_constructible = mds_constructible(f, n);
  int c = static_cast<int>(f.cols()[0]);
  for (unsigned t = 1; t <= n; ++t)
    c = std::min(c, static_cast<int>(f.cols()[t - 1]) - static_cast<int>(t) + 1);
  r.c = c;
  if (p.nu_min == 0) {
    r.nu_min_zero = true;
    r.maximal_exists_closed_field = false;
    return r;
  }
  r.attained_beyond_nu0 =
      std::any_of(p.all_argmin.begin(), p.all_argmin.end(),
                  [](unsigned j) { return j > 0; });
  if (r.attained_beyond_nu0) {
    for (unsigned s = 1; s <= n && !r.corner_s; ++s) {
      if (f.cols()[s - 1] != s) continue;
      bool ok = true;
      for (unsigned t = 1; t < s; ++t)
        if (f.cols()[t - 1] > s - 1) ok = false;
      if (ok) r.corner_s = s;
    }
    bool cond_corner = r.corner_s.has_value();
    bool cond_nu1 = p.nu_min == 1;
    if (cond_corner != cond_nu1 || cond_nu1 != r.mds_constructible)
      throw PreconditionError("delta_n_classification: equivalent conditions disagree");
    r.maximal_exists_closed_field = cond_nu1;
  } else {
    bool cond_c1 = static_cast<int>(f.cols()[0]) == c;
    if (cond_c1 != r.mds_constructible)
      throw PreconditionError("delta_n_classification: equivalent conditions disagree");
    r.maximal_exists_closed_field = cond_c1;
  }
  return r;
}

std::vector<FerrersDiagram> enumerate_diagrams(unsigned m, unsigned n) {
  std::vector<FerrersDiagram> out;
  std::vector<unsigned> c(n, 0);
  while (true) {
    out.emplace_back(m, c);
    // Next nondecreasing tuple with entries <= m.
    int j = static_cast<int>(n) - 1;
    while (j >= 0 && c[j] == m) --j;
    if (j < 0) break;
    ++c[j];
    for (unsigned t = j + 1; t < n; ++t) c[t] = c[j];
    // (entries right of j reset to the new floor; tuple stays nondecreasing)
  }
  return out;
}

}  // namespace ferro
