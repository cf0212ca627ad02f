// ferro: maximal Ferrers-diagram rank-metric codes.
//
// Subcommands: bound, analyze, construct, verify, lift, survey, count,
// proportion, limits. Exit codes: 0 success (verify: maximal), 1 error or
// refuted, 2 inconclusive (sampled verification), 3 enumeration budget
// exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ferro/code.hpp"
#include "ferro/construct.hpp"
#include "ferro/ferrers.hpp"
#include "ferro/genericity.hpp"

namespace {

using namespace ferro;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write " + path);
  out << text;
}

void print_matrix(const GfMatrix& a, std::ostream& os) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      os << (j ? " " : "") << a.at(i, j);
    os << "\n";
  }
}

FerrersDiagram full_diagram(unsigned m, unsigned n) {
  return FerrersDiagram(m, std::vector<unsigned>(n, m));
}

void print_report(const VerificationReport& r, unsigned delta,
                  std::ostream& os) {
  os << "dimension   " << r.dimension << (r.independent ? "" : " (dependent!)")
     << "\n"
     << "shape       " << (r.shape_ok ? "ok" : "violated") << "\n"
     << "distance    " << (r.exact ? "" : ">= observed min ") << r.distance
     << " (target " << delta << ", " << (r.exact ? "exact" : "sampled") << ", "
     << r.codewords_examined << " codewords)\n"
     << "nu_min      " << r.nu_min << "\n"
     << "maximal     " << (r.maximal ? "yes" : r.exact ? "no" : "inconclusive")
     << "\n";
}

// ---- construct ------------------------------------------------------------

struct ConstructArgs {
  std::string method, diagram, out;
  std::uint64_t q = 2, c = 1, d = 1;
  unsigned m = 0, n = 0, delta = 0, b = 0, i = 0, t = 0;
  bool no_verify = false;
  std::uint64_t budget = 0;
};

int run_construct(const ConstructArgs& a) {
  RankMetricCode code;
  if (a.method == "gabidulin") {
    auto res = gabidulin(extension_field(a.q, a.m), a.n, a.delta);
    code = std::move(res.code);
    code.shape = full_diagram(a.m, a.n);
  } else if (a.method == "fn1") {
    code = construct_fn1(FerrersDiagram::parse(a.diagram), a.delta, a.q);
  } else if (a.method == "staircase") {
    code = construct_staircase(FerrersDiagram::parse(a.diagram), a.delta, a.q);
  } else if (a.method == "ctn") {
    code = construct_ctn(FerrersDiagram::parse(a.diagram), a.delta, a.q);
  } else if (a.method == "invariance") {
    code = construct_invariance(a.q, a.m, a.n, a.delta, a.b);
  } else if (a.method == "companion") {
    code = construct_companion(a.q, a.m, a.i, a.t);
  } else if (a.method == "mds-diagonal") {
    auto res = construct_mds_diagonal(FerrersDiagram::parse(a.diagram),
                                      a.delta, a.q);
    std::cout << "diagonal dimension sum " << res.diagonal_sum
              << (res.maximal ? " (attains nu_min)" : " (below nu_min)")
              << "\n";
    code = std::move(res.code);
  } else if (a.method == "ut-explicit") {
    code = construct_upper_triangular_explicit(a.n, a.q, a.c, a.d);
  } else if (a.method == "ut-recursive") {
    code = construct_upper_triangular_recursive(a.n, a.q);
  } else if (a.method == "f1334") {
    code = construct_f1334(a.q);
  } else {
    throw PreconditionError("unknown construction method: " + a.method);
  }

  std::cout << "constructed k=" << code.basis.size() << " code in "
            << code.m << "x" << code.n << " over GF(" << code.ctx->order()
            << ")";
  if (code.shape) std::cout << ", shape " << code.shape->to_string();
  if (code.delta) std::cout << ", delta " << *code.delta;
  std::cout << "\n";

  int rc = 0;
  if (!a.no_verify) {
    if (!code.shape || !code.delta)
      throw PreconditionError("code lacks shape/delta; cannot verify");
    const std::uint64_t budget = a.budget ? a.budget : default_budget();
    auto rep = verify_maximal(code, *code.shape, *code.delta, budget);
    print_report(rep, *code.delta, std::cout);
    if (!rep.independent || !rep.shape_ok || rep.distance < *code.delta)
      rc = 1;
  }
  if (!a.out.empty()) write_file(a.out, write_code_file(code));
  return rc;
}

// ---- verify ---------------------------------------------------------------

int run_verify(const std::string& path, const std::string& shape_arg,
               unsigned delta_arg, const std::string& mode,
               std::uint64_t budget_arg) {
  RankMetricCode code = read_code_file(read_file(path));
  std::optional<FerrersDiagram> shape = code.shape;
  if (!shape_arg.empty()) shape = FerrersDiagram::parse(shape_arg);
  if (!shape) throw PreconditionError("no shape in file; pass --shape");
  unsigned delta = delta_arg ? delta_arg : code.delta.value_or(0);
  if (!delta) throw PreconditionError("no delta in file; pass --delta");
  const std::uint64_t budget = budget_arg ? budget_arg : default_budget();

  if (mode.rfind("sampled", 0) == 0) {
    std::uint64_t trials = 100000, seed = 1;
    if (std::sscanf(mode.c_str(), "sampled:%llu:%llu",
                    reinterpret_cast<unsigned long long*>(&trials),
                    reinterpret_cast<unsigned long long*>(&seed)) < 1 &&
        mode != "sampled")
      throw PreconditionError("bad --mode, want sampled[:trials:seed]");
    const std::size_t dim = code_dimension(code);
    const unsigned dist = min_rank_distance_sampled(code, trials, seed);
    const auto prof = nu_profile(*shape, delta);
    VerificationReport rep;
    rep.dimension = dim;
    rep.independent = dim == code.basis.size();
    rep.shape_ok = true;
    for (const auto& mtx : code.basis)
      rep.shape_ok = rep.shape_ok && matrix_has_shape(mtx, *shape);
    rep.distance = dist;
    rep.exact = false;
    rep.codewords_examined = trials;
    rep.nu_min = prof.nu_min;
    print_report(rep, delta, std::cout);
    if (!rep.independent || !rep.shape_ok || dist < delta ||
        dim != prof.nu_min)
      return 1;        // refuted by the sampled upper bound alone
    return 2;          // consistent but not proven
  }
  if (mode != "exact")
    throw PreconditionError("bad --mode, want exact or sampled[:trials:seed]");
  auto rep = verify_maximal(code, *shape, delta, budget);
  print_report(rep, delta, std::cout);
  return rep.maximal ? 0 : 1;
}

// ---- survey ---------------------------------------------------------------

std::set<std::string> reduction_closure(const FerrersDiagram& seed,
                                        unsigned delta) {
  std::set<std::string> seen;
  std::vector<FerrersDiagram> work{seed};
  seen.insert(seed.to_string());
  while (!work.empty()) {
    FerrersDiagram f = work.back();
    work.pop_back();
    for (const auto& child : reduction_children(f, delta))
      if (seen.insert(child.to_string()).second) work.push_back(child);
  }
  return seen;
}

int run_survey(unsigned m, unsigned n, unsigned delta, std::uint64_t q,
               const std::string& out_path) {
  // rough C(m+n, n) guard
  double count = 1;
  for (unsigned i = 1; i <= n; ++i) count = count * (m + i) / i;
  if (count > 1e6) throw BudgetExceeded("diagram space too large to survey");

  std::set<std::string> from_full, from_stairs;
  from_full = reduction_closure(full_diagram(m, n), delta);
  {
    std::vector<unsigned> tri(n);
    for (unsigned j = 0; j < n; ++j) tri[j] = std::min(j + 1, m);
    from_stairs = reduction_closure(FerrersDiagram(m, tri), delta);
  }

  std::ostringstream csv;
  csv << "diagram,nu_min,diagonal_sum,mds_constructible,staircase,"
         "not_subfield_realizable,reach,constructors,note\n";
  for (const auto& f : enumerate_diagrams(m, n)) {
    const auto prof = nu_profile(f, delta);
    unsigned diag_sum = 0;
    for (unsigned d : diagonal_intersections(f))
      if (d + 1 > delta) diag_sum += d - delta + 1;
    const bool mds = mds_constructible(f, delta);
    const bool stairs = delta >= 2 && staircase_check(f, delta);
    const bool nsr = not_subfield_realizable(f, delta);

    const bool in_full = from_full.count(f.to_string()) != 0;
    const bool in_tri = from_stairs.count(f.to_string()) != 0;
    const char* reach = in_full && in_tri ? "both"
                        : in_full         ? "full"
                        : in_tri          ? "triangle"
                                          : "neither";
    std::vector<std::string> ctors;
    if (prof.nu_min > 0) {
      bool tall_full = true;
      const unsigned ell = n - delta + 1;
      for (unsigned t = ell; t < n; ++t)
        tall_full = tall_full && f.cols()[t] == m;
      if (tall_full) ctors.push_back("fn1");
      if (stairs) ctors.push_back("staircase");
      if (mds) ctors.push_back("mds-diagonal");
      if (m == 4 && delta == 3 && f.cols() == std::vector<unsigned>{1, 3, 3, 4})
        ctors.push_back("f1334");
    }
    std::string note;
    if (prof.nu_min > 0 && !in_full && !in_tri) note = "ad-hoc only";
    std::string ctor_list;
    for (const auto& c : ctors) ctor_list += (ctor_list.empty() ? "" : ";") + c;
    csv << f.to_string() << "," << prof.nu_min << "," << diag_sum << ","
        << (mds ? 1 : 0) << "," << (stairs ? 1 : 0) << "," << (nsr ? 1 : 0)
        << "," << reach << "," << ctor_list << "," << note << "\n";
  }
  (void)q;
  if (out_path.empty())
    std::cout << csv.str();
  else
    write_file(out_path, csv.str());
  return 0;
}

// ---- proportion -----------------------------------------------------------

void print_proportion_csv(const std::string& kind, const std::string& params,
                          const ProportionReport& r) {
  std::cout << "kind,params,successes,trials,estimate,ci3sigma,seed,"
               "normalized,converted\n"
            << kind << "," << params << "," << r.successes << "," << r.trials
            << "," << r.estimate << ",";
  if (r.exact)
    std::cout << "exact";
  else
    std::cout << r.ci3sigma;
  std::cout << "," << r.seed << "," << r.normalized << "," << r.converted
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximal Ferrers-diagram rank-metric codes"};
  app.require_subcommand(1);
  int rc = 0;

  // bound
  std::string diagram_arg;
  unsigned delta_arg = 1;
  auto* bound = app.add_subcommand("bound", "dimension bound profile");
  bound->add_option("diagram", diagram_arg, "c1,...,cn[@m]")->required();
  bound->add_option("--delta", delta_arg, "rank distance")->required();
  bound->callback([&] {
    const auto f = FerrersDiagram::parse(diagram_arg);
    const auto prof = nu_profile(f, delta_arg);
    std::cout << f.to_string() << " delta=" << prof.delta << "\n";
    for (unsigned j = 0; j < prof.nu.size(); ++j)
      std::cout << "nu_" << j << " = " << prof.nu[j] << "\n";
    std::cout << "nu_min = " << prof.nu_min << " (attained at j="
              << prof.argmin << ")\n";
  });

  // analyze
  auto* analyze = app.add_subcommand("analyze", "predicates for (F; delta)");
  analyze->add_option("diagram", diagram_arg, "c1,...,cn[@m]")->required();
  analyze->add_option("--delta", delta_arg, "rank distance")->required();
  analyze->callback([&] {
    const auto f = FerrersDiagram::parse(diagram_arg);
    const auto prof = nu_profile(f, delta_arg);
    std::cout << f.to_string() << " delta=" << delta_arg << "\n"
              << "nu_min = " << prof.nu_min << "\n";
    std::cout << "pending dots:";
    for (const Dot& d : pending_dots(f, delta_arg))
      std::cout << " (" << d.row << "," << d.col << ")";
    std::cout << "\n";
    std::cout << "MDS-constructible: "
              << (mds_constructible(f, delta_arg) ? "yes" : "no") << "\n";
    const auto w = mds_diagonal(f, delta_arg);
    if (w.found)
      std::cout << "MDS diagonal: alpha=" << w.alpha << " s=" << w.s << "\n";
    else
      std::cout << "MDS diagonal: none\n";
    if (delta_arg >= 2)
      std::cout << "staircase condition: "
                << (staircase_check(f, delta_arg) ? "yes" : "no") << "\n";
    std::cout << "not subfield-realizable: "
              << (not_subfield_realizable(f, delta_arg) ? "yes" : "no") << "\n";
    if (delta_arg == f.n()) {
      const auto rep = delta_n_classification(f);
      std::cout << "delta=n closed-field classification: "
                << (rep.maximal_exists_closed_field ? "maximal exists"
                                                    : "no maximal code")
                << " (min(c_t - t + 1) = " << rep.c << ")\n";
    }
  });

  // construct
  ConstructArgs ca;
  auto* cons = app.add_subcommand("construct", "build and verify a code");
  cons->add_option("method", ca.method,
                   "gabidulin|fn1|staircase|ctn|invariance|companion|"
                   "mds-diagonal|ut-explicit|ut-recursive|f1334")
      ->required();
  cons->add_option("--q", ca.q, "field size (prime power)");
  cons->add_option("--m", ca.m, "rows / extension degree");
  cons->add_option("--n", ca.n, "columns");
  cons->add_option("--delta", ca.delta, "rank distance");
  cons->add_option("--b", ca.b, "subfield degree (invariance)");
  cons->add_option("--i", ca.i, "companion power count");
  cons->add_option("--t", ca.t, "companion columns deleted");
  cons->add_option("--c", ca.c, "x^2 - d x - c coefficient (ut-explicit)");
  cons->add_option("--d", ca.d, "x^2 - d x - c coefficient (ut-explicit)");
  cons->add_option("--diagram", ca.diagram, "c1,...,cn[@m]");
  cons->add_option("--out", ca.out, "write the code file here");
  cons->add_flag("--no-verify", ca.no_verify, "skip verification");
  cons->add_option("--budget", ca.budget, "enumeration budget override");
  cons->callback([&] { rc = run_construct(ca); });

  // verify
  std::string vfile, vshape, vmode = "exact";
  unsigned vdelta = 0;
  std::uint64_t vbudget = 0;
  auto* ver = app.add_subcommand("verify", "verify a code file");
  ver->add_option("file", vfile, "code file")->required();
  ver->add_option("--shape", vshape, "override shape");
  ver->add_option("--delta", vdelta, "override delta");
  ver->add_option("--mode", vmode, "exact (default) or sampled[:trials:seed]");
  ver->add_option("--budget", vbudget, "enumeration budget override");
  ver->callback([&] { rc = run_verify(vfile, vshape, vdelta, vmode, vbudget); });

  // lift
  std::string lfile;
  auto* lift = app.add_subcommand("lift", "print lifted RREF generators");
  lift->add_option("file", lfile, "code file")->required();
  lift->callback([&] {
    RankMetricCode code = read_code_file(read_file(lfile));
    if (!code.shape) throw PreconditionError("no shape in file");
    const auto pivots = lift_pivots(*code.shape);
    std::cout << "pivots:";
    for (auto p : pivots) std::cout << " " << p;
    std::cout << "\n";
    unsigned idx = 0;
    for (const auto& g : lift_to_rref(code, *code.shape)) {
      std::cout << "lift " << idx++ << "\n";
      print_matrix(g, std::cout);
    }
  });

  // survey
  unsigned sm = 4, sn = 4, sdelta = 3;
  std::uint64_t sq = 2;
  std::string sout;
  auto* survey = app.add_subcommand("survey", "CSV over all m x n diagrams");
  survey->add_option("--m", sm, "rows")->required();
  survey->add_option("--n", sn, "columns")->required();
  survey->add_option("--delta", sdelta, "rank distance")->required();
  survey->add_option("--q", sq, "field size");
  survey->add_option("--out", sout, "CSV output file (default stdout)");
  survey->callback([&] { rc = run_survey(sm, sn, sdelta, sq, sout); });

  // count
  std::string what;
  unsigned cn = 1;
  std::uint64_t cq = 2;
  bool cexh = false;
  auto* cnt = app.add_subcommand("count", "exact matrix counts");
  cnt->add_option("what", what, "spectrum-free|gl")->required();
  cnt->add_option("--n", cn, "matrix size")->required();
  cnt->add_option("--q", cq, "field size");
  cnt->add_flag("--exhaustive", cexh, "brute-force instead of closed form");
  cnt->callback([&] {
    if (what == "spectrum-free")
      std::cout << (cexh ? mpz_class(count_spectrum_free_exhaustive(cn, cq))
                         : s_n_exact(cn, cq))
                << "\n";
    else if (what == "gl")
      std::cout << gamma_n(cn, cq) << "\n";
    else
      throw PreconditionError("unknown count: " + what);
  });

  // proportion
  std::string pkind, pdiagram;
  unsigned pm = 0, pn = 0, pdelta = 0, pthreads = 1;
  std::uint64_t pq = 2, ptrials = 1000000, pseed = 1, pbudget = 0;
  bool pexh = false, pexact = false;
  auto* prop = app.add_subcommand("proportion",
                                  "Monte-Carlo / exhaustive proportions");
  prop->add_option("kind", pkind, "mrd|generic")->required();
  prop->add_option("--m", pm, "rows");
  prop->add_option("--n", pn, "columns");
  prop->add_option("--delta", pdelta, "rank distance");
  prop->add_option("--q", pq, "field size");
  prop->add_option("--diagram", pdiagram, "c1,...,cn[@m] (generic)");
  prop->add_option("--trials", ptrials, "Monte-Carlo trials");
  prop->add_option("--seed", pseed, "PRNG seed");
  prop->add_option("--threads", pthreads, "worker threads");
  prop->add_flag("--exhaustive", pexh,
                 "enumerate the whole sample space (mrd; may take ~an hour)");
  prop->add_flag("--exact", pexact, "enumerate all tuples (generic)");
  prop->add_option("--budget", pbudget, "enumeration budget override");
  prop->callback([&] {
    if (pkind == "mrd") {
      auto r = mrd_proportion_normalized(pm, pn, pdelta, pq, ptrials, pseed,
                                         pthreads, pexh, pbudget);
      std::ostringstream params;
      params << pm << "x" << pn << " delta=" << pdelta << " q=" << pq;
      print_proportion_csv("mrd", params.str(), r);
    } else if (pkind == "generic") {
      const auto f = FerrersDiagram::parse(pdiagram);
      auto r = proportion_generic(f, pdelta, pq, ptrials, pseed, pthreads,
                                  pexact, pbudget);
      std::ostringstream params;
      params << f.to_string() << " delta=" << pdelta << " q=" << pq;
      print_proportion_csv("generic", params.str(), r);
    } else {
      throw PreconditionError("unknown proportion kind: " + pkind);
    }
  });

  // limits
  std::uint64_t lq = 2;
  unsigned lterms = 100, lrmax = 0, lthreads = 1;
  std::string ldiagram;
  unsigned ldelta = 0;
  std::uint64_t ltrials = 100000, lseed = 1;
  auto* lim = app.add_subcommand("limits", "asymptotic quantities");
  lim->add_option("--q", lq, "field size (base for --diagram scans)");
  lim->add_option("--terms", lterms, "product terms for pi(q)");
  lim->add_option("--diagram", ldiagram, "scan F_{q^r} proportions instead");
  lim->add_option("--delta", ldelta, "rank distance for the scan");
  lim->add_option("--r-max", lrmax, "largest extension degree r");
  lim->add_option("--trials", ltrials, "trials per field size");
  lim->add_option("--seed", lseed, "PRNG seed");
  lim->add_option("--threads", lthreads, "worker threads");
  lim->callback([&] {
    if (ldiagram.empty()) {
      std::cout << "pi(" << lq << ") ~ " << pi_q(lq, lterms) << " (" << lterms
                << " terms)\n";
      return;
    }
    const auto f = FerrersDiagram::parse(ldiagram);
    std::cout << "r,q,successes,trials,estimate,ci3sigma,seed\n";
    for (const auto& row :
         genericity_limit_scan(f, ldelta, lq, lrmax, ltrials, lseed, lthreads))
      std::cout << row.r << "," << row.q << "," << row.report.successes << ","
                << row.report.trials << "," << row.report.estimate << ","
                << row.report.ci3sigma << "," << row.report.seed << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const Inconclusive& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
