// q3d: bounds, coverage, exact solving and certificate checking for the
// 3D queen domination problem.
//
// Exit codes: 0 success / verified, 1 verification failure or refuted claim,
// 2 usage or parse error, 3 resource limit.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "q3d/q3d.hpp"

namespace {

using q3d::io::ordered_json;

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kLimit = 3 };

struct Globals {
  int dim = 3;
  int threads = 1;
  double time_limit = 0;  // 0 = unlimited
  std::string format = "human";
  std::string out;

  bool json() const { return format == "json"; }

  q3d::solver::Limits limits() const {
    q3d::solver::Limits l;
    l.threads = threads;
    if (time_limit > 0) l.time_limit_seconds = time_limit;
    return l;
  }
};

std::string cell_text(const q3d::Cell& c, int dim) { return q3d::to_string(c, dim); }

void emit(const Globals& g, const ordered_json& j, const std::string& human) {
  if (g.json())
    std::cout << j.dump(2) << '\n';
  else
    std::cout << human;
}

q3d::Cell parse_cell(const std::string& text, int dim) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw q3d::ParseError("--cell", "'" + text + "' is not a comma-separated list of integers");
    }
  }
  if (static_cast<int>(v.size()) != dim)
    throw q3d::ParseError("--cell", "expected " + std::to_string(dim) + " coordinates in '" + text + "'");
  return {v[0], v[1], dim == 3 ? v[2] : 0};
}

// "x,y,z;x,y,z" or whitespace separated triples.
q3d::Placement parse_cells(const std::string& text, int dim) {
  std::vector<q3d::Cell> cells;
  std::string norm = text;
  for (auto& ch : norm)
    if (ch == ';') ch = ' ';
  std::stringstream ss(norm);
  std::string tok;
  while (ss >> tok) cells.push_back(parse_cell(tok, dim));
  return q3d::Placement(std::move(cells));
}

std::string placement_text(const q3d::Placement& p, int dim) { return q3d::to_string(p, dim); }

// --- bounds ---------------------------------------------------------------

int cmd_bounds(const Globals& g, int n, const std::string& cache_path) {
  q3d::bounds::Gamma2Cache cache;
  if (!cache_path.empty()) cache = q3d::bounds::Gamma2Cache::load(cache_path);
  const auto r = q3d::bounds::bounds_report(n, g.limits(), &cache);
  if (!cache_path.empty()) cache.save(cache_path);

  ordered_json j;
  j["n"] = r.n;
  j["volume_lb"] = r.volume_lb;
  j["projection_lb"] = r.projection_lb;
  j["lifting_ub"] = r.lifting_ub;
  j["best_lb"] = r.best_lb;
  j["best_ub"] = r.best_ub;
  j["gamma2_source"] = q3d::bounds::to_string(r.gamma2_source);

  std::ostringstream h;
  const double n2 = static_cast<double>(n) * n;
  h << "n = " << n << "\n"
    << "  volume bound      ceil(n^3/(13n-12)) = " << r.volume_lb << "\n"
    << "  projection bound  gamma(Q^2_n)       = " << r.projection_lb << " ("
    << q3d::bounds::to_string(r.gamma2_source) << ")\n"
    << "  lifting bound     n*gamma(Q^2_n)     = " << r.lifting_ub << "\n"
    << "  " << r.best_lb << " <= gamma(Q^3_" << n << ") <= " << r.best_ub << "\n"
    << "  normalised by n^2: " << r.best_lb / n2 << " .. " << r.best_ub / n2
    << "  (asymptotic constants 1/13 ~ 0.077 and 69/133 ~ 0.519)\n";
  emit(g, j, h.str());
  return r.gamma2_source == q3d::bounds::Gamma2Source::Unresolved ? kLimit : kOk;
}

// --- coverage -------------------------------------------------------------

int cmd_coverage(const Globals& g, int n, const std::string& cell, bool strata) {
  const auto spec = q3d::BoardSpec::cube(n);
  namespace cov = q3d::coverage;
  if (!cell.empty()) {
    const auto q = parse_cell(cell, 3);
    spec.require(q);
    const auto rep = cov::kappa_exact(spec, q);
    const auto formula = cov::kappa_formula(spec, q);
    ordered_json j;
    j["n"] = n;
    j["cell"] = q3d::io::cell_json(q, 3);
    j["type"] = cov::to_string(rep.ptype);
    j["kappa"] = rep.kappa;
    j["formula"] = formula.value;
    j["formula_is_bound"] = formula.is_bound;
    auto& dirs = j["per_direction"] = ordered_json::array();
    for (const auto& [d, c] : rep.per_direction) {
      ordered_json e;
      e["direction"] = ordered_json::array({d.delta[0], d.delta[1], d.delta[2]});
      e["core_cells"] = c;
      dirs.push_back(e);
    }
    std::ostringstream h;
    h << "cell " << cell_text(q, 3) << " on n=" << n << ": " << cov::to_string(rep.ptype) << "\n"
      << "  kappa = " << rep.kappa << "\n"
      << "  closed form " << (formula.is_bound ? "(upper bound) " : "") << "= " << formula.value << "\n";
    for (const auto& [d, c] : rep.per_direction)
      if (c > 0) h << "    " << q3d::to_string(d) << ": " << c << "\n";
    emit(g, j, h.str());
    return kOk;
  }
  (void)strata;  // strata is the default view
  const auto s = cov::strata_summary(spec);
  ordered_json j;
  j["n"] = n;
  j["m"] = s.m;
  auto& arr = j["strata"] = ordered_json::array();
  std::ostringstream h;
  h << "n = " << n << ", m = " << s.m << ", core = " << s.m * s.m * s.m << " cells\n";
  for (auto t : cov::kAllTypes) {
    const auto& st = s.of(t);
    ordered_json e;
    e["type"] = cov::to_string(t);
    e["max_kappa"] = st.max_kappa;
    e["argmax"] = q3d::io::placement_json(q3d::Placement(st.argmax), 3);
    arr.push_back(e);
    h << "  " << cov::to_string(t) << ": max kappa " << st.max_kappa << " at " << st.argmax.size() << " cell(s)";
    if (st.argmax.size() <= 4) h << " " << placement_text(q3d::Placement(st.argmax), 3);
    h << "\n";
  }
  j["chain_holds"] = s.chain_holds;
  j["separation_holds"] = s.separation_holds;
  h << "  " << s.of(cov::PositionType::Corner).max_kappa << " < " << s.of(cov::PositionType::Edge).max_kappa << " < "
    << s.of(cov::PositionType::Face).max_kappa << " < " << s.of(cov::PositionType::Interior).max_kappa
    << (s.separation_holds && s.chain_holds ? "  (separation holds)" : "  (SEPARATION FAILS)") << "\n";
  emit(g, j, h.str());
  return s.chain_holds && s.separation_holds ? kOk : kFailed;
}

// --- solve / certify ------------------------------------------------------

ordered_json result_json(const q3d::solver::SolveResult& r, int dim, int n) {
  ordered_json j;
  j["dim"] = dim;
  j["n"] = n;
  j["status"] = q3d::solver::to_string(r.status);
  j["value"] = r.value;
  j["lower_bound"] = r.lower_bound;
  j["witness"] = q3d::io::placement_json(r.witness, dim);
  j["nodes"] = r.nodes_explored;
  return j;
}

void write_solution(const std::string& path, const q3d::BoardSpec& spec, const q3d::Placement& p,
                    const std::optional<std::string>& status) {
  q3d::io::SolutionFile f;
  f.dim = spec.dim();
  f.n = spec.n();
  f.queens = p;
  f.claims.size = static_cast<int>(p.size());
  f.claims.dominating = true;
  f.claims.status = status;
  q3d::io::write_file(path, q3d::io::dump(q3d::io::to_json(f)));
}

int cmd_solve(const Globals& g, int n, bool no_symmetry, std::string cert_path) {
  const q3d::BoardSpec spec(g.dim, n);
  const auto r = q3d::solver::solve_exact(spec, g.limits(), {.use_symmetry = !no_symmetry});
  if (!q3d::verify::is_dominating(spec, r.witness).ok) {
    std::cerr << "internal error: solver witness failed independent verification\n";
    return kFailed;
  }
  if (!g.out.empty()) write_solution(g.out, spec, r.witness, q3d::solver::to_string(r.status));
  if (r.certificate) {
    if (cert_path.empty()) cert_path = "q3d-n" + std::to_string(n) + (g.dim == 2 ? "-2d" : "") + "-certificate.json";
    q3d::io::write_file(cert_path, q3d::io::dump(q3d::io::to_json(*r.certificate)));
  }
  auto j = result_json(r, g.dim, n);
  if (r.certificate) j["certificate"] = cert_path;
  std::ostringstream h;
  h << "gamma(Q^" << g.dim << "_" << n << ") ";
  if (r.status == q3d::solver::SolveStatus::Optimal)
    h << "= " << r.value << " (optimal)\n";
  else
    h << "in [" << r.lower_bound << ", " << r.value << "] (" << q3d::solver::to_string(r.status) << ")\n";
  h << "  witness " << placement_text(r.witness, g.dim) << "\n"
    << "  " << r.nodes_explored << " nodes, " << r.wall_time.count() << " s\n";
  if (r.certificate)
    h << "  certificate: " << r.certificate->subproblems.size() << " first-queen subproblems at budget "
      << r.certificate->budget << " all infeasible -> " << cert_path << "\n";
  emit(g, j, h.str());
  return r.status == q3d::solver::SolveStatus::Optimal ? kOk : kLimit;
}

int cmd_certify(const Globals& g, int n, int k, bool no_symmetry, std::string cert_path) {
  if (k < 1) throw q3d::InvalidArgument("--k must be >= 1");
  const q3d::BoardSpec spec(g.dim, n);
  const auto adj = q3d::build_adjacency(spec);
  const auto limits = g.limits();
  const bool sym = !no_symmetry;

  // A witness of size <= k first, then the budget k-1 partition.
  const auto up = q3d::solver::certify_infeasible(*adj, k, limits, sym);
  if (up.status == q3d::solver::CertifyStatus::Limit) {
    std::cerr << "limit reached while looking for a " << k << "-queen placement\n";
    return kLimit;
  }
  if (up.status == q3d::solver::CertifyStatus::Infeasible) {
    std::cerr << "no dominating set of size " << k << " exists; gamma > " << k << "\n";
    return kFailed;
  }
  auto witness = *up.witness;
  const auto down = q3d::solver::certify_infeasible(*adj, k - 1, limits, sym);
  if (down.status == q3d::solver::CertifyStatus::Limit) {
    std::cerr << "limit reached while certifying budget " << k - 1 << "\n";
    return kLimit;
  }
  if (down.status == q3d::solver::CertifyStatus::Feasible) {
    std::cerr << "claim refuted: " << placement_text(*down.witness, g.dim) << " dominates with "
              << down.witness->size() << " queens\n";
    return kFailed;
  }
  if (static_cast<int>(witness.size()) != k) {
    // A smaller set was found at budget k but budget k-1 is infeasible: impossible.
    std::cerr << "internal error: inconsistent witness size\n";
    return kFailed;
  }
  q3d::OptimalityCertificate cert;
  cert.dim = spec.dim();
  cert.n = n;
  cert.k = k;
  cert.witness = witness;
  cert.budget = k - 1;
  cert.symmetry_used = down.symmetry_used;
  cert.subproblems = down.subproblems;
  const auto check = q3d::verify::explain_certificate(cert, spec);
  if (!check.ok) {
    std::cerr << "internal error: certificate rejected: " << check.reason << "\n";
    return kFailed;
  }
  if (cert_path.empty()) cert_path = !g.out.empty() ? g.out : "q3d-n" + std::to_string(n) + "-certificate.json";
  const auto text = q3d::io::dump(q3d::io::to_json(cert));
  q3d::io::write_file(cert_path, text);
  ordered_json j = q3d::io::to_json(cert);
  std::ostringstream h;
  h << "gamma(Q^" << g.dim << "_" << n << ") = " << k << " certified\n"
    << "  witness " << placement_text(witness, g.dim) << "\n"
    << "  " << cert.subproblems.size() << " subproblems at budget " << k - 1 << ", all infeasible ("
    << down.nodes << " nodes)\n"
    << "  written to " << cert_path << "\n";
  emit(g, j, h.str());
  return kOk;
}

// --- verify ---------------------------------------------------------------

int report_outcome(const Globals& g, const q3d::BoardSpec& spec, const q3d::Placement& p,
                   const q3d::verify::VerificationOutcome& o, std::optional<std::string> refuted) {
  ordered_json j;
  j["ok"] = o.ok && !refuted;
  j["dominating"] = o.ok;
  j["size"] = p.size();
  j["checked_cells"] = o.checked_cells;
  if (o.first_uncovered) j["first_uncovered"] = q3d::io::cell_json(*o.first_uncovered, spec.dim());
  if (refuted) j["refuted_claim"] = *refuted;
  std::ostringstream h;
  if (o.ok)
    h << "ok: " << p.size() << " queens dominate all " << spec.cell_count() << " cells of the n=" << spec.n()
      << " board\n";
  else
    h << "FAIL: " << cell_text(*o.first_uncovered, spec.dim()) << " is not dominated (" << o.checked_cells
      << " cells checked)\n";
  if (refuted) h << "FAIL: claim refuted: " << *refuted << "\n";
  emit(g, j, h.str());
  return o.ok && !refuted ? kOk : kFailed;
}

int verify_certificate(const Globals& g, const q3d::BoardSpec& spec, const q3d::OptimalityCertificate& cert) {
  const auto check = q3d::verify::explain_certificate(cert, spec);
  ordered_json j;
  j["ok"] = check.ok;
  j["n"] = cert.n;
  j["k"] = cert.k;
  if (!check.ok) j["reason"] = check.reason;
  std::ostringstream h;
  if (check.ok)
    h << "ok: certificate proves gamma(Q^" << spec.dim() << "_" << spec.n() << ") = " << cert.k << " ("
      << cert.subproblems.size() << " infeasible subproblems)\n";
  else
    h << "FAIL: " << check.reason << "\n";
  emit(g, j, h.str());
  return check.ok ? kOk : kFailed;
}

int cmd_verify(const Globals& g, int n, const std::string& file, const std::string& cells) {
  if (file.empty() == cells.empty()) throw q3d::ParseError("verify", "give exactly one of --file or --cells");
  if (!cells.empty()) {
    const q3d::BoardSpec spec(g.dim, n);
    const auto p = parse_cells(cells, g.dim);
    for (const auto& c : p)
      if (!spec.contains(c)) throw q3d::ParseError("--cells", cell_text(c, g.dim) + " is off the board");
    return report_outcome(g, spec, p, q3d::verify::is_dominating(spec, p), std::nullopt);
  }
  const auto text = q3d::io::read_file(file);
  const auto fmt = q3d::io::sniff_format(text);
  if (fmt == q3d::io::kCertificateFormat) {
    const auto cert = q3d::io::parse_certificate(text);
    if (cert.n != n || cert.dim != g.dim) throw q3d::ParseError(file, "certificate is for a different board");
    return verify_certificate(g, q3d::BoardSpec(cert.dim, cert.n), cert);
  }
  const auto sol = q3d::io::parse_solution(text);
  if (sol.n != n || sol.dim != g.dim) throw q3d::ParseError(file, "solution is for a different board");
  const auto spec = sol.spec();
  const auto o = q3d::verify::is_dominating(spec, sol.queens);
  std::optional<std::string> refuted;
  if (sol.claims.size && *sol.claims.size != static_cast<int>(sol.queens.size()))
    refuted = "size " + std::to_string(*sol.claims.size) + " but file lists " + std::to_string(sol.queens.size());
  else if (sol.claims.dominating && *sol.claims.dominating != o.ok)
    refuted = std::string("dominating = ") + (*sol.claims.dominating ? "true" : "false");
  return report_outcome(g, spec, sol.queens, o, refuted);
}

// --- export / import ------------------------------------------------------

int cmd_export(const Globals& g, int n, bool symmetry, int budget) {
  const q3d::BoardSpec spec(g.dim, n);
  q3d::ilp::ExportOptions opt;
  opt.symmetry = symmetry;
  if (budget >= 0) opt.budget = budget;
  const auto text = q3d::ilp::export_lp(spec, opt);
  if (g.out.empty())
    std::cout << text;
  else
    q3d::io::write_file(g.out, text);
  return kOk;
}

int cmd_import(const Globals& g, int n, const std::string& file) {
  const q3d::BoardSpec spec(g.dim, n);
  const auto text = q3d::io::read_file(file);
  q3d::Placement p;
  if (q3d::io::sniff_format(text) == q3d::io::kSolutionFormat) {
    const auto sol = q3d::io::parse_solution(text);
    if (sol.n != n || sol.dim != g.dim) throw q3d::ParseError(file, "solution is for a different board");
    p = sol.queens;
  } else {
    p = q3d::ilp::import_solution(spec, q3d::ilp::parse_assignment_text(text));
  }
  const auto o = q3d::verify::is_dominating(spec, p);
  if (!g.out.empty()) {
    q3d::io::SolutionFile f;
    f.dim = g.dim;
    f.n = n;
    f.queens = p;
    f.claims.size = static_cast<int>(p.size());
    f.claims.dominating = o.ok;
    q3d::io::write_file(g.out, q3d::io::dump(q3d::io::to_json(f)));
  }
  return report_outcome(g, spec, p, o, std::nullopt);
}

// --- table ----------------------------------------------------------------

int cmd_table(const Globals& g, int max_n) {
  if (max_n < 1 || max_n > 7) throw q3d::InvalidArgument("--max-n must be in [1, 7]");
  ordered_json rows = ordered_json::array();
  std::ostringstream h;
  h << " n  gamma   status  check  placement\n";
  bool all_ok = true;
  bool limited = false;
  for (int n = 1; n <= max_n; ++n) {
    const auto known = *q3d::table::known(n);
    const auto spec = q3d::BoardSpec::cube(n);
    q3d::solver::SolveResult r;
    if (n <= 6) {
      r = q3d::solver::solve_exact(spec, g.limits());
    } else {
      auto lim = g.limits();
      if (!lim.time_limit_seconds) lim.time_limit_seconds = 10.0;
      r = q3d::table::attempt_n7(lim);
    }
    const bool optimal = r.status == q3d::solver::SolveStatus::Optimal;
    const bool cert_ok = r.certificate && q3d::verify::check_certificate(*r.certificate, spec);
    const bool witness_ok = q3d::verify::is_dominating(spec, r.witness).ok;
    bool ok;
    if (known.exact())
      ok = optimal && cert_ok && witness_ok && r.value == known.lower;
    else  // open row: consistent with the published interval
      ok = witness_ok && r.value <= known.upper && r.lower_bound <= known.lower;
    all_ok = all_ok && ok;
    limited = limited || (!optimal && known.exact());
    ordered_json row;
    row["n"] = n;
    row["status"] = optimal ? "exact" : "open";
    row["lower"] = optimal ? r.value : r.lower_bound;
    row["upper"] = r.value;
    row["expected_lower"] = known.lower;
    row["expected_upper"] = known.upper;
    row["matches"] = ok;
    row["witness"] = q3d::io::placement_json(r.witness, 3);
    rows.push_back(row);
    char buf[64];
    if (optimal)
      std::snprintf(buf, sizeof buf, "%2d  %5d  %7s  %5s  ", n, r.value, "Exact", ok ? "yes" : "NO");
    else
      std::snprintf(buf, sizeof buf, "%2d  %2d-%-2d  %7s  %5s  ", n, r.lower_bound, r.value, "Open", ok ? "yes" : "NO");
    h << buf << placement_text(r.witness, 3) << "\n";
  }
  ordered_json j;
  j["rows"] = rows;
  emit(g, j, h.str());
  if (!all_ok) return limited ? kLimit : kFailed;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Domination number of the n x n x n queen graph"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--dim", g.dim, "board dimension")->check(CLI::IsMember({2, 3}));
  app.add_option("--threads", g.threads, "worker threads for the solver")->check(CLI::PositiveNumber);
  app.add_option("--time-limit", g.time_limit, "wall-clock limit in seconds (0 = none)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--out", g.out, "output file");

  int n = 0;
  auto add_n = [&n](CLI::App* sub) { sub->add_option("n", n, "board side")->required()->check(CLI::PositiveNumber); };

  auto* bounds = app.add_subcommand("bounds", "volume / projection / lifting bounds");
  std::string cache_path;
  add_n(bounds);
  bounds->add_option("--cache", cache_path, "q2d-cache-v1 file of solved 2D values");

  auto* coverage = app.add_subcommand("coverage", "inner-core coverage by position type");
  std::string cell;
  bool strata = false;
  add_n(coverage);
  coverage->add_option("--cell", cell, "x,y,z");
  coverage->add_flag("--strata", strata, "per-type maxima (default)");

  auto* solve = app.add_subcommand("solve", "exact domination number with certificate");
  bool no_symmetry = false;
  std::string cert_path;
  add_n(solve);
  solve->add_flag("--no-symmetry", no_symmetry, "try every first-queen cell");
  solve->add_option("--certificate", cert_path, "certificate output path");

  auto* verify = app.add_subcommand("verify", "independently check a placement or certificate");
  std::string file, cells;
  add_n(verify);
  verify->add_option("--file", file, "q3d-solution-v1 or q3d-certificate-v1 file");
  verify->add_option("--cells", cells, "x,y,z;x,y,z;...");

  auto* certify = app.add_subcommand("certify", "prove gamma = k");
  int k = 0;
  add_n(certify);
  certify->add_option("--k", k, "claimed domination number")->required();
  certify->add_flag("--no-symmetry", no_symmetry, "try every first-queen cell");
  certify->add_option("--certificate", cert_path, "certificate output path");

  auto* export_lp = app.add_subcommand("export-lp", "write the domination ILP in LP format");
  bool symmetry = false;
  int budget = -1;
  add_n(export_lp);
  export_lp->add_flag("--symmetry", symmetry, "add symmetry-breaking rows");
  export_lp->add_option("--budget", budget, "add sum x <= budget")->check(CLI::NonNegativeNumber);

  auto* import = app.add_subcommand("import-solution", "read an external solver's assignment and verify it");
  add_n(import);
  import->add_option("--file", file, "`name value` lines or a q3d-solution-v1 file")->required();

  auto* table = app.add_subcommand("table", "recompute the table of known values");
  int max_n = 6;
  table->add_option("--max-n", max_n, "largest n (7 runs a budgeted attempt)");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*bounds) return cmd_bounds(g, n, cache_path);
    if (*coverage) return cmd_coverage(g, n, cell, strata);
    if (*solve) return cmd_solve(g, n, no_symmetry, cert_path);
    if (*verify) return cmd_verify(g, n, file, cells);
    if (*certify) return cmd_certify(g, n, k, no_symmetry, cert_path);
    if (*export_lp) return cmd_export(g, n, symmetry, budget);
    if (*import) return cmd_import(g, n, file);
    if (*table) return cmd_table(g, max_n);
  } catch (const q3d::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const q3d::UnsupportedBoard& e) {
    std::cerr << "unsupported board: " << e.what() << "\n";
    return kUsage;
  } catch (const q3d::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const q3d::ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kLimit;
  }
  return kUsage;
}
