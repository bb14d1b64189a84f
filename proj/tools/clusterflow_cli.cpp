// clusterflow: command-line front end.
//
//   clusterflow mutate    --matrix somos4 --word 1,2
//   clusterflow mutate    --matrix a2 --word 1 --poisson p.json
//   clusterflow mutate    --matrix lv --window -9..9 --word bar0
//   clusterflow somos     --n 10
//   clusterflow verify    --suite all
//   clusterflow poisson   --matrix somos4 --solve
//   clusterflow poisson   --lv-periodic 3 --solve
//   clusterflow poisson   --matrix liouville-even --m 3 --cx 1
//   clusterflow lv        --depth 4 --delta 1
//   clusterflow tau       --delta 1/2 --window -4..4 --depth 6
//   clusterflow liouville --N 5 --depth 4
//
// Exit codes: 0 success, 1 a verification failed or an incompatible bracket,
// 2 bad input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "clusterflow/dynamics.hpp"
#include "clusterflow/left_inverse.hpp"
#include "clusterflow/lv_poisson.hpp"
#include "clusterflow/poisson.hpp"
#include "clusterflow/seed.hpp"
#include "clusterflow/serialize.hpp"
#include "clusterflow/verify.hpp"

using namespace clusterflow;

namespace {

struct BadInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string matrix;
  std::string word;
  std::string window;
  std::string suite = "all";
  std::string semifield = "universal";
  std::string delta, cx, cy;
  std::string poisson;
  std::string out;
  std::string format = "json";
  int depth = -1;
  int n_terms = 10;
  int N = 0;
  int m = 0;
  int lv_periodic = 0;
  bool solve = false;
};

struct Output {
  json body;
  std::string csv;  // used when format is csv and non-empty
  bool failed = false;
};

std::pair<int, int> parse_window(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw BadInput("window must look like LO..HI: " + s);
  try {
    const int lo = std::stoi(s.substr(0, dots)), hi = std::stoi(s.substr(dots + 2));
    if (hi < lo) throw BadInput("empty window " + s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw BadInput("window must look like LO..HI: " + s);
  }
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw BadInput("not an integer: " + s);
  return v;
}

Rat rational(const std::string& s, const std::string& flag) {
  try {
    return parse_rat(s);
  } catch (const std::invalid_argument&) {
    throw BadInput(flag + " must be an exact rational p/q, got '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

bool is_periodic_name(const std::string& name) { return name == "lv" || name == "alt-chain"; }

PeriodicBandedMatrix periodic_matrix(const std::string& name) {
  return name == "lv" ? lv_matrix() : alternating_chain_matrix();
}

ExchangeMatrix finite_matrix(const RunConfig& c) {
  if (c.matrix == "a2") return a2_matrix();
  if (c.matrix == "somos4") return somos4_matrix();
  if (c.matrix == "liouville-even") {
    if (c.m < 2) throw BadInput("liouville-even needs --m >= 2");
    return liouville_even_matrix(c.m);
  }
  if (c.matrix == "liouville-odd") {
    if (c.m < 1) throw BadInput("liouville-odd needs --m >= 1");
    return liouville_odd_matrix(c.m);
  }
  if (is_periodic_name(c.matrix)) throw BadInput(c.matrix + " is periodic; give --window LO..HI");
  std::ifstream in(c.matrix);
  if (!in) throw BadInput("unknown matrix '" + c.matrix + "' (not a named matrix or a readable JSON file)");
  try {
    return matrix_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw BadInput(std::string("cannot read matrix file: ") + e.what());
  }
}

// Letters: an index, indices joined by '+', "even", "odd", or "bar<r>" for
// the residue class r of a periodic matrix.
MutationWord parse_word(const std::string& text, int lo, int hi, int period) {
  MutationWord w;
  for (const auto& letter : split(text, ',')) {
    std::vector<int> set;
    if (letter.rfind("bar", 0) == 0) {
      if (period <= 0) throw BadInput("bar letters need a periodic matrix");
      const int r = ((parse_int(letter.substr(3)) % period) + period) % period;
      for (int i = lo; i <= hi; ++i)
        if (((i - r) % period + period) % period == 0) set.push_back(i);
    } else if (letter == "even" || letter == "odd") {
      for (int i = lo; i <= hi; ++i)
        if ((((i % 2) + 2) % 2 == 0) == (letter == "even")) set.push_back(i);
    } else {
      for (const auto& idx : split(letter, '+')) {
        const int k = parse_int(idx);
        if (k < lo || k > hi) throw BadInput("mutation index " + idx + " outside " + std::to_string(lo) + ".." +
                                             std::to_string(hi));
        set.push_back(k);
      }
    }
    w.push_back(std::move(set));
  }
  return w;
}

// ---------------------------------------------------------------------------

Output cmd_mutate(const RunConfig& c) {
  Output o;
  if (is_periodic_name(c.matrix)) {
    if (c.window.empty()) throw BadInput(c.matrix + " is periodic; give --window LO..HI");
    const auto [lo, hi] = parse_window(c.window);
    PeriodicBandedMatrix exact = periodic_matrix(c.matrix);
    const int p = exact.period();
    ExchangeMatrix window = exact.materialize(lo, hi);
    json letters = json::array();
    int steps = 0;
    for (const auto& letter : split(c.word, ',')) {
      if (letter.rfind("bar", 0) != 0) throw BadInput("periodic matrices mutate by classes: use bar<r>");
      const int r = ((parse_int(letter.substr(3)) % p) + p) % p;
      // Class members whose band lies inside the trusted range.
      const int margin = exact.band() * steps;
      for (int k = lo + margin; k <= hi - margin; ++k)
        if (exact.residue(k) == r) window = mutate_matrix(window, k);
      exact = exact.mutate_class(r);
      letters.push_back(r);
      ++steps;
    }
    const int margin = exact.band() * steps;
    bool agrees = true;
    for (int i = lo + margin; i <= hi - margin; ++i)
      for (int j = lo + margin; j <= hi - margin; ++j) agrees = agrees && window(i, j) == exact(i, j);
    json shift = nullptr;
    const PeriodicBandedMatrix original = periodic_matrix(c.matrix);
    for (int s = 0; s < p; ++s)
      if (original.shifted(s) == exact) {
        shift = s;
        break;
      }
    o.body = {{"matrix", c.matrix},
              {"classes", letters},
              {"window", {{"lo", lo}, {"hi", hi}}},
              {"b", to_json(window)},
              {"rule", to_json(exact)},
              {"safe_interior", {{"lo", lo + margin}, {"hi", hi - margin}}},
              {"interior_agrees", agrees},
              {"shift_of_initial", shift}};
    o.failed = !agrees;
    return o;
  }
  const ExchangeMatrix b = finite_matrix(c);
  SemifieldTag tag;
  try {
    tag = parse_semifield(c.semifield);
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
  const Seed s0 = initial_seed(b, tag);
  const MutationWord word = parse_word(c.word, b.lo(), b.hi(), 0);
  const Seed s = apply_word(s0, word);
  o.body = to_json(s);
  o.body["word"] = c.word;
  if (!c.poisson.empty()) {
    std::ifstream in(c.poisson);
    if (!in) throw BadInput("cannot read Poisson file '" + c.poisson + "'");
    PoissonMatrix p;
    try {
      p = poisson_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw BadInput(std::string("cannot read Poisson file: ") + e.what());
    }
    if (p.lo() != b.lo() || p.size() != b.size()) throw BadInput("Poisson matrix and B have different index ranges");
    ExchangeMatrix cur = b;
    for (const auto& letter : word)
      for (int k : letter) {
        p = mutate_poisson(p, cur, k);
        cur = mutate_matrix(cur, k);
      }
    o.body["poisson"] = to_json(p);
  }
  o.failed = !s.diagnostics.empty();
  return o;
}

Output cmd_somos(const RunConfig& c) {
  if (c.n_terms < 0) throw BadInput("--n must be nonnegative");
  Output o;
  const std::vector<Rat> terms = somos4_sequence(c.n_terms);
  std::ostringstream csv;
  csv << "n,s_n\n";
  json arr = json::array();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    csv << i + 1 << ',' << to_string(terms[i]) << '\n';
    arr.push_back(to_string(terms[i]));
  }
  o.body = {{"terms", arr}};
  o.csv = csv.str();
  return o;
}

Output cmd_verify(const RunConfig& c) {
  VerifyOptions opt;
  if (c.depth >= 0) opt.lv_depth = c.depth;
  if (!c.cx.empty()) opt.cx = rational(c.cx, "--cx");
  if (!c.cy.empty()) opt.cy = rational(c.cy, "--cy");
  std::vector<std::string> names = c.suite == "all" ? suite_names() : split(c.suite, ',');
  Output o;
  json reports = json::array();
  std::string csv;
  for (const auto& name : names) {
    Report r;
    try {
      r = run_suite(name, opt);
    } catch (const std::invalid_argument& e) {
      if (std::string(e.what()).rfind("unknown suite", 0) == 0) throw BadInput(e.what());
      throw;
    }
    o.failed = o.failed || !r.ok();
    reports.push_back(to_json(r));
    const std::string part = to_csv(r);
    csv += csv.empty() ? part : part.substr(part.find('\n') + 1);
  }
  o.body = {{"status", o.failed ? "fail" : "pass"}, {"suites", reports}};
  o.csv = csv;
  return o;
}

json kernel_json(const std::vector<KernelElement>& kernel) {
  json basis = json::array();
  for (const auto& e : kernel) basis.push_back({{"P", to_json(e.p)}, {"c", to_string(e.c)}});
  return basis;
}

Output cmd_poisson(const RunConfig& c) {
  Output o;
  if (c.lv_periodic != 0) {
    if (c.lv_periodic < 3) throw BadInput("--lv-periodic needs m >= 3");
    const int m = c.lv_periodic;
    const ExchangeMatrix b = lv_periodic_matrix(m);
    const auto kernel = skew_kernel(b);
    int dim = 0;
    for (const auto& e : kernel) dim += e.c == 0 ? 1 : 0;
    o.body = {{"m", m},
              {"dimension", dim},
              {"constant_ab_dimension", lv_periodic_constant_ab_count(m)},
              {"symmetric_dimension", lv_periodic_symmetric_count(m)}};
    if (c.solve) o.body["basis"] = kernel_json(kernel);
    return o;
  }
  if (c.matrix.empty()) throw BadInput("poisson needs --matrix or --lv-periodic");
  if (is_periodic_name(c.matrix)) {
    const LeftInverseResult r = left_inverse_periodic(periodic_matrix(c.matrix));
    o.body = {{"matrix", c.matrix}, {"left_inverse", to_string(r.status)}, {"det", to_json(r.det)}};
    if (r.status == LeftInverseStatus::none) {
      json cert = json::object();
      for (const auto& [j, v] : r.certificate) cert[std::to_string(j)] = to_string(v);
      o.body["kernel_vector"] = cert;
    } else if (r.status == LeftInverseStatus::exists) {
      const auto [lo, hi] = c.window.empty() ? std::pair<int, int>{-3, 3} : parse_window(c.window);
      json rows = json::array();
      for (int i = lo; i <= hi; ++i) {
        json row = json::array();
        for (int j = lo; j <= hi; ++j) row.push_back(to_string(r.m(i, j)));
        rows.push_back(row);
      }
      o.body["M"] = {{"lo", lo}, {"rows", rows}};
      o.body["mu_directions"] = r.mu_basis.size();
    }
    return o;
  }
  const ExchangeMatrix b = finite_matrix(c);
  const auto d = find_symmetrizer(b);
  o.body = {{"matrix", to_json(b)}, {"d", *d}};
  const auto inv = to_qmatrix(b).inverse();
  o.body["invertible"] = inv.has_value();
  if (c.solve || !inv) {
    const auto kernel = skew_kernel(b);
    o.body["kernel_dimension"] = kernel.size();
    o.body["basis"] = kernel_json(kernel);
  }
  if (!c.cx.empty() || !c.cy.empty()) {
    const Rat cx = c.cx.empty() ? Rat(0) : rational(c.cx, "--cx");
    const Rat cy = c.cy.empty() ? Rat(0) : rational(c.cy, "--cy");
    if (!inv && cx != 0) throw BadInput("B is singular: PB = cD forces --cx 0");
    const ExtendedPoisson e = assemble_extended(b, cx, cy);
    o.body["P"] = to_json(e.px);
    o.body["PB"] = to_json(pb_product(e.px, b));
    if (cy != 0) {
      o.body["Pxy"] = to_json(e.pxy);
      o.body["Py"] = to_json(e.py);
      if (cx + cy != 0) {
        const TwoForm w = two_form(b, *d, e.px, cx, cy);
        const bool ok = e.assembled() * w.w == w.d * QMatrix::identity(2 * b.size());
        o.body["two_form"] = {{"W", to_json(w.w)}, {"d", to_string(w.d)}, {"PW_is_dI", ok}};
        o.failed = !ok;
      }
    }
  }
  return o;
}

json relations_json(const std::vector<RelationResult>& rs, bool& failed) {
  int zero = 0;
  json bad = json::array();
  for (const auto& r : rs) {
    if (r.residual_zero) {
      ++zero;
    } else {
      bad.push_back({{"u", r.u}, {"i", r.i}});
    }
  }
  failed = failed || zero != static_cast<int>(rs.size());
  json j = {{"points", rs.size()}, {"zero", zero}};
  if (!bad.empty()) j["nonzero"] = bad;
  return j;
}

Output cmd_lv(const RunConfig& c) {
  LVOptions opt;
  opt.depth = c.depth >= 0 ? c.depth : 3;
  if (!c.window.empty()) {
    const auto [lo, hi] = parse_window(c.window);
    if (lo != -hi) throw BadInput("LV windows are block ranges -L..L");
    opt.blocks = hi;
  }
  if (!c.delta.empty()) {
    opt.delta = rational(c.delta, "--delta");
  } else {
    try {
      opt.tag = parse_semifield(c.semifield);
    } catch (const std::invalid_argument& e) {
      throw BadInput(e.what());
    }
  }
  LVState s = lv_run(opt);
  Output o;
  o.body = {{"depth", opt.depth},
            {"window", {{"lo", s.lo}, {"hi", s.hi}}},
            {"semifield", opt.delta ? "constant" : to_string(opt.tag)},
            {"rule", to_json(s.matrix)}};
  o.body["x_rel"] = relations_json(check_lv_relation(s, LVRelation::x_rel), o.failed);
  if (opt.tag != SemifieldTag::trivial) {
    o.body["y_rel"] = relations_json(check_lv_relation(s, LVRelation::y_rel), o.failed);
    if (opt.tag == SemifieldTag::universal)
      o.body["yhat_rel"] = relations_json(check_lv_relation(s, LVRelation::yhat_rel), o.failed);
  }
  if (opt.delta) {
    const SymbolicTauLattice lat = tau_run(RatFunc(*opt.delta), lv_tau_initial(s.lo, s.hi), opt.depth);
    o.body["u_rel"] = relations_json(check_u_relation(lat, *s.pool), o.failed);
    const IdentifyReport id = identify_lv(s, lat);
    o.body["identify"] = {{"x_sites", id.x_sites},
                          {"x_matches", id.x_matches},
                          {"yhat_sites", id.yhat_sites},
                          {"yhat_matches", id.yhat_matches}};
    o.failed = o.failed || !id.ok();
  }
  return o;
}

Output cmd_tau(const RunConfig& c) {
  const Rat delta = c.delta.empty() ? Rat(1) : rational(c.delta, "--delta");
  const auto [lo, hi] = c.window.empty() ? std::pair<int, int>{-4, 4} : parse_window(c.window);
  const int steps = c.depth >= 0 ? c.depth : 4;
  // tau = 1 on levels t + n = 0, 1, 2.
  std::map<std::pair<int, int>, Rat> init;
  for (int n = lo; n <= hi; ++n)
    for (int level = 0; level < 3; ++level) init[{n, level - n}] = Rat(1);
  TauLattice lat;
  try {
    lat = tau_run(delta, init, steps);
  } catch (const LatticeDivisionByZero& e) {
    Output o;
    o.body = {{"error", e.what()}, {"n", e.n}, {"t", e.t}};
    o.failed = true;
    return o;
  }
  Output o;
  std::ostringstream csv;
  csv << "n,t,tau,u\n";
  json sites = json::array();
  for (const auto& [nt, v] : lat.tau) {
    const auto u = lat.u_values.find(nt);
    const std::string us = u == lat.u_values.end() ? "" : to_string(u->second);
    csv << nt.first << ',' << nt.second << ',' << to_string(v) << ',' << us << '\n';
    json site = {{"n", nt.first}, {"t", nt.second}, {"tau", to_string(v)}};
    if (!us.empty()) site["u"] = us;
    sites.push_back(site);
  }
  o.body = {{"delta", to_string(delta)}, {"sites", sites}};
  o.body["u_rel"] = relations_json(check_u_relation(lat), o.failed);
  o.csv = csv.str();
  return o;
}

Output cmd_liouville(const RunConfig& c) {
  const int steps = c.depth >= 0 ? c.depth : 4;
  LiouvilleState s;
  try {
    s = liouville_run(c.N, steps);
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
  Output o;
  json chi = json::array();
  for (const auto& [nt, v] : s.chi) chi.push_back({{"n", nt.first}, {"t", nt.second}, {"value", to_json(v)}});
  o.body = {{"N", c.N}, {"steps", steps}, {"matrix", to_json(liouville_matrix(c.N))}, {"chi", chi}};
  o.body["relation"] = relations_json(check_liouville(s), o.failed);
  return o;
}

void emit(const Output& o, const RunConfig& c) {
  const std::string text = c.format == "csv" && !o.csv.empty() ? o.csv : o.body.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw BadInput("cannot write " + c.out);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact cluster-algebra mutation dynamics and Poisson structures"};
  app.require_subcommand(1);
  RunConfig c;

  auto common = [&c](CLI::App* sub) {
    sub->add_option("--out", c.out, "Write the report to this file");
    sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* mutate = app.add_subcommand("mutate", "Apply a mutation word to a seed");
  mutate->add_option("--matrix", c.matrix, "Named matrix or JSON file")->required();
  mutate->add_option("--word", c.word, "Letters separated by ','; see the README")->required();
  mutate->add_option("--window", c.window, "Index window LO..HI for periodic matrices");
  mutate->add_option("--semifield", c.semifield, "universal, tropical or trivial");
  mutate->add_option("--m", c.m, "Liouville parameter m");
  mutate->add_option("--poisson", c.poisson, "JSON Poisson matrix carried along the word");
  common(mutate);

  auto* somos = app.add_subcommand("somos", "Somos-4 terms by cyclic mutation");
  somos->add_option("--n", c.n_terms, "Number of terms");
  common(somos);

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", c.suite, "Suite name, a comma list, or all");
  verify->add_option("--depth", c.depth, "LV depth");
  verify->add_option("--cx", c.cx, "c_x as p/q");
  verify->add_option("--cy", c.cy, "c_y as p/q");
  common(verify);

  auto* poisson = app.add_subcommand("poisson", "Solve for compatible Poisson structures");
  poisson->add_option("--matrix", c.matrix, "Named matrix or JSON file");
  poisson->add_option("--lv-periodic", c.lv_periodic, "Periodic LV quiver on Z/3m");
  poisson->add_flag("--solve", c.solve, "Print a kernel basis of PB = cD");
  poisson->add_option("--m", c.m, "Liouville parameter m");
  poisson->add_option("--cx", c.cx, "c_x as p/q");
  poisson->add_option("--cy", c.cy, "c_y as p/q");
  poisson->add_option("--window", c.window, "Rows and columns of M to print, LO..HI");
  common(poisson);

  auto* lv = app.add_subcommand("lv", "Lotka-Volterra T/Y-system run");
  lv->add_option("--depth", c.depth, "Number of class mutations");
  lv->add_option("--window", c.window, "Block window -L..L");
  lv->add_option("--delta", c.delta, "Constant coefficient y = delta, as p/q");
  lv->add_option("--semifield", c.semifield, "universal, tropical or trivial");
  common(lv);

  auto* tau = app.add_subcommand("tau", "Bilinear lattice from tau = 1 initial data");
  tau->add_option("--delta", c.delta, "delta as p/q");
  tau->add_option("--window", c.window, "Range of n, LO..HI");
  tau->add_option("--depth", c.depth, "Number of new levels");
  common(tau);

  auto* liou = app.add_subcommand("liouville", "N-periodic Liouville run");
  liou->add_option("--N", c.N, "Period N")->required();
  liou->add_option("--depth", c.depth, "Number of steps");
  common(liou);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (somos->parsed() && !somos->get_option("--format")->count()) c.format = "csv";

  try {
    Output o;
    if (mutate->parsed()) o = cmd_mutate(c);
    else if (somos->parsed()) o = cmd_somos(c);
    else if (verify->parsed()) o = cmd_verify(c);
    else if (poisson->parsed()) o = cmd_poisson(c);
    else if (lv->parsed()) o = cmd_lv(c);
    else if (tau->parsed()) o = cmd_tau(c);
    else o = cmd_liouville(c);
    emit(o, c);
    return o.failed ? 1 : 0;
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidMatrix& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NonCommutingSet& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const CompatibilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
