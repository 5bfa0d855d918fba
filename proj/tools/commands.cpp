#include "commands.hpp"

#include "sandpile/circulant.hpp"
#include "sandpile/closed_form.hpp"
#include "sandpile/errors.hpp"
#include "sandpile/json.hpp"
#include "sandpile/number_theory.hpp"
#include "sandpile/smith.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <iostream>
#include <sstream>
#include <thread>

namespace sandpile::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kChecks{"sandpile", "dune", "index", "trees", "orders", "circulant"};

bool wants(const std::vector<std::string>& selected, const std::string& name) {
  return selected.empty() || std::find(selected.begin(), selected.end(), name) != selected.end();
}

template <class Fn>
void timed_check(VerificationReport& report, std::string name, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult c;
  c.name = std::move(name);
  try {
    fn(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.actual = std::string("error: ") + e.what();
  }
  c.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report.checks.push_back(std::move(c));
}

void set_groups(CheckResult& c, const AbelianGroup& expected, const AbelianGroup& actual) {
  c.expected = expected;
  c.actual = actual;
  c.pass = expected == actual;
}

std::string str(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

void to_json(json& j, const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"expected", c.expected},
                      {"actual", c.actual},
                      {"pass", c.pass},
                      {"runtime_ms", c.runtime_ms}});
  j = json{{"instance", {{"family", to_string(r.family)}, {"n", r.n}, {"d", r.d}}},
           {"checks", std::move(checks)},
           {"pass", r.passed()}};
}

const std::vector<std::string>& known_checks() { return kChecks; }

VerificationReport verify_instance(Family family, std::int64_t n, std::int64_t d,
                                   const std::vector<std::string>& checks) {
  VerificationReport report{family, n, d, {}};
  const Digraph g = build_graph({family, n, d});
  const bool db = family == Family::DeBruijn;

  if (wants(checks, "sandpile"))
    timed_check(report, "sandpile_closed_vs_snf", [&](CheckResult& c) {
      set_groups(c, sandpile_group_snf(g, 0), db ? sandpile_group_db(n, d) : sandpile_group_kautz(n, d));
    });
  if (wants(checks, "trees"))
    timed_check(report, "matrix_tree", [&](CheckResult& c) {
      const BigInt trees = spanning_tree_count(g, 0);
      const BigInt group_order = order(sandpile_group_snf(g, 0));
      c.expected = to_decimal(trees);
      c.actual = to_decimal(group_order);
      c.pass = trees == group_order;
    });
  if (!db) return report;

  if (wants(checks, "dune"))
    timed_check(report, "sand_dune_closed_vs_relations", [&](CheckResult& c) {
      set_groups(c, finite_part(epsilon_relation_matrix(n, d), static_cast<std::size_t>(n - 1)),
                 sand_dune_group(n, d));
    });
  if (wants(checks, "index"))
    timed_check(report, "dune_index_n", [&](CheckResult& c) {
      const BigInt dune = order(sand_dune_group(n, d));
      const BigInt pile = order(sandpile_group_db(n, d)) * n;
      c.expected = to_decimal(dune);
      c.actual = to_decimal(pile);
      c.pass = dune == pile;
    });
  if (wants(checks, "orders"))
    timed_check(report, "order_of_ev", [&](CheckResult& c) {
      const SnfResult snf = smith_normal_form(epsilon_relation_matrix(n, d));
      json expected = json::array();
      json actual = json::array();
      c.pass = true;
      for (std::int64_t v = 1; v < n; ++v) {
        std::vector<BigInt> e(static_cast<std::size_t>(n - 1), BigInt(0));
        e[static_cast<std::size_t>(v - 1)] = 1;
        const BigInt want = cokernel_element_order(snf, e);
        const BigInt got = order_of_ev(v, n, d);
        expected.push_back(to_decimal(want));
        actual.push_back(to_decimal(got));
        c.pass = c.pass && want == got;
      }
      c.expected = std::move(expected);
      c.actual = std::move(actual);
    });
  if (wants(checks, "circulant") && is_prime(static_cast<std::uint64_t>(d)))
    timed_check(report, "circulant_fixing_ones_vs_dune",
                [&](CheckResult& c) { set_groups(c, sand_dune_group(n, d), circulant_group_fixing_ones(n, d)); });
  return report;
}

std::vector<VerificationReport> run_sweep(const SweepOptions& options) {
  struct Instance {
    Family family;
    std::int64_t n, d;
  };
  std::vector<Instance> instances;
  for (Family f : options.families)
    for (std::int64_t n = 2; n <= options.n_max; ++n)
      for (std::int64_t d = 2; d <= options.d_max; ++d) instances.push_back({f, n, d});

  std::vector<VerificationReport> reports(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++)
      reports[i] = verify_instance(instances[i].family, instances[i].n, instances[i].d, options.checks);
  };
  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return reports;
}

std::uint64_t default_brute_cap() {
  if (const char* env = std::getenv(kBruteCapEnv)) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed " << kBruteCapEnv << "='" << env << "'\n";
    }
  }
  return kDefaultBruteForceCap;
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void require_prime(std::int64_t p) {
  require(p >= 2 && is_prime(static_cast<std::uint64_t>(p)), "--p must be a prime, got " + std::to_string(p));
}

std::string ring_label(std::int64_t p, std::int64_t n) {
  return std::to_string(p) + "^" + std::to_string(n);
}

bool fits_cap(std::int64_t p, std::int64_t n, std::uint64_t cap) {
  std::uint64_t size = 1;
  for (std::int64_t i = 0; i < n; ++i) {
    if (size > cap / static_cast<std::uint64_t>(p)) return false;
    size *= static_cast<std::uint64_t>(p);
  }
  return true;
}

struct GroupArgs {
  std::string family = "db";
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::string method = "both";
  bool json = false;
};

int cmd_group(const GroupArgs& a, std::ostream& out) {
  const Family family = parse_family(a.family);
  require(a.n >= 2, "--n must be at least 2");
  require(a.d >= 1, "--d must be at least 1");
  require(a.d >= 2 || a.method == "snf", "--d 1 is only supported with --method snf");
  const bool closed = a.method != "snf";
  const bool snf = a.method != "closed";
  const bool db = family == Family::DeBruijn;

  const Digraph g = build_graph({family, a.n, a.d});
  const BigInt trees = spanning_tree_count(g, 0);
  json report{{"family", to_string(family)}, {"n", a.n}, {"d", a.d}, {"method", a.method},
              {"spanning_trees", to_decimal(trees)}};

  std::optional<AbelianGroup> pile_closed, pile_snf, dune_closed, dune_snf;
  if (closed) pile_closed = db ? sandpile_group_db(a.n, a.d) : sandpile_group_kautz(a.n, a.d);
  if (snf) pile_snf = sandpile_group_snf(g, 0);
  if (db && a.d >= 2) {
    if (closed) dune_closed = sand_dune_group(a.n, a.d);
    if (snf) dune_snf = finite_part(epsilon_relation_matrix(a.n, a.d), static_cast<std::size_t>(a.n - 1));
  }

  auto put = [](json& j, const char* key, const std::optional<AbelianGroup>& grp) {
    if (grp) j[key] = *grp;
  };
  json pile = json::object();
  put(pile, "closed", pile_closed);
  put(pile, "snf", pile_snf);
  report["sandpile"] = pile;
  if (dune_closed || dune_snf) {
    json dune = json::object();
    put(dune, "closed", dune_closed);
    put(dune, "snf", dune_snf);
    report["sand_dune"] = dune;
  }

  bool match = true;
  if (closed && snf) {
    match = *pile_closed == *pile_snf && (!dune_closed || *dune_closed == *dune_snf);
    report["match"] = match;
  }

  if (a.json) {
    out << report.dump(2) << '\n';
  } else {
    out << (db ? "DB(" : "Kautz(") << a.n << "," << a.d << ")\n";
    if (pile_closed) out << "  sandpile group (closed form): " << pile_closed->to_string() << '\n';
    if (pile_snf) out << "  sandpile group (SNF):         " << pile_snf->to_string() << '\n';
    if (dune_closed) out << "  sand dune group (closed form): " << dune_closed->to_string() << '\n';
    if (dune_snf) out << "  sand dune group (relations):   " << dune_snf->to_string() << '\n';
    out << "  spanning trees: " << to_decimal(trees) << '\n';
    if (closed && snf) out << "  match: " << (match ? "yes" : "NO") << '\n';
  }
  return match ? kSuccess : kMismatch;
}

struct SweepArgs {
  std::string family = "both";
  std::int64_t n_max = 64;
  std::int64_t d_max = 9;
  std::string checks = "all";
  unsigned parallel = 0;
  bool json = false;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  require(a.n_max >= 2, "--n-max must be at least 2");
  require(a.d_max >= 2, "--d-max must be at least 2");
  SweepOptions opt;
  opt.n_max = a.n_max;
  opt.d_max = a.d_max;
  if (a.family == "both") {
    opt.families = {Family::DeBruijn, Family::Kautz};
  } else {
    opt.families = {parse_family(a.family)};
  }
  if (a.checks != "all") {
    std::istringstream in(a.checks);
    for (std::string name; std::getline(in, name, ',');) {
      require(std::find(kChecks.begin(), kChecks.end(), name) != kChecks.end(), "unknown check '" + name + "'");
      opt.checks.push_back(name);
    }
  }
  opt.workers = a.parallel != 0 ? a.parallel : std::max(1u, std::thread::hardware_concurrency());

  const auto start = std::chrono::steady_clock::now();
  const auto reports = run_sweep(opt);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::size_t checks = 0, failed = 0;
  for (const auto& r : reports)
    for (const auto& c : r.checks) {
      ++checks;
      if (!c.pass) ++failed;
    }

  if (a.json) {
    out << json(reports).dump() << '\n';
  } else {
    out << "instances: " << reports.size() << "  checks: " << checks << "  passed: " << checks - failed
        << "  failed: " << failed << "  (" << seconds << " s)\n";
    std::size_t shown = 0;
    for (const auto& r : reports)
      for (const auto& c : r.checks) {
        if (c.pass || shown >= 10) continue;
        ++shown;
        out << "  FAIL " << to_string(r.family) << "(" << r.n << "," << r.d << ") " << c.name
            << ": expected " << str(c.expected) << ", got " << str(c.actual) << '\n';
      }
  }
  return failed == 0 ? kSuccess : kMismatch;
}

struct CirculantArgs {
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::uint64_t brute_cap = 0;
  bool json = false;
};

int cmd_circulant(const CirculantArgs& a, std::ostream& out) {
  require(a.n >= 1, "--n must be positive");
  require_prime(a.p);
  const UnitGroupStructure full = circulant_group(a.n, a.p);
  const AbelianGroup fixing = circulant_group_fixing_ones(a.n, a.p);
  const AbelianGroup dune = sand_dune_group(a.n, a.p);
  const AbelianGroup pile = sandpile_group_db(a.n, a.p);
  std::optional<AbelianGroup> quotient;
  if (fits_cap(a.p, a.n, a.brute_cap)) quotient = quotient_by_shift(a.n, a.p, a.brute_cap);
  const BigInt normal = count_normal_elements(a.p, a.n);

  const bool match = fixing == dune && (!quotient || *quotient == pile);
  if (a.json) {
    json j{{"n", a.n},
           {"p", a.p},
           {"C", full.group},
           {"C_prime", fixing},
           {"quotient_by_shift", quotient ? json(*quotient) : json(nullptr)},
           {"normal_elements", to_decimal(normal)},
           {"sand_dune", dune},
           {"sandpile", pile},
           {"match", match}};
    out << j.dump(2) << '\n';
  } else {
    out << "C(" << a.n << "," << a.p << ")        = " << full.group.to_string() << '\n';
    out << "C'(" << a.n << "," << a.p << ")       = " << fixing.to_string() << "   sand dune group: "
        << dune.to_string() << '\n';
    out << "C'(" << a.n << "," << a.p << ")/<x>   = "
        << (quotient ? quotient->to_string() : "not computed (" + ring_label(a.p, a.n) + " exceeds brute-force cap)")
        << "   sandpile group: " << pile.to_string() << '\n';
    out << "normal elements of F_" << ring_label(a.p, a.n) << ": " << to_decimal(normal) << '\n';
    out << "match: " << (match ? "yes" : "NO") << '\n';
  }
  return match ? kSuccess : kMismatch;
}

struct NormalArgs {
  std::int64_t p = 0;
  std::int64_t n = 0;
  bool brute = false;
  std::uint64_t brute_cap = 0;
  bool json = false;
};

int cmd_normal_count(const NormalArgs& a, std::ostream& out) {
  require(a.n >= 1, "--n must be positive");
  require_prime(a.p);
  const BigInt count = count_normal_elements(a.p, a.n);
  std::optional<BigInt> brute;
  if (a.brute) {
    require(fits_cap(a.p, a.n, a.brute_cap),
            ring_label(a.p, a.n) + " exceeds the brute-force cap " + std::to_string(a.brute_cap));
    brute = bruteforce_count_normal(a.p, a.n, a.brute_cap);
  }
  const bool match = !brute || *brute == count;
  if (a.json) {
    json j{{"p", a.p}, {"n", a.n}, {"normal_elements", to_decimal(count)}};
    if (brute) {
      j["brute_force"] = to_decimal(*brute);
      j["match"] = match;
    }
    out << j.dump(2) << '\n';
  } else {
    out << to_decimal(count);
    if (brute) out << (match ? " (verified)" : " (brute force gives " + to_decimal(*brute) + ")");
    out << '\n';
  }
  return match ? kSuccess : kMismatch;
}

std::string join(const std::vector<BigInt>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : " ") + to_decimal(x);
  return s;
}

int cmd_snf(const std::string& path, bool as_json, std::ostream& out) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot read " + path);
  IntegerMatrix m;
  try {
    m = read_matrix(in);
  } catch (const MatrixParseError& e) {
    const std::string what = e.what();
    throw UsageError(path + ":" + std::to_string(e.line()) + ": " + what.substr(what.find(": ") + 2));
  }
  const std::vector<BigInt> diag = smith_diagonal(m);
  std::vector<BigInt> factors = diag;
  std::erase_if(factors, [](const BigInt& x) { return x == 0; });
  const AbelianGroup group = smith_group(m, m.cols());
  if (as_json) {
    auto strings = [](const std::vector<BigInt>& xs) {
      json a = json::array();
      for (const auto& x : xs) a.push_back(to_decimal(x));
      return a;
    };
    out << json{{"rows", m.rows()},
                {"cols", m.cols()},
                {"diagonal", strings(diag)},
                {"invariant_factors", strings(factors)},
                {"smith_group", group},
                {"finite_part", group.torsion()}}
               .dump(2)
        << '\n';
  } else {
    out << join(diag) << '\n';
    out << "invariant factors: " << join(factors) << '\n';
    out << "smith group: " << group.to_string() << '\n';
    out << "finite part: " << group.torsion().to_string() << '\n';
  }
  return kSuccess;
}

int cmd_graph(const GraphSpec& spec, std::ostream& out) {
  require(spec.n >= 1 && spec.d >= 1, "--n and --d must be positive");
  out << digraph_to_json(spec, build_graph(spec)).dump() << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical groups of generalized de Bruijn and Kautz graphs", "sandpile"};
  app.require_subcommand(1);

  GroupArgs group;
  auto* g = app.add_subcommand("group", "Sandpile / sand dune group of one graph");
  g->add_option("--family", group.family, "db or kautz")->check(CLI::IsMember({"db", "kautz"}));
  g->add_option("--n", group.n, "Number of vertices")->required();
  g->add_option("--d", group.d, "Out-degree")->required();
  g->add_option("--method", group.method, "closed, snf or both")->check(CLI::IsMember({"closed", "snf", "both"}));
  g->add_flag("--json", group.json, "Emit JSON");

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Cross-check closed forms against SNF over a grid");
  s->add_option("--family", sweep.family, "db, kautz or both")->check(CLI::IsMember({"db", "kautz", "both"}));
  s->add_option("--n-max", sweep.n_max, "Largest n (>= 2)");
  s->add_option("--d-max", sweep.d_max, "Largest d (>= 2)");
  s->add_option("--checks", sweep.checks, "Comma-separated subset of sandpile,dune,index,trees,orders,circulant or all");
  s->add_option("--parallel", sweep.parallel, "Worker threads (0 = hardware concurrency)");
  s->add_flag("--json", sweep.json, "Emit a JSON array of per-instance reports");

  CirculantArgs circ;
  circ.brute_cap = default_brute_cap();
  auto* c = app.add_subcommand("circulant", "Invertible circulant groups C(n,p), C'(n,p) and C'(n,p)/<x>");
  c->add_option("--n", circ.n, "Matrix size")->required();
  c->add_option("--p", circ.p, "Prime field size")->required();
  c->add_option("--brute-cap", circ.brute_cap, "Largest p^n enumerated for the quotient");
  c->add_flag("--json", circ.json, "Emit JSON");

  NormalArgs normal;
  normal.brute_cap = default_brute_cap();
  auto* nc = app.add_subcommand("normal-count", "Number of normal elements of F_{p^n} over F_p");
  nc->add_option("--p", normal.p, "Prime")->required();
  nc->add_option("--n", normal.n, "Extension degree")->required();
  nc->add_flag("--brute", normal.brute, "Verify by enumerating the field");
  nc->add_option("--brute-cap", normal.brute_cap, "Largest p^n enumerated");
  nc->add_flag("--json", normal.json, "Emit JSON");

  std::string input;
  bool snf_json = false;
  auto* sn = app.add_subcommand("snf", "Smith Normal Form of a matrix file");
  sn->add_option("--input", input, "Matrix file: 'rows cols' header then rows of integers")->required();
  sn->add_flag("--json", snf_json, "Emit JSON");

  GraphSpec graph;
  std::string graph_family = "db";
  auto* gr = app.add_subcommand("graph", "Export a graph's adjacency matrix as JSON");
  gr->add_option("--family", graph_family, "db or kautz")->check(CLI::IsMember({"db", "kautz"}));
  gr->add_option("--n", graph.n, "Number of vertices")->required();
  gr->add_option("--d", graph.d, "Out-degree")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  try {
    if (g->parsed()) return cmd_group(group, out);
    if (s->parsed()) return cmd_sweep(sweep, out);
    if (c->parsed()) return cmd_circulant(circ, out);
    if (nc->parsed()) return cmd_normal_count(normal, out);
    if (sn->parsed()) return cmd_snf(input, snf_json, out);
    if (gr->parsed()) {
      graph.family = parse_family(graph_family);
      return cmd_graph(graph, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace sandpile::cli
