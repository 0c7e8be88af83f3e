#include "topcoh/cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "topcoh/cli/cache.hpp"
#include "topcoh/cli/io.hpp"
#include "topcoh/cli/verify.hpp"
#include "topcoh/complexes/builders.hpp"
#include "topcoh/errors.hpp"
#include "topcoh/formulas/formulas.hpp"
#include "topcoh/gfq/field.hpp"
#include "topcoh/gfq/linalg.hpp"
#include "topcoh/homology/homology.hpp"
#include "topcoh/lifting/lifting.hpp"

namespace topcoh::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kDefaultSeed = 20240917;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw ParseError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Self-describing run document printed for --format json.
json run_document(const std::string& command, json config, std::uint64_t seed, json results, double seconds) {
  return {{"tool", "topcoh"},
          {"version", code_version()},
          {"command", command},
          {"config", std::move(config)},
          {"seed", seed},
          {"results", std::move(results)},
          {"durations", {{"total_seconds", seconds}}}};
}

void require_prime(std::uint32_t p) {
  if (!gfq::is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

Execution exec_for(bool serial) { return serial ? Execution::Serial : Execution::Parallel; }

// ---------------------------------------------------------------- ranks

struct RanksArgs {
  std::uint32_t p = 0;
  std::size_t max_n = 0;
  std::string format = "text";
  std::string out_path;
  std::string cache_dir;
  bool no_cache = false;
  bool serial = false;
};

struct RankRow {
  std::size_t n;
  mpz_class t, t_prime, steinberg;
  std::optional<mpz_class> bound;
};

std::string ranks_csv(const std::vector<RankRow>& rows) {
  std::ostringstream s;
  s << "n,t,t_prime,steinberg,lower_bound\n";
  for (const auto& r : rows)
    s << r.n << ',' << r.t.get_str() << ',' << r.t_prime.get_str() << ',' << r.steinberg.get_str() << ','
      << (r.bound ? r.bound->get_str() : "") << '\n';
  return s.str();
}

json ranks_json(std::uint32_t p, const std::vector<RankRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"n", r.n},
                   {"t", r.t.get_str()},
                   {"t_prime", r.t_prime.get_str()},
                   {"steinberg", r.steinberg.get_str()},
                   {"lower_bound", r.bound ? json(r.bound->get_str()) : json(nullptr)}});
  return {{"p", p}, {"rows", arr}};
}

std::string ranks_text(const std::vector<RankRow>& rows) {
  std::vector<std::array<std::string, 5>> cells{{"n", "t_n", "t'_n", "steinberg", "lower_bound"}};
  for (const auto& r : rows)
    cells.push_back({std::to_string(r.n), r.t.get_str(), r.t_prime.get_str(), r.steinberg.get_str(),
                     r.bound ? r.bound->get_str() : "-"});
  std::array<std::size_t, 5> width{};
  for (const auto& row : cells)
    for (std::size_t c = 0; c < 5; ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream s;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < 5; ++c) {
      if (c) s << "  ";
      s << std::setw(static_cast<int>(width[c])) << row[c];
    }
    s << '\n';
  }
  return s.str();
}

int cmd_ranks(const RanksArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  require_prime(a.p);
  if (a.p == 2) throw UnsupportedPrimeError("ranks requires an odd prime");

  std::string cache_state = "disabled";
  formulas::RankSequence t;
  if (a.no_cache) {
    t = formulas::t_sequence(a.p, a.max_n, exec_for(a.serial));
  } else {
    const SequenceCache cache(a.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(a.cache_dir));
    bool hit = false;
    t = cache.t_sequence(a.p, a.max_n, &hit);
    cache_state = hit ? "hit" : "miss";
  }
  const auto tp = formulas::paraschivescu_sequence(a.p, a.max_n);

  std::vector<RankRow> rows;
  for (std::size_t n = 1; n <= a.max_n; ++n) {
    RankRow r{n, t.at(n), tp.at(n), formulas::steinberg_rank(a.p, n), std::nullopt};
    if (n >= 3) r.bound = formulas::top_cohomology_lower_bound(t, n);
    rows.push_back(std::move(r));
  }

  if (!a.out_path.empty()) {
    write_file(a.out_path, a.format == "json" ? ranks_json(a.p, rows).dump(2) + "\n" : ranks_csv(rows));
  }
  if (a.format == "csv") {
    out << ranks_csv(rows);
  } else if (a.format == "json") {
    const json config = {{"p", a.p}, {"max_n", a.max_n}, {"cache", cache_state}};
    out << run_document("ranks", config, kDefaultSeed, ranks_json(a.p, rows), seconds_since(start)).dump(2) << '\n';
  } else {
    out << ranks_text(rows);
  }
  (void)err;
  return kExitOk;
}

// ---------------------------------------------------------------- sequence

struct SequenceArgs {
  std::string kind = "t";
  std::uint32_t p = 0;
  std::size_t max_n = 0;
  std::string format = "csv";
  std::string out_path;
  bool serial = false;
};

int cmd_sequence(const SequenceArgs& a, std::ostream& out, std::ostream&) {
  const auto start = Clock::now();
  require_prime(a.p);
  // Rows as (n, value); the Steinberg rank starts at n = 1 and the lower bound at n = 3.
  std::vector<std::pair<std::size_t, mpz_class>> rows;
  if (a.kind == "t") {
    const auto t = formulas::t_sequence(a.p, a.max_n, exec_for(a.serial));
    for (std::size_t n = 0; n <= a.max_n; ++n) rows.emplace_back(n, t.at(n));
  } else if (a.kind == "t-prime") {
    const auto t = formulas::paraschivescu_sequence(a.p, a.max_n);
    for (std::size_t n = 0; n <= a.max_n; ++n) rows.emplace_back(n, t.at(n));
  } else if (a.kind == "steinberg") {
    for (std::size_t n = 1; n <= a.max_n; ++n) rows.emplace_back(n, formulas::steinberg_rank(a.p, n));
  } else {
    const auto t = formulas::t_sequence(a.p, std::max<std::size_t>(a.max_n, 2), exec_for(a.serial));
    for (std::size_t n = 3; n <= a.max_n; ++n) rows.emplace_back(n, formulas::top_cohomology_lower_bound(t, n));
  }

  std::ostringstream csv;
  csv << "n,value\n";
  json values = json::array();
  for (const auto& [n, v] : rows) {
    csv << n << ',' << v.get_str() << '\n';
    values.push_back({{"n", n}, {"value", v.get_str()}});
  }
  const json data = {{"p", a.p}, {"kind", a.kind}, {"values", values}};

  if (!a.out_path.empty()) write_file(a.out_path, a.format == "json" ? data.dump(2) + "\n" : csv.str());
  if (a.format == "json") {
    const json config = {{"p", a.p}, {"max_n", a.max_n}, {"kind", a.kind}};
    out << run_document("sequence", config, kDefaultSeed, data, seconds_since(start)).dump(2) << '\n';
  } else {
    out << csv.str();
  }
  return kExitOk;
}

// ---------------------------------------------------------------- complex

struct ComplexArgs {
  std::string family;
  std::size_t n = 0, m = 0;
  std::uint32_t p = 0;
  std::size_t cap = 5'000'000;
  std::string format = "text";
  std::string out_path;
  bool serial = false;
};

complexes::SimplicialComplex build_from(const std::string& family, std::size_t n, std::size_t m, std::uint32_t p,
                                        std::size_t cap, bool serial) {
  require_prime(p);
  complexes::BuildOptions opt;
  opt.cap = cap;
  opt.exec = exec_for(serial);
  return complexes::build(complexes::family_from_name(family), n, m, p, opt);
}

std::string counts_string(const complexes::ComplexStats& s) {
  std::string r;
  for (std::size_t i = 0; i < s.counts.size(); ++i) r += (i ? " " : "") + std::to_string(s.counts[i]);
  return r.empty() ? "(empty)" : r;
}

int cmd_complex(const ComplexArgs& a, std::ostream& out, std::ostream&) {
  const auto start = Clock::now();
  const auto k = build_from(a.family, a.n, a.m, a.p, a.cap, a.serial);
  const auto st = complexes::stats(k);
  if (!a.out_path.empty()) {
    std::ostringstream s;
    write_complex(s, k);
    write_file(a.out_path, s.str());
  }
  if (a.format == "json") {
    const json config = {{"family", a.family}, {"n", a.n}, {"m", a.m}, {"p", a.p}, {"cap", a.cap}};
    out << run_document("complex", config, kDefaultSeed, stats_json(st), seconds_since(start)).dump(2) << '\n';
  } else {
    out << "complex " << a.family << " n=" << a.n << " m=" << a.m << " p=" << a.p << '\n';
    out << "simplices by dimension: " << counts_string(st) << '\n';
    out << "facets: " << st.facets << '\n';
    out << "euler characteristic: " << st.euler << '\n';
    if (!a.out_path.empty()) out << "wrote " << a.out_path << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- homology

struct HomologyArgs {
  std::string input;
  std::string family;
  std::size_t n = 0, m = 0;
  std::uint32_t p = 0;
  std::size_t cap = 5'000'000;
  bool unreduced = false;
  bool no_snf = false;
  std::uint64_t seed = kDefaultSeed;
  double snf_budget = 4e8;
  std::string format = "text";
  std::string out_path;
  bool serial = false;
};

std::string torsion_string(const std::optional<std::vector<mpz_class>>& t) {
  if (!t) return "not certified";
  if (t->empty()) return "none";
  return join(*t);
}

int cmd_homology(const HomologyArgs& a, std::ostream& out, std::ostream&) {
  const auto start = Clock::now();
  complexes::SimplicialComplex k = [&] {
    if (!a.input.empty()) {
      std::istringstream in(read_file(a.input));
      return read_complex(in);
    }
    if (a.family.empty()) throw ParseError("homology needs --input or --family/--n/--p");
    return build_from(a.family, a.n, a.m, a.p, a.cap, a.serial);
  }();

  homology::HomologyOptions opt;
  opt.reduced = !a.unreduced;
  opt.snf = !a.no_snf;
  opt.snf_budget = a.snf_budget;
  opt.seed = a.seed;
  opt.exec = exec_for(a.serial);
  const auto r = homology::betti(k, opt);

  json config = {{"reduced", opt.reduced}, {"snf", opt.snf}, {"snf_budget", opt.snf_budget}};
  if (!a.input.empty()) {
    config["input"] = a.input;
  } else {
    config.update({{"family", a.family}, {"n", a.n}, {"m", a.m}, {"p", a.p}, {"cap", a.cap}});
  }
  if (!a.out_path.empty()) {
    const json data = {{"config", config}, {"seed", a.seed}, {"homology", homology_json(r)}};
    write_file(a.out_path, data.dump(2) + "\n");
  }
  if (a.format == "json") {
    out << run_document("homology", config, a.seed, homology_json(r), seconds_since(start)).dump(2) << '\n';
    return kExitOk;
  }
  const std::string h = r.reduced ? "reduced H_" : "H_";
  for (int d = r.min_degree; d <= r.max_degree(); ++d) {
    const auto i = static_cast<std::size_t>(d - r.min_degree);
    out << h << d << ": rank " << r.betti[i].get_str() << ", torsion " << torsion_string(r.torsion[i]) << '\n';
  }
  std::vector<mpz_class> from_zero;
  for (int d = std::max(0, r.min_degree); d <= r.max_degree(); ++d) from_zero.push_back(r.betti_at(d));
  out << (r.reduced ? "reduced betti" : "betti") << " (degrees 0.." << r.max_degree() << "): " << join(from_zero)
      << '\n';
  out << "euler characteristic: " << r.euler.get_str() << '\n';
  out << "method: " << r.method << (r.rank_only ? " (rank-only: some torsion not certified)" : "") << '\n';
  out << "seed: " << r.seed << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- coinvariants / kernel

struct CoinvArgs {
  std::size_t n = 0;
  std::uint32_t p = 0;
  std::size_t cap = 5'000'000;
  std::uint64_t seed = kDefaultSeed;
  double snf_budget = 4e8;
  std::string format = "text";
  bool serial = false;
};

homology::HomologyOptions coinv_options(const CoinvArgs& a) {
  homology::HomologyOptions opt;
  opt.seed = a.seed;
  opt.snf_budget = a.snf_budget;
  opt.exec = exec_for(a.serial);
  return opt;
}

int cmd_coinvariants(const CoinvArgs& a, std::ostream& out, std::ostream&) {
  const auto start = Clock::now();
  require_prime(a.p);
  const auto c = homology::coinvariants_rank(a.n, a.p, coinv_options(a), a.cap);
  json primes = json::array();
  for (auto q : c.primes) primes.push_back(q);
  const json res = {{"rank", c.rank.get_str()}, {"rows", c.rows},    {"cols", c.cols},
                    {"matrix_rank", c.matrix_rank}, {"method", c.method}, {"primes", primes}};
  if (a.format == "json") {
    const json config = {{"n", a.n}, {"p", a.p}, {"cap", a.cap}, {"snf_budget", a.snf_budget}};
    out << run_document("coinvariants", config, a.seed, res, seconds_since(start)).dump(2) << '\n';
  } else {
    out << "coinvariants rank: " << c.rank.get_str() << '\n';
    out << "relative boundary: " << c.rows << " x " << c.cols << ", rank " << c.matrix_rank << '\n';
    out << "method: " << c.method << '\n';
    out << "seed: " << a.seed << '\n';
  }
  return kExitOk;
}

int cmd_kernel(const CoinvArgs& a, std::ostream& out, std::ostream&) {
  const auto start = Clock::now();
  require_prime(a.p);
  const auto k = homology::kernel_report(a.n, a.p, coinv_options(a), a.cap);
  const json res = {{"coinvariants_rank", k.coinv_rank.get_str()},
                    {"t_n", k.t_n.get_str()},
                    {"kernel_rank", k.kernel_rank.get_str()},
                    {"predicted_kernel_lower_bound", k.predicted_kernel_lower_bound.get_str()},
                    {"consistent", k.consistent},
                    {"method", k.method}};
  if (a.format == "json") {
    const json config = {{"n", a.n}, {"p", a.p}, {"cap", a.cap}};
    out << run_document("kernel", config, a.seed, res, seconds_since(start)).dump(2) << '\n';
  } else {
    out << "coinvariants rank: " << k.coinv_rank.get_str() << '\n';
    out << "t_n: " << k.t_n.get_str() << '\n';
    out << "kernel rank: " << k.kernel_rank.get_str() << '\n';
    out << "predicted lower bound: " << k.predicted_kernel_lower_bound.get_str() << '\n';
    out << "consistent: " << (k.consistent ? "yes" : "no") << '\n';
    out << "method: " << k.method << '\n';
  }
  return k.consistent ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string level = "quick";
  std::uint64_t seed = kDefaultSeed;
  std::string format = "text";
  std::string out_path;
  std::vector<std::string> only;
  bool serial = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream&) {
  const auto start = Clock::now();
  VerifyOptions opt;
  opt.seed = a.seed;
  opt.exec = exec_for(a.serial);
  auto checks = builtin_checks();
  if (!a.only.empty()) {
    std::erase_if(checks, [&](const Check& c) {
      return std::none_of(a.only.begin(), a.only.end(),
                          [&](const std::string& prefix) { return c.id.rfind(prefix, 0) == 0; });
    });
  }
  const auto outcomes = run_checks(checks, a.level == "full" ? Level::Full : Level::Quick, opt);

  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto& o : outcomes) {
    if (o.status == Status::Pass) ++passed;
    else if (o.status == Status::Fail) ++failed;
    else ++skipped;
  }
  const json summary = {{"passed", passed}, {"failed", failed}, {"skipped", skipped}};

  if (!a.out_path.empty()) {
    json data = outcomes_json(outcomes);
    for (auto& o : data) o.erase("seconds");
    write_file(a.out_path,
               json{{"level", a.level}, {"seed", a.seed}, {"summary", summary}, {"outcomes", data}}.dump(2) + "\n");
  }
  if (a.format == "json") {
    const json res = {{"summary", summary}, {"outcomes", outcomes_json(outcomes)}};
    out << run_document("verify", {{"level", a.level}}, a.seed, res, seconds_since(start)).dump(2) << '\n';
  } else {
    for (const auto& o : outcomes) {
      std::string status = to_string(o.status);
      std::transform(status.begin(), status.end(), status.begin(), ::toupper);
      out << std::left << std::setw(5) << status << ' ' << o.id << "  (" << std::fixed << std::setprecision(2)
          << o.seconds << " s)";
      if (!o.note.empty()) out << "  [" << o.note << ']';
      out << '\n';
      if (o.status != Status::Pass) {
        out << "      observed: " << o.observed << '\n';
        out << "      expected: " << o.expected << " (" << o.source << ")\n";
      }
    }
    out << passed << " passed, " << failed << " failed, " << skipped << " skipped in " << std::fixed
        << std::setprecision(1) << seconds_since(start) << " s (seed " << a.seed << ")\n";
  }
  return failed ? kExitCheckFailed : kExitOk;
}

// ---------------------------------------------------------------- lift

struct LiftArgs {
  std::string matrix;
  std::uint32_t p = 0;
  std::string out_path;
};

// Dense matrix file: one row per line, whitespace separated integers; blank
// lines and lines starting with '#' are ignored.
std::vector<std::vector<mpz_class>> parse_dense(const std::string& text) {
  std::vector<std::vector<mpz_class>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<mpz_class> row;
    std::string tok;
    while (ls >> tok) {
      mpz_class v;
      if (v.set_str(tok, 10) != 0) throw ParseError("line " + std::to_string(line_no) + ": bad integer '" + tok + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("matrix file is empty");
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw ParseError("matrix must be square");
  return rows;
}

std::string dense_string(const lifting::IntMatrix& m) {
  std::ostringstream s;
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) s << (j ? " " : "") << row[j].get_str();
    s << '\n';
  }
  return s.str();
}

gfq::Residue residue(const mpz_class& x, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), p);
  return static_cast<gfq::Residue>(r.get_ui());
}

int cmd_lift(const LiftArgs& a, std::ostream& out, std::ostream&) {
  require_prime(a.p);
  const gfq::Field f(a.p);
  const auto ints = parse_dense(read_file(a.matrix));
  const std::size_t n = ints.size();
  gfq::Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = residue(ints[i][j], a.p);

  const gfq::Residue d = gfq::det(f, m);
  lifting::IntMatrix lifted;
  bool congruent = true;
  std::string path;
  if (d == 1) {
    path = "transvection lift";
    lifted = lifting::lift_sl(f, m);
    congruent = lifting::reduce(f, lifted) == m;
  } else if (d == f.neg(1)) {
    path = "signed basis lift";
    std::vector<gfq::Vector> cols(n, gfq::Vector(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cols[j][i] = m(i, j);
    const auto basis = lifting::lift_pm_basis(f, cols);
    lifted.assign(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) lifted[i][j] = basis[j][i];
    for (std::size_t j = 0; j < n; ++j) {
      gfq::Vector col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = residue(lifted[i][j], a.p);
      congruent = congruent && gfq::canonicalize_pm(f, col) == gfq::canonicalize_pm(f, cols[j]);
    }
  } else {
    throw NotUnimodularError("determinant is " + std::to_string(d) + " mod " + std::to_string(a.p) +
                             ", not 1 or -1");
  }

  const mpz_class det = lifting::determinant(lifted);
  out << "det mod p: " << (d == 1 ? "1" : "-1") << '\n';
  out << "path: " << path << '\n';
  out << "integer determinant: " << det.get_str() << '\n';
  out << (d == 1 ? "congruent mod p: " : "columns congruent up to sign mod p: ") << (congruent ? "yes" : "no") << '\n';
  if (a.out_path.empty()) {
    out << dense_string(lifted);
  } else {
    write_file(a.out_path, dense_string(lifted));
    out << "wrote " << a.out_path << '\n';
  }
  const bool ok = congruent && (d == 1 ? det == 1 : det == -1);
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Top cohomology of SL_n(Z): rank formulas, complexes, homology and verification", "topcoh"};
  app.require_subcommand(1);
  app.set_version_flag("--version", code_version());

  const std::vector<std::string> families{"b-pm", "b-proj", "bd-pm", "ba-pm", "bda-pm", "bda-prime", "tits",
                                          "tits-oriented"};

  RanksArgs ranks;
  auto* c_ranks = app.add_subcommand("ranks", "table of t_n, t'_n, Steinberg rank and lower bound");
  c_ranks->add_option("--prime,-p", ranks.p, "odd prime")->required();
  c_ranks->add_option("--max-n,-n", ranks.max_n, "largest n")->required();
  c_ranks->add_option("--format", ranks.format)->check(CLI::IsMember({"text", "csv", "json"}));
  c_ranks->add_option("--out", ranks.out_path, "also write the table (csv, or json with --format json)");
  c_ranks->add_option("--cache-dir", ranks.cache_dir, "overrides TOPCOH_CACHE_DIR");
  c_ranks->add_flag("--no-cache", ranks.no_cache);
  c_ranks->add_flag("--serial", ranks.serial, "use the serial kernel");

  SequenceArgs seq;
  auto* c_seq = app.add_subcommand("sequence", "export one sequence as n,value rows");
  c_seq->add_option("--kind", seq.kind)->check(CLI::IsMember({"t", "t-prime", "steinberg", "lower-bound"}));
  c_seq->add_option("--prime,-p", seq.p)->required();
  c_seq->add_option("--max-n,-n", seq.max_n)->required();
  c_seq->add_option("--format", seq.format)->check(CLI::IsMember({"csv", "json"}));
  c_seq->add_option("--out", seq.out_path);
  c_seq->add_flag("--serial", seq.serial);

  ComplexArgs cx;
  auto* c_cx = app.add_subcommand("complex", "build a complex, print its statistics, optionally export it");
  c_cx->add_option("--family", cx.family)->required()->check(CLI::IsMember(families));
  c_cx->add_option("--n", cx.n)->required();
  c_cx->add_option("--m", cx.m);
  c_cx->add_option("--p", cx.p)->required();
  c_cx->add_option("--cap", cx.cap, "maximum number of simplices")->check(CLI::PositiveNumber);
  c_cx->add_option("--format", cx.format)->check(CLI::IsMember({"text", "json"}));
  c_cx->add_option("--out", cx.out_path, "export file");
  c_cx->add_flag("--serial", cx.serial);

  HomologyArgs hom;
  auto* c_hom = app.add_subcommand("homology", "integral homology of a built or exported complex");
  c_hom->add_option("--input", hom.input, "complex export file");
  c_hom->add_option("--family", hom.family)->check(CLI::IsMember(families));
  c_hom->add_option("--n", hom.n);
  c_hom->add_option("--m", hom.m);
  c_hom->add_option("--p", hom.p);
  c_hom->add_option("--cap", hom.cap)->check(CLI::PositiveNumber);
  c_hom->add_flag("--unreduced", hom.unreduced);
  c_hom->add_flag("--no-snf", hom.no_snf, "ranks only, skip torsion");
  c_hom->add_option("--seed", hom.seed, "selects the primes for modular ranks");
  c_hom->add_option("--snf-budget", hom.snf_budget, "largest rows*cols given to the exact engine");
  c_hom->add_option("--format", hom.format)->check(CLI::IsMember({"text", "json"}));
  c_hom->add_option("--out", hom.out_path, "write the report as json");
  c_hom->add_flag("--serial", hom.serial);

  CoinvArgs coinv;
  auto* c_coinv = app.add_subcommand("coinvariants", "rank of the relative homology group");
  auto* c_kernel = app.add_subcommand("kernel", "kernel of the coinvariants map against its prediction");
  for (auto* c : {c_coinv, c_kernel}) {
    c->add_option("--n", coinv.n)->required();
    c->add_option("--p", coinv.p)->required();
    c->add_option("--cap", coinv.cap)->check(CLI::PositiveNumber);
    c->add_option("--seed", coinv.seed);
    c->add_option("--snf-budget", coinv.snf_budget);
    c->add_option("--format", coinv.format)->check(CLI::IsMember({"text", "json"}));
    c->add_flag("--serial", coinv.serial);
  }

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "run the verification suite");
  c_ver->add_option("--level", ver.level)->check(CLI::IsMember({"quick", "full"}));
  c_ver->add_option("--seed", ver.seed);
  c_ver->add_option("--format", ver.format)->check(CLI::IsMember({"text", "json"}));
  c_ver->add_option("--out", ver.out_path, "write outcomes as json, without timings");
  c_ver->add_option("--only", ver.only, "run only checks whose id starts with this prefix");
  c_ver->add_flag("--serial", ver.serial);

  LiftArgs lift;
  auto* c_lift = app.add_subcommand("lift", "lift a matrix of determinant +-1 mod p to the integers");
  c_lift->add_option("--matrix", lift.matrix, "dense matrix file")->required();
  c_lift->add_option("--p", lift.p)->required();
  c_lift->add_option("--out", lift.out_path);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_ranks->parsed()) return cmd_ranks(ranks, out, err);
    if (c_seq->parsed()) return cmd_sequence(seq, out, err);
    if (c_cx->parsed()) return cmd_complex(cx, out, err);
    if (c_hom->parsed()) return cmd_homology(hom, out, err);
    if (c_coinv->parsed()) return cmd_coinvariants(coinv, out, err);
    if (c_kernel->parsed()) return cmd_kernel(coinv, out, err);
    if (c_ver->parsed()) return cmd_verify(ver, out, err);
    if (c_lift->parsed()) return cmd_lift(lift, out, err);
  } catch (const TooLargeError& e) {
    err << "error: " << e.what() << " (projected size " << e.projected() << ")\n";
    return kExitTooLarge;
  } catch (const NotAClosedSurfaceError& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const RankDisagreementError& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace topcoh::cli
