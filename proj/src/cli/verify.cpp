#include "topcoh/cli/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "topcoh/cli/io.hpp"
#include "topcoh/complexes/builders.hpp"
#include "topcoh/formulas/formulas.hpp"
#include "topcoh/gfq/enumerate.hpp"
#include "topcoh/gfq/linalg.hpp"
#include "topcoh/homology/homology.hpp"
#include "topcoh/lifting/lifting.hpp"

namespace topcoh::cli {

namespace {

using complexes::Family;
using formulas::steinberg_rank;

const char* const kTableP5[] = {
    "1",
    "1",
    "11",
    "621",
    "176331",
    "250654141",
    "1781972405051",
    "63346001119010061",
    "11259312615761079960171",
    "10006344346503001479394156381",
    "44464067922769996760030750509009691",
    "987899991107026778582667588995859270541101",
    "109745515200463561297438405787408294210000904481611",
    "60957982865169441101378571385234702783255341037103258372221",
    "169295103797089744818524470008237065225058191012577153712309414663931",
    "2350867829470159774034814041007591566603522538519291648712545382850352884817741",
};

CheckResult compare(const std::string& observed, const std::string& expected, std::string note = {}) {
  return {observed == expected ? Status::Pass : Status::Fail, observed, expected, std::move(note)};
}

CheckResult compare(const mpz_class& observed, const mpz_class& expected, std::string note = {}) {
  return compare(observed.get_str(), expected.get_str(), std::move(note));
}

std::string tag(std::size_t n, std::uint32_t p) { return "n" + std::to_string(n) + ".p" + std::to_string(p); }

Level level_for(std::size_t n, std::uint32_t p) { return p <= 5 && n <= 3 ? Level::Quick : Level::Full; }

homology::HomologyOptions homology_options(const VerifyOptions& opt) {
  homology::HomologyOptions h;
  h.seed = opt.seed;
  h.exec = opt.exec;
  return h;
}

complexes::BuildOptions build_options(const VerifyOptions& opt) {
  complexes::BuildOptions b;
  b.exec = opt.exec;
  return b;
}

// Reduced Betti numbers as "b_-1 b_0 ... b_top".
std::string betti_string(const homology::HomologyReport& r) { return join(r.betti); }

// Expected reduced Betti vector of a complex concentrated in the top degree.
std::string concentrated(int top, const mpz_class& value) {
  std::vector<mpz_class> v(static_cast<std::size_t>(top + 2), 0);
  v.back() = value;
  return join(v);
}

void add_formula_checks(std::vector<Check>& out) {
  out.push_back({"formulas.t.p5-table", "t_n for p = 5, n <= 15 against the published table", "published table",
                 Level::Quick, [](const VerifyOptions& opt) {
                   const auto t = formulas::t_sequence(5, 15, opt.exec);
                   std::vector<mpz_class> expected;
                   for (const char* s : kTableP5) expected.emplace_back(s);
                   return compare(join(t.values), join(expected));
                 }});

  out.push_back({"formulas.t.p3-small", "t_0 .. t_3 for p = 3", "hand evaluation", Level::Quick,
                 [](const VerifyOptions& opt) {
                   return compare(join(formulas::t_sequence(3, 3, opt.exec).values), "1 1 3 27");
                 }});

  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    out.push_back({"formulas.t.timing-p" + std::to_string(p), "t_n for n <= 200 within 60 s", "runtime budget",
                   Level::Quick, [p](const VerifyOptions& opt) {
                     // The outcome's own duration is the measurement; observed stays deterministic.
                     const auto start = std::chrono::steady_clock::now();
                     formulas::t_sequence(p, 200, opt.exec);
                     const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                     return CheckResult{s < 60 ? Status::Pass : Status::Fail, s < 60 ? "under 60 s" : "over 60 s",
                                        "under 60 s", {}};
                   }});
  }

  out.push_back({"formulas.t.serial-parallel", "parallel kernel equals the serial reference, n <= 200",
                 "reference implementation", Level::Quick, [](const VerifyOptions&) {
                   for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
                     const auto par = formulas::t_sequence(p, 200, Execution::Parallel);
                     const auto ref = formulas::t_sequence_reference(p, 200);
                     if (par.values != ref.values)
                       return compare("mismatch at p = " + std::to_string(p), "identical sequences");
                   }
                   return compare("identical sequences", "identical sequences");
                 }});

  out.push_back({"formulas.gaussian-identities", "q-Pascal and symmetry for n <= 40", "identity", Level::Quick,
                 [](const VerifyOptions&) {
                   for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u}) {
                     for (std::size_t n = 1; n <= 40; ++n) {
                       for (std::size_t k = 0; k <= n; ++k) {
                         const auto g = formulas::gaussian_binomial(n, k, p);
                         if (g != formulas::gaussian_binomial(n, n - k, p))
                           return compare("symmetry fails at " + tag(n, p) + " k" + std::to_string(k), "all hold");
                         if (k >= 1 && k < n) {
                           mpz_class pk;
                           mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
                           const mpz_class rhs = formulas::gaussian_binomial(n - 1, k - 1, p) +
                                            pk * formulas::gaussian_binomial(n - 1, k, p);
                           if (g != rhs)
                             return compare("q-Pascal fails at " + tag(n, p) + " k" + std::to_string(k), "all hold");
                         }
                       }
                     }
                   }
                   return compare("all hold", "all hold");
                 }});

  out.push_back({"formulas.bound-dominance", "t_n > t'_n for p in {5,7,11,13}, 2 <= n <= 30", "inequality",
                 Level::Quick, [](const VerifyOptions& opt) {
                   for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
                     const auto t = formulas::t_sequence(p, 30, opt.exec);
                     const auto tp = formulas::paraschivescu_sequence(p, 30);
                     for (std::size_t n = 2; n <= 30; ++n)
                       if (!(t.at(n) > tp.at(n)))
                         return compare("t_n <= t'_n at " + tag(n, p), "strict for every n");
                   }
                   return compare("strict for every n", "strict for every n");
                 }});

  out.push_back({"formulas.paraschivescu-forms", "closed form of t'_n equals its recursion, n <= 200",
                 "closed form", Level::Quick, [](const VerifyOptions&) {
                   // paraschivescu_sequence throws if the two evaluations disagree.
                   for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) formulas::paraschivescu_sequence(p, 200);
                   return compare("agree", "agree");
                 }});

  out.push_back({"formulas.modular-genus", "genus values for p in {3,5,7,11}", "closed form", Level::Quick,
                 [](const VerifyOptions&) {
                   std::vector<mpz_class> g;
                   for (std::uint32_t p : {3u, 5u, 7u, 11u}) g.push_back(formulas::modular_genus(p));
                   return compare(join(g), "0 0 3 26");
                 }});

  out.push_back({"formulas.lower-bound", "lower bound at n = 3 for p = 5 and p = 7", "published table",
                 Level::Quick, [](const VerifyOptions&) {
                   return compare(join({formulas::top_cohomology_lower_bound(5, 3),
                                        formulas::top_cohomology_lower_bound(7, 3)}),
                                  "621 4789");
                 }});

  out.push_back({"gfq.avoiding-line", "subspaces avoiding a line, all lines, n <= 4, p in {2,3,5}", "closed form",
                 Level::Quick, [](const VerifyOptions&) {
                   std::size_t cases = 0;
                   for (std::uint32_t p : {2u, 3u, 5u}) {
                     for (std::size_t n = 2; n <= 4; ++n) {
                       for (const auto& line : gfq::enumerate_subspaces(n, p, 1)) {
                         for (std::size_t k = 1; k + 1 <= n; ++k) {
                           mpz_class pk;
                           mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
                           const mpz_class expected = pk * formulas::gaussian_binomial(n - 1, k, p);
                           const auto observed = gfq::count_avoiding_line(n, p, k, line);
                           if (observed != expected)
                             return compare(observed, expected, "at " + tag(n, p) + " k" + std::to_string(k));
                           ++cases;
                         }
                       }
                     }
                   }
                   return compare(std::to_string(cases) + " cases agree", std::to_string(cases) + " cases agree");
                 }});
}

void add_homology_checks(std::vector<Check>& out) {
  // Oriented Tits building: cohomology concentrated in degree n-2 with rank t_n.
  const std::pair<std::size_t, std::uint32_t> td_cases[] = {{2, 3}, {2, 5}, {2, 7}, {2, 11},
                                                            {3, 2}, {3, 3}, {3, 5}, {3, 7}};
  for (auto [n, p] : td_cases) {
    out.push_back({"homology.tits-oriented." + tag(n, p), "reduced Betti of the oriented Tits building",
                   p == 2 ? "Steinberg rank" : "t recursion", level_for(n, p), [n, p](const VerifyOptions& opt) {
                     // Over F_2 every unit is a sign, so the orientation is vacuous and t_n is the Steinberg rank.
                     const mpz_class t = p == 2 ? steinberg_rank(2, n) : formulas::t_sequence(p, n, opt.exec).at(n);
                     const auto k = complexes::build_tits_oriented(n, p, build_options(opt));
                     const auto r = homology::betti(k, homology_options(opt));
                     return compare(betti_string(r), concentrated(static_cast<int>(n) - 2, t), r.method);
                   }});
  }

  const std::pair<std::size_t, std::uint32_t> tits_cases[] = {{2, 2}, {2, 3}, {2, 5}, {2, 7}, {3, 2}, {3, 3}};
  for (auto [n, p] : tits_cases) {
    out.push_back({"homology.tits." + tag(n, p), "reduced Betti of the Tits building", "Steinberg rank",
                   level_for(n, p), [n, p](const VerifyOptions& opt) {
                     const auto k = complexes::build_tits(n, p, build_options(opt));
                     const auto r = homology::betti(k, homology_options(opt));
                     return compare(betti_string(r), concentrated(static_cast<int>(n) - 2, steinberg_rank(p, n)),
                                    r.method);
                   }});
  }

  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    out.push_back({"homology.surface.p" + std::to_string(p), "BDA(2,0,p) is a closed orientable surface",
                   "modular genus", level_for(2, p), [p](const VerifyOptions& opt) {
                     const auto k = complexes::build_BDA_pm(2, 0, p, build_options(opt));
                     const auto s = homology::surface_check(k, homology_options(opt));
                     return compare("genus " + s.genus.get_str(), "genus " + formulas::modular_genus(p).get_str(),
                                    s.method);
                   }});
  }

  out.push_back({"homology.surface.p2-triangle", "BDA(2,0,2) is a single acyclic triangle", "hand evaluation",
                 Level::Quick, [](const VerifyOptions& opt) {
                   const auto k = complexes::build_BDA_pm(2, 0, 2, build_options(opt));
                   const auto st = complexes::stats(k);
                   std::vector<mpz_class> counts(st.counts.begin(), st.counts.end());
                   const auto r = homology::betti(k, homology_options(opt));
                   return compare("counts " + join(counts) + ", betti " + betti_string(r),
                                  "counts 3 3 1, betti 0 0 0 0");
                 }});

  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    out.push_back({"homology.coinvariants." + tag(2, p), "coinvariants rank for n = 2", "genus and t_2",
                   level_for(2, p), [p](const VerifyOptions& opt) {
                     const auto c = homology::coinvariants_rank(2, p, homology_options(opt));
                     const mpz_class expected = 2 * formulas::modular_genus(p) + formulas::t_sequence(p, 2).at(2);
                     return compare(c.rank, expected, c.method);
                   }});
  }
  out.push_back({"homology.coinvariants." + tag(3, 3), "coinvariants rank for n = 3", "Steinberg rank",
                 Level::Quick, [](const VerifyOptions& opt) {
                   const auto c = homology::coinvariants_rank(3, 3, homology_options(opt));
                   return compare(c.rank, mpz_class(27), c.method);
                 }});
  out.push_back({"homology.coinvariants." + tag(3, 5), "coinvariants rank for n = 3", "published table",
                 Level::Full, [](const VerifyOptions& opt) {
                   const auto c = homology::coinvariants_rank(3, 5, homology_options(opt));
                   std::ostringstream note;
                   note << c.method << ", " << c.rows << " x " << c.cols;
                   return compare(c.rank, mpz_class(621), note.str());
                 }});

  out.push_back({"homology.kernel." + tag(2, 5), "kernel of the coinvariants map vanishes", "injectivity",
                 Level::Quick, [](const VerifyOptions& opt) {
                   const auto k = homology::kernel_report(2, 5, homology_options(opt));
                   return compare(k.kernel_rank, mpz_class(0), k.method);
                 }});
  out.push_back({"homology.kernel." + tag(2, 7), "kernel of the coinvariants map equals the prediction",
                 "twice the genus", Level::Full, [](const VerifyOptions& opt) {
                   const auto k = homology::kernel_report(2, 7, homology_options(opt));
                   return compare("kernel " + k.kernel_rank.get_str() + ", predicted " +
                                      k.predicted_kernel_lower_bound.get_str(),
                                  "kernel 6, predicted 6", k.method);
                 }});

  struct Connectivity {
    Family family;
    std::size_t n, m;
    std::uint32_t p;
    int through;
  };
  std::vector<Connectivity> conn;
  for (Family f : {Family::BPm, Family::BDPm})
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
      for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t m = 0; n + m <= 3; ++m) conn.push_back({f, n, m, p, static_cast<int>(n) - 2});
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t n = 1; n <= 3; ++n) conn.push_back({Family::BDAPm, n, 0, p, static_cast<int>(n) - 1});
  for (std::size_t n = 2; n <= 3; ++n) conn.push_back({Family::BDAPm, n, 0, 7, static_cast<int>(n) - 2});

  for (const auto& c : conn) {
    const std::string id = "homology.connectivity." + complexes::family_name(c.family) + ".n" + std::to_string(c.n) +
                           ".m" + std::to_string(c.m) + ".p" + std::to_string(c.p);
    out.push_back({id, "reduced homology vanishes through degree " + std::to_string(c.through), "connectivity",
                   level_for(c.n + c.m, c.p), [c](const VerifyOptions& opt) {
                     const auto k = complexes::build(c.family, c.n, c.m, c.p, build_options(opt));
                     const auto a = homology::acyclicity_check(k, c.through, homology_options(opt));
                     std::string note = a.method;
                     if (a.rank_only) note += ", rank-only: torsion not certified";
                     return compare("betti " + join(a.betti), "betti " + concentrated(c.through, 0), note);
                   }});
  }

  out.push_back({"homology.bda-b1." + tag(2, 7), "first reduced Betti of BDA(2,0,7) is nonzero", "twice the genus",
                 Level::Full, [](const VerifyOptions& opt) {
                   const auto k = complexes::build_BDA_pm(2, 0, 7, build_options(opt));
                   const auto r = homology::betti(k, homology_options(opt));
                   return compare(r.betti_at(1), mpz_class(6), r.method);
                 }});
}

gfq::Matrix random_sl(std::mt19937_64& rng, const gfq::Field& f, std::size_t n) {
  while (true) {
    gfq::Matrix m(n, n);
    for (auto& x : m.data) x = static_cast<gfq::Residue>(rng() % f.p());
    const gfq::Residue d = gfq::det(f, m);
    if (d == 0) continue;
    const gfq::Residue s = f.inv(d);
    for (std::size_t j = 0; j < n; ++j) m(0, j) = f.mul(m(0, j), s);
    return m;
  }
}

void add_lifting_checks(std::vector<Check>& out) {
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      out.push_back({"lifting.roundtrip." + tag(n, p), "500 random SL_n(F_p) lifts reduce back with det 1",
                     "construction", level_for(n, p), [n, p](const VerifyOptions& opt) {
                       const gfq::Field f(p);
                       std::mt19937_64 rng(opt.seed ^ (n * 1000 + p));
                       for (int s = 0; s < 500; ++s) {
                         const auto m = random_sl(rng, f, n);
                         const auto l = lifting::lift_sl(f, m);
                         if (lifting::reduce(f, l) != m) return compare("sample " + std::to_string(s) + " does not reduce", "500 ok");
                         if (lifting::determinant(l) != 1)
                           return compare("sample " + std::to_string(s) + " has det " + lifting::determinant(l).get_str(),
                                          "500 ok");
                       }
                       return compare("500 ok", "500 ok");
                     }});
    }
  }
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skipped:
      return "skipped";
  }
  return "unknown";
}

std::vector<Check> builtin_checks() {
  std::vector<Check> out;
  add_formula_checks(out);
  add_homology_checks(out);
  add_lifting_checks(out);
  return out;
}

std::vector<Outcome> run_checks(const std::vector<Check>& checks, Level level, const VerifyOptions& opt) {
  std::vector<const Check*> selected;
  for (const auto& c : checks)
    if (level == Level::Full || c.level == Level::Quick) selected.push_back(&c);
  std::sort(selected.begin(), selected.end(), [](const Check* a, const Check* b) { return a->id < b->id; });

  std::vector<Outcome> out;
  for (const Check* c : selected) {
    Outcome o;
    o.id = c->id;
    o.title = c->title;
    o.source = c->source;
    const auto start = std::chrono::steady_clock::now();
    try {
      CheckResult r = c->run(opt);
      o.status = r.status;
      o.observed = std::move(r.observed);
      o.expected = std::move(r.expected);
      o.note = std::move(r.note);
    } catch (const std::exception& e) {
      o.status = Status::Fail;
      o.observed = std::string("exception: ") + e.what();
      o.expected = "no exception";
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(o));
  }
  return out;
}

nlohmann::json outcomes_json(const std::vector<Outcome>& outcomes) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& o : outcomes) {
    arr.push_back({{"id", o.id},
                   {"title", o.title},
                   {"status", to_string(o.status)},
                   {"observed", o.observed},
                   {"expected", o.expected},
                   {"source", o.source},
                   {"note", o.note},
                   {"seconds", o.seconds}});
  }
  return arr;
}

}  // namespace topcoh::cli
