// Copyright 2026 The lampi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance run: one PASS/FAIL line per criterion. The exit status is 0
// iff the failing criteria are exactly those given with --expect-fail.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lampi/corpus.hpp"
#include "lampi/freevars.hpp"
#include "lampi/nameless.hpp"
#include "lampi/rewrite.hpp"
#include "lampi/syntax.hpp"
#include "lampi/termination.hpp"
#include "oracles.hpp"

using namespace lampi;

namespace {

using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr double kGoldenSeconds = 1.0;
constexpr double kSnSeconds = 300.0;
constexpr double kEmbeddingSeconds = 60.0;
constexpr std::size_t kSnMaxSize = 7;
constexpr std::size_t kSnMaxContext = 3;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

// Free-variable tallies shared by criteria 9 and 12.
struct FvTally {
  std::size_t steps = 0;
  std::size_t failures = 0;
  void add(std::size_t s, std::size_t f) {
    steps += s;
    failures += f;
  }
};

std::string suite_detail(const SuiteResult& r) {
  std::string d = std::to_string(r.cases) + " cases, " + std::to_string(r.failures) + " failures";
  if (!r.passed() && !r.notes.empty()) d += "; " + r.notes.front();
  return d;
}

Verdict suite_verdict(const char* name, std::size_t count, bool extra, FvTally& fv) {
  SuiteOptions opt;
  opt.count = count;
  opt.extra_rules = extra;
  SuiteResult r = *run_suite(name, opt);
  fv.add(r.fv_steps, r.fv_failures);
  return {r.passed() && r.cases >= count, suite_detail(r)};
}

Verdict golden() {
  auto t0 = Clock::now();
  SuiteResult r = *run_suite("golden");
  double s = seconds_since(t0);
  return {r.passed() && s < kGoldenSeconds, std::to_string(r.cases - r.failures) + "/" +
                                                std::to_string(r.cases) + " traces in " + secs(s)};
}

Verdict fv_table() {
  const std::vector<std::pair<const char*, const char*>> table = {
      {"x", "[{x}]"},
      {"pi_y * x", "[{}, {x}]"},
      {"pi_z * pi_y * x", "[{}, {}, {x}]"},
      {"lam z. pi_z * pi_y * x", "[{}, {x}]"},
      {"lam y z. pi_z * pi_y * x", "[{x}]"},
      {"lam x y z. pi_z * pi_y * x", "[]"},
      {"x (pi_z * pi_y * x)", "[{x}, {}, {x}]"},
      {"lam z. x (pi_z * pi_y * x)", "[{x}, {x}]"},
      {"lam y z. x (pi_z * pi_y * x)", "[{x}]"},
      {"lam x y z. x (pi_z * pi_y * x)", "[]"},
      {"pi_x * x", "[{}, {x}]"},
      {"lam x. pi_x * x", "[{x}]"},
  };
  std::size_t ok = 0;
  std::string first_bad;
  for (const auto& [term, want] : table) {
    std::string got = print(fv_term(parse_term(term)));
    if (got == want) {
      ++ok;
    } else if (first_bad.empty()) {
      first_bad = std::string("; ") + term + " gave " + got;
    }
  }
  return {ok == table.size(), std::to_string(ok) + "/" + std::to_string(table.size()) + " rows" + first_bad};
}

Verdict translations() {
  using NT = NamelessTerm;
  using NS = NamelessSubst;
  auto J = [](const char* t) { return parse_judgement(t); };
  NT pi1 = NT::clos(NS::pi(), NT::one());
  NT pi_atom = NT::clos(NS::pi(), NT::num(1));
  struct Check {
    std::string what;
    bool ok;
  };
  std::vector<Check> checks = {
      {"x |- x => 1", translate(J("x |- x")) == NamelessExpr{numeral(1)}},
      {"x,y |- x => p * 1", translate(J("x, y |- x")) == NamelessExpr{pi1} && pi1 == numeral(2)},
      {"x,y |- pi_y * x => p * 1", translate(J("x, y |- pi_y * x")) == NamelessExpr{pi1}},
      {"x,y |- x ~ x,y |- pi_y * x", simeq(J("x, y |- x"), J("x, y |- pi_y * x"))},
      {"x,y |- pi_y * x => 2 |- p * 1",
       translate_ext(J("x, y |- pi_y * x")) == NamelessJudgement{2, pi_atom}},
      {"alpha pair 1", alpha_eq(J("x, y |- pi_y * x"), J("x, x |- pi_x * x"))},
      {"x |- lam x. pi_x * x => 1 |- \\ p * 1",
       translate_ext(J("x |- lam x. pi_x * x")) == NamelessJudgement{1, NT::lam(pi_atom)}},
      {"alpha pair 2", alpha_eq(J("x |- lam y. pi_y * x"), J("x |- lam x. pi_x * x"))},
      {"|- lam x. lam x. pi_x * x => 0 |- \\ \\ p * 1",
       translate_ext(J("|- lam x. lam x. pi_x * x")) == NamelessJudgement{0, NT::lam(NT::lam(pi_atom))}},
      {"alpha pair 3", alpha_eq(J("|- lam x. lam y. pi_y * x"), J("|- lam x. lam x. pi_x * x"))},
      {"x,y |- x not alpha x,y |- pi_y * x", !alpha_eq(J("x, y |- x"), J("x, y |- pi_y * x"))},
      {"substitution alpha pair", alpha_eq(J("x, y |- pi_y |> x"), J("x, x |- pi_x |> x"))},
  };
  std::size_t ok = 0;
  std::string first_bad;
  for (const Check& c : checks) {
    if (c.ok) {
      ++ok;
    } else if (first_bad.empty()) {
      first_bad = "; failed: " + c.what;
    }
  }
  return {ok == checks.size(), std::to_string(ok) + "/" + std::to_string(checks.size()) + " examples" + first_bad};
}

std::size_t judgement_size(const Judgement& j) {
  if (const auto* t = std::get_if<TermJ>(&j)) return t->term.size();
  return std::get<SubstJ>(j).sub.size();
}

std::vector<Judgement> sn_roots() {
  const std::vector<Var> vocab = {Var("x"), Var("y")};
  std::vector<Judgement> roots;
  for (TermJ& j : enumerate_term_judgements(kSnMaxSize, vocab, kSnMaxContext)) roots.emplace_back(std::move(j));
  for (SubstJ& j : enumerate_subst_judgements(kSnMaxSize, vocab, kSnMaxContext)) roots.emplace_back(std::move(j));
  // Smallest first, so a timeout still leaves the small cases checked.
  std::stable_sort(roots.begin(), roots.end(), [](const Judgement& a, const Judgement& b) {
    return judgement_size(a) < judgement_size(b);
  });
  return roots;
}

Verdict strong_normalization(bool extra, double limit_seconds, FvTally& fv) {
  std::vector<Judgement> roots = sn_roots();
  RewriteOptions ro;
  ro.beta = false;
  ro.extra_rules = extra;
  auto t0 = Clock::now();
  GraphReport g = explore_spa_graph(roots, ro, 50000000,
                                    std::chrono::milliseconds(static_cast<long long>(limit_seconds * 1000)));
  double s = seconds_since(t0);
  fv.add(g.fv_steps, g.fv_failures);
  std::ostringstream d;
  d << g.roots_done << "/" << roots.size() << " roots explored completely, " << g.nodes << " nodes, "
    << g.edges << " edges in " << secs(s);
  if (g.timed_out) d << "; time limit " << secs(limit_seconds) << " reached at " << g.witness.value_or("?");
  else if (!g.finite) d << "; node cap reached at " << g.witness.value_or("?");
  else if (!g.acyclic) d << "; cycle through " << g.witness.value_or("?");
  bool pass = !g.timed_out && g.finite && g.acyclic && g.roots_done == roots.size() && s < limit_seconds;
  return {pass, d.str()};
}

std::vector<Term> ski_corpus(std::size_t want) {
  const std::vector<Term> base = {parse_term("lam x y z. x z (y z)"), parse_term("lam x y. x"),
                                  parse_term("lam x. x")};
  std::mt19937_64 rng(2026);
  std::vector<Term> out;
  while (out.size() < want) {
    Term m = base[rng() % 3];
    int leaves = 2 + static_cast<int>(rng() % 5);
    for (int i = 1; i < leaves; ++i) {
      Term leaf = base[rng() % 3];
      m = rng() % 2 ? Term::app(m, leaf) : Term::app(leaf, m);
    }
    if (oracle::simply_typable(oracle::db_from_named(m, {}))) out.push_back(m);
  }
  return out;
}

Verdict confluence(bool extra, FvTally& fv) {
  Verdict first = suite_verdict("confluence", 300, extra, fv);
  std::size_t agree = 0;
  std::string first_bad;
  std::vector<Term> terms = ski_corpus(100);
  for (const Term& m : terms) {
    auto expected = oracle::db_normalize(oracle::db_from_named(m, {}), 1000000);
    NormalizeOptions opt;
    opt.rewrite.extra_rules = extra;
    opt.max_steps = 1000000;
    Judgement j{TermJ{Context{}, m}};
    Trace t = normalize_lpi(j, opt);
    const Judgement* prev = &t.start;
    for (const TraceStep& s : t.steps) {
      fv.add(1, fv_step_ok(*prev, s.result) ? 0 : 1);
      prev = &s.result;
    }
    bool ok = expected && t.status == Trace::Status::NormalForm;
    if (ok) {
      NamelessExpr v = translate(t.final());
      ok = oracle::db_equal(oracle::db_from_nameless(std::get<NamelessTerm>(v)), *expected);
    }
    if (ok) {
      ++agree;
    } else if (first_bad.empty()) {
      first_bad = "; disagrees on " + print(m);
    }
  }
  return {first.pass && agree == terms.size(),
          "strategies: " + first.detail + "; combinators: " + std::to_string(agree) + "/" +
              std::to_string(terms.size()) + " match the de Bruijn oracle" + first_bad};
}

Verdict fv_verdict(const FvTally& fv, const std::string& scope) {
  return {fv.failures == 0 && fv.steps > 0,
          std::to_string(fv.steps) + " steps, " + std::to_string(fv.failures) + " increases" + scope};
}

Verdict embedding() {
  auto t0 = Clock::now();
  SuiteOptions opt;
  opt.count = 10000;
  SuiteResult e = *run_suite("embedding", opt);
  QReport q = check_q_decrease(3);
  double s = seconds_since(t0);
  return {e.passed() && e.cases >= 10000 && q.failures.empty() && s < kEmbeddingSeconds,
          std::to_string(e.cases) + " steps embedded, " + std::to_string(e.failures) + " failures; " +
              std::to_string(q.instances) + " labelled rule instances, " + std::to_string(q.failures.size()) +
              " not decreasing; " + secs(s)};
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Acceptance criteria");
  std::string expect_fail;
  std::string only;
  double sn_seconds = kSnSeconds;
  app.add_option("--expect-fail", expect_fail, "Comma-separated criteria known to fail");
  app.add_option("--only", only, "Comma-separated criteria to run");
  app.add_option("--sn-seconds", sn_seconds, "Time limit for the complete reduction graphs")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::set<int> expected = parse_list(expect_fail);
  std::set<int> selected = parse_list(only);
  auto wanted = [&](int c) { return selected.empty() || selected.count(c) > 0; };

  FvTally fv, fv_extra;
  std::map<int, Verdict> verdicts;
  auto run = [&](int c, const char* title, const std::function<Verdict()>& f) {
    if (!wanted(c)) return;
    Verdict v = f();
    verdicts[c] = v;
    std::printf("criterion %2d  %s  %s: %s\n", c, v.pass ? "PASS" : "FAIL", title, v.detail.c_str());
    std::fflush(stdout);
  };

  run(1, "golden traces", golden);
  run(2, "free-variable table", fv_table);
  run(3, "translations and alpha equality", translations);
  run(4, "strong normalization without beta", [&] { return strong_normalization(false, sn_seconds, fv); });
  run(5, "subject reduction", [&] { return suite_verdict("subject-reduction", 1000, false, fv); });
  run(6, "normal-form shape", [&] { return suite_verdict("nf-shape", 1000, false, fv); });
  run(7, "commuting square", [&] { return suite_verdict("commuting", 500, false, fv); });
  run(8, "confluence", [&] { return confluence(false, fv); });
  run(9, "free variables never grow", [&] {
    std::string scope = " over criteria 4-8";
    if (verdicts.count(4) && !verdicts[4].pass) scope += " (criterion 4 only as far as it got)";
    return fv_verdict(fv, scope);
  });
  run(10, "embedding and labelled decrease", embedding);
  run(11, "print/parse round trip", [&] { return suite_verdict("roundtrip", 10000, false, fv); });
  run(12, "extra rules", [&] {
    // Criteria 5-9 again, and the bounded complete graphs; criterion 4 at
    // full size is not repeated.
    std::vector<std::pair<std::string, Verdict>> parts;
    SuiteOptions sn;
    sn.extra_rules = true;
    SuiteResult bounded = *run_suite("sn", sn);
    fv_extra.add(bounded.fv_steps, bounded.fv_failures);
    parts.emplace_back("sn (size <= 5)", Verdict{bounded.passed(), suite_detail(bounded)});
    parts.emplace_back("5", suite_verdict("subject-reduction", 1000, true, fv_extra));
    parts.emplace_back("6", suite_verdict("nf-shape", 1000, true, fv_extra));
    parts.emplace_back("7", suite_verdict("commuting", 500, true, fv_extra));
    parts.emplace_back("8", confluence(true, fv_extra));
    parts.emplace_back("9", fv_verdict(fv_extra, ""));
    bool all = true;
    std::string d;
    for (const auto& [name, v] : parts) {
      all = all && v.pass;
      if (!d.empty()) d += ", ";
      d += name + (v.pass ? " ok" : " FAILED (" + v.detail + ")");
    }
    bool sn_full = verdicts.count(4) && verdicts[4].pass;
    if (!sn_full) d += "; criterion 4 is not green, so criterion 12 is not either";
    return Verdict{all && sn_full, d};
  });

  std::set<int> failed;
  for (const auto& [c, v] : verdicts)
    if (!v.pass) failed.insert(c);
  std::set<int> expected_run;
  for (int c : expected)
    if (wanted(c)) expected_run.insert(c);
  std::size_t passed = verdicts.size() - failed.size();
  std::printf("%zu/%zu criteria passed\n", passed, verdicts.size());
  if (failed != expected_run) {
    std::printf("unexpected outcome: failing set differs from --expect-fail\n");
    return 1;
  }
  return 0;
}
