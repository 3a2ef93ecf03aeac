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

#include "lampi/corpus.hpp"

#include <chrono>
#include <functional>
#include <json.hpp>
#include <map>
#include <random>
#include <unordered_map>
#include <utility>

#include "lampi/freevars.hpp"
#include "lampi/nameless.hpp"
#include "lampi/syntax.hpp"
#include "lampi/termination.hpp"
#include "lampi/wellformed.hpp"

namespace lampi {
namespace {

constexpr std::size_t kMaxNotes = 5;

std::string ctx_key(const Context& ctx, std::size_t n) {
  std::string k = std::to_string(n) + ":";
  for (const Var& v : ctx.vars()) k += v.name() + ",";
  return k;
}

class Enumerator {
 public:
  explicit Enumerator(const std::vector<Var>& vocab) : vocab_(vocab) {}

  // Terms of exactly n nodes derivable in ctx.
  const std::vector<Term>& terms(const Context& ctx, std::size_t n) {
    std::string key = ctx_key(ctx, n);
    if (auto it = terms_.find(key); it != terms_.end()) return it->second;
    std::vector<Term> out;
    if (n == 1) {
      std::set<Var> seen;
      for (const Var& v : ctx.vars()) {
        if (seen.insert(v).second) out.push_back(Term::var(v));
      }
    } else {
      for (const Var& a : vocab_) {
        for (const Term& b : terms(ctx.pushed(a), n - 1)) out.push_back(Term::lam(a, b));
      }
      for (std::size_t k = 1; k + 2 <= n; ++k) {
        const std::vector<Term> fs = terms(ctx, k);
        const std::vector<Term> xs = terms(ctx, n - 1 - k);
        for (const Term& f : fs) {
          for (const Term& x : xs) out.push_back(Term::app(f, x));
        }
        const std::vector<std::pair<Subst, Context>> ss = substs(ctx, k);
        for (const auto& [s, cod] : ss) {
          for (const Term& m : terms(cod, n - 1 - k)) out.push_back(Term::clos(s, m));
        }
      }
    }
    return terms_[key] = std::move(out);
  }

  // Substitutions of exactly n nodes over ctx, with their codomains.
  const std::vector<std::pair<Subst, Context>>& substs(const Context& ctx, std::size_t n) {
    std::string key = ctx_key(ctx, n);
    if (auto it = substs_.find(key); it != substs_.end()) return it->second;
    std::vector<std::pair<Subst, Context>> out;
    if (n == 1) {
      out.emplace_back(Subst::id(), ctx);
      if (!ctx.empty()) out.emplace_back(Subst::pi(ctx.back()), ctx.popped());
    } else {
      for (std::size_t k = 1; k + 2 <= n; ++k) {
        const std::vector<std::pair<Subst, Context>> ss = substs(ctx, k);
        const std::vector<Term> ns = terms(ctx, n - 1 - k);
        for (const auto& [s, cod] : ss) {
          for (const Term& m : ns) {
            for (const Var& a : vocab_) out.emplace_back(Subst::cons(s, m, a), cod.pushed(a));
          }
        }
        for (const auto& [s, mid] : ss) {
          for (const auto& [q, cod] : substs(mid, n - 1 - k)) out.emplace_back(Subst::comp(s, q), cod);
        }
      }
    }
    return substs_[key] = std::move(out);
  }

 private:
  const std::vector<Var>& vocab_;
  std::unordered_map<std::string, std::vector<Term>> terms_;
  std::unordered_map<std::string, std::vector<std::pair<Subst, Context>>> substs_;
};

std::vector<Context> all_contexts(const std::vector<Var>& vocab, std::size_t max_len) {
  std::vector<Context> out = {Context{}};
  std::vector<Context> layer = {Context{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Context> next;
    for (const Context& c : layer) {
      for (const Var& v : vocab) next.push_back(c.pushed(v));
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

const std::vector<FVSeq>& fv_samples() {
  static const std::vector<FVSeq> kSamples = [] {
    Var x("x");
    Var y("y");
    Var z("z");
    return std::vector<FVSeq>{
        FVSeq{},
        FVSeq({{x}}),
        FVSeq({{y}, {x}}),
        FVSeq({{x, y}, {}, {z}}),
        FVSeq({{}, {x, z}, {y}}),
    };
  }();
  return kSamples;
}

void note(SuiteResult& r, std::string msg) {
  if (r.notes.size() < kMaxNotes) r.notes.push_back(std::move(msg));
}

void fail(SuiteResult& r, std::string msg) {
  ++r.failures;
  note(r, std::move(msg));
}

// Checks the free-variable condition on every step of `t`.
void check_fv(SuiteResult& r, const Trace& t) {
  const Judgement* prev = &t.start;
  for (const TraceStep& s : t.steps) {
    ++r.fv_steps;
    if (!fv_step_ok(*prev, s.result)) {
      ++r.fv_failures;
      note(r, "free variables grow: " + print(*prev) + " -> " + print(s.result));
    }
    prev = &s.result;
  }
}

NormalizeOptions spa_options(const SuiteOptions& opt, Strategy strategy = Strategy::Leftmost,
                             std::uint64_t seed = 0) {
  NormalizeOptions n;
  n.rewrite.beta = false;
  n.rewrite.extra_rules = opt.extra_rules;
  n.strategy = strategy;
  n.seed = seed;
  return n;
}

std::vector<Var> small_vocab() { return {Var("x"), Var("y")}; }

std::size_t or_default(std::size_t v, std::size_t d) { return v == 0 ? d : v; }

// ---------------------------------------------------------------------------

SuiteResult suite_golden(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "golden";
  for (const GoldenTrace& g : golden_traces()) {
    ++r.cases;
    NormalizeOptions n;
    n.rewrite.extra_rules = opt.extra_rules;
    Trace t = normalize_lpi(parse_judgement(g.input), n);
    std::string got = print(t.final());
    if (got != g.expected) fail(r, g.input + " ends in " + got + ", expected " + g.expected);
  }
  return r;
}

SuiteResult suite_sn(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "sn";
  // Reduct counts grow exponentially past size 5: copies made by Map reduce
  // independently, and every interleaving is a distinct node.
  std::size_t bound = or_default(opt.budget, 5);
  std::size_t ctx = or_default(opt.context_bound, 1);
  std::vector<Var> vocab = small_vocab();
  std::vector<Judgement> roots;
  for (TermJ& j : enumerate_term_judgements(bound, vocab, ctx)) roots.emplace_back(std::move(j));
  for (SubstJ& j : enumerate_subst_judgements(bound, vocab, ctx)) roots.emplace_back(std::move(j));
  RewriteOptions ro;
  ro.beta = false;
  ro.extra_rules = opt.extra_rules;
  GraphReport g = explore_spa_graph(roots, ro, 20000000);
  r.cases = g.roots;
  r.fv_steps = g.fv_steps;
  r.fv_failures = g.fv_failures;
  note(r, "size <= " + std::to_string(bound) + ", context length <= " + std::to_string(ctx));
  note(r, "roots " + std::to_string(g.roots) + ", nodes " + std::to_string(g.nodes) + ", edges " +
              std::to_string(g.edges));
  if (!g.finite) fail(r, "exploration exceeded the node cap at " + g.witness.value_or("?"));
  if (!g.acyclic) fail(r, "cycle through " + g.witness.value_or("?"));
  return r;
}

SuiteResult suite_subject_reduction(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "subject-reduction";
  std::size_t count = or_default(opt.count, 1000);
  std::size_t budget = or_default(opt.budget, 10);
  std::vector<Judgement> js = random_judgements(opt.seed, count, budget, default_vocabulary());
  for (std::size_t i = 0; i < js.size(); ++i) {
    ++r.cases;
    Trace t = normalize_spa(js[i], spa_options(opt, Strategy::Random, opt.seed + i));
    check_fv(r, t);
    for (const TraceStep& s : t.steps) {
      if (!is_derivable(s.result)) {
        fail(r, "not derivable after " + std::string(rule_name(s.redex.rule)) + ": " + print(s.result));
        break;
      }
    }
  }
  return r;
}

SuiteResult suite_nf_shape(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "nf-shape";
  std::size_t count = or_default(opt.count, 1000);
  std::size_t budget = or_default(opt.budget, 10);
  std::vector<Judgement> js = random_judgements(opt.seed, count, budget, default_vocabulary());
  std::size_t substs = 0;
  for (const Judgement& j : js) {
    ++r.cases;
    Trace t = normalize_spa(j, spa_options(opt));
    check_fv(r, t);
    const Judgement& nf = t.final();
    if (const SubstJ* s = std::get_if<SubstJ>(&nf)) {
      ++substs;
      if (classify_subst_nf(s->sub).kind == SubstShape::Kind::NotNormalShape) {
        fail(r, "normal substitution of no known shape: " + print(nf));
      }
    } else if (!is_pure(std::get<TermJ>(nf).term)) {
      fail(r, "normal term is not pure: " + print(nf));
    }
  }
  note(r, std::to_string(substs) + " substitution judgements");
  return r;
}

SuiteResult suite_commuting(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "commuting";
  std::size_t count = or_default(opt.count, 500);
  std::size_t budget = or_default(opt.budget, 10);
  std::vector<Judgement> js = random_judgements(opt.seed, count, budget, default_vocabulary());
  for (const Judgement& j : js) {
    ++r.cases;
    Trace t = normalize_spa(j, spa_options(opt));
    check_fv(r, t);
    NamelessExpr u = translate(j);
    NamelessExpr v = translate(t.final());
    NamelessExpr su = std::holds_alternative<NamelessTerm>(u)
                          ? NamelessExpr{sigma_normalize(std::get<NamelessTerm>(u))}
                          : NamelessExpr{sigma_normalize(std::get<NamelessSubst>(u))};
    if (!(su == v)) fail(r, "square does not commute for " + print(j));
  }
  return r;
}

SuiteResult suite_confluence(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "confluence";
  std::size_t count = or_default(opt.count, 300);
  std::size_t budget = or_default(opt.budget, 10);
  std::vector<Judgement> js = random_judgements(opt.seed, count, budget, default_vocabulary());
  for (const Judgement& j : js) {
    ++r.cases;
    Trace a = normalize_spa(j, spa_options(opt, Strategy::Leftmost));
    Trace b = normalize_spa(j, spa_options(opt, Strategy::Rightmost));
    check_fv(r, a);
    check_fv(r, b);
    if (!alpha_eq(a.final(), b.final())) {
      fail(r, print(j) + ": " + print(a.final()) + " vs " + print(b.final()));
    }
  }
  return r;
}

// Closed terms built from S, K and I by application.
Term combinator(std::mt19937_64& rng, std::size_t leaves) {
  if (leaves == 1) {
    static const std::vector<Term> kBase = {
        parse_term("lam x y z. x z (y z)"),
        parse_term("lam x y. x"),
        parse_term("lam x. x"),
    };
    return kBase[std::uniform_int_distribution<std::size_t>(0, 2)(rng)];
  }
  std::size_t left = std::uniform_int_distribution<std::size_t>(1, leaves - 1)(rng);
  Term f = combinator(rng, left);
  return Term::app(f, combinator(rng, leaves - left));
}

SuiteResult suite_lpi_beta(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "lpi-beta";
  std::size_t count = or_default(opt.count, 100);
  std::size_t leaves = or_default(opt.budget, 6);
  std::mt19937_64 rng(opt.seed);
  std::size_t tries = 0;
  while (r.cases < count && tries < 100 * count) {
    ++tries;
    std::size_t n = std::uniform_int_distribution<std::size_t>(2, leaves)(rng);
    Judgement j = TermJ{Context{}, combinator(rng, n)};
    NamelessTerm u = sigma_normalize(std::get<NamelessTerm>(translate(j)));
    std::optional<NamelessTerm> nf = beta_normalize_pure(u, 200);
    if (!nf) continue;
    ++r.cases;
    NormalizeOptions no;
    no.rewrite.extra_rules = opt.extra_rules;
    no.max_steps = 200000;
    Trace t = normalize_lpi(j, no);
    check_fv(r, t);
    if (t.status != Trace::Status::NormalForm) {
      fail(r, "no normal form within the step budget: " + print(j));
      continue;
    }
    NamelessExpr v = translate(t.final());
    if (!(v == NamelessExpr{*nf})) fail(r, print(j) + " normalizes to " + print(t.final()));
  }
  return r;
}

SuiteResult suite_embedding(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "embedding";
  std::size_t count = or_default(opt.count, 10000);
  std::size_t budget = or_default(opt.budget, 10);
  RewriteOptions ro;
  ro.beta = false;
  std::size_t coherent = 0;
  std::uint64_t seed = opt.seed;
  std::uint64_t pick = opt.seed ^ 0x5eedULL;
  std::mt19937_64 rng(pick);
  while (r.cases < count) {
    TermJ j = generate(seed++, budget, default_vocabulary());
    Term m = lambda_closure(j.ctx, j.term);
    for (std::size_t walk = 0; walk < 200 && r.cases < count; ++walk) {
      std::vector<Redex> rs = redexes(Expr{m}, ro);
      if (rs.empty()) break;
      const Redex& red = rs[std::uniform_int_distribution<std::size_t>(0, rs.size() - 1)(rng)];
      Term next = std::get<Term>(step(Expr{m}, red, ro));
      ++r.cases;
      try {
        std::vector<RStep> steps = embed_step(m, red);
        LabTerm prev = star(m);
        for (const RStep& s : steps) {
          LabTerm q = q_step(label(prev), s.position, s.rule, s.fresh);
          if (!decr_reachable(q, label(s.result))) {
            fail(r, "labels not coherent for " + std::string(lab_rule_name(s.rule)) + " on " + print(prev));
          } else {
            ++coherent;
          }
          prev = s.result;
        }
      } catch (const std::exception& e) {
        fail(r, std::string(rule_name(red.rule)) + " on " + print(m) + ": " + e.what());
      }
      m = next;
    }
  }
  note(r, std::to_string(coherent) + " labelled steps coherent");
  return r;
}

SuiteResult suite_q_decrease(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "q-decrease";
  QReport rep = check_q_decrease(or_default(opt.budget, 3));
  r.cases = rep.instances;
  for (const QInstance& f : rep.failures) {
    fail(r, std::string(lab_rule_name(f.rule)) + " " + f.params + ": " + print(f.lhs) + " -> " + print(f.rhs));
  }
  note(r, std::to_string(rep.rules_checked) + " rule schemas");
  return r;
}

template <typename T, typename P>
void round_trip(SuiteResult& r, const T& value, P parse_fn) {
  std::string text = print(value);
  try {
    if (!(parse_fn(text) == value)) fail(r, "round trip changes " + text);
  } catch (const std::exception& e) {
    fail(r, "cannot parse " + text + ": " + e.what());
  }
}

SuiteResult suite_roundtrip(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "roundtrip";
  std::size_t count = or_default(opt.count, 10000);
  std::size_t budget = or_default(opt.budget, 10);
  const std::vector<Var> vocab = default_vocabulary();
  for (std::size_t i = 0; i < count; ++i) {
    ++r.cases;
    std::uint64_t seed = opt.seed + i;
    std::size_t b = 1 + i % budget;
    if (i % 2 == 0) {
      TermJ j = generate(seed, b, vocab);
      round_trip(r, Judgement{j}, parse_judgement);
      round_trip(r, j.term, parse_term);
      if (!ok(derive(Judgement{j}))) fail(r, "generated judgement not derivable: " + print(Judgement{j}));
    } else {
      SubstJ j = generate_subst(seed, b, vocab);
      round_trip(r, Judgement{j}, parse_judgement);
      round_trip(r, j.sub, parse_subst);
      if (!ok(derive(Judgement{j}))) fail(r, "generated judgement not derivable: " + print(Judgement{j}));
    }
  }
  return r;
}

using SuiteFn = SuiteResult (*)(const SuiteOptions&);

const std::vector<std::pair<std::string_view, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string_view, SuiteFn>> kSuites = {
      {"golden", suite_golden},
      {"sn", suite_sn},
      {"subject-reduction", suite_subject_reduction},
      {"nf-shape", suite_nf_shape},
      {"commuting", suite_commuting},
      {"confluence", suite_confluence},
      {"lpi-beta", suite_lpi_beta},
      {"embedding", suite_embedding},
      {"q-decrease", suite_q_decrease},
      {"roundtrip", suite_roundtrip},
  };
  return kSuites;
}

}  // namespace

std::vector<TermJ> enumerate_term_judgements(std::size_t max_size, const std::vector<Var>& vocab,
                                             std::size_t max_ctx) {
  Enumerator e(vocab);
  std::vector<TermJ> out;
  for (const Context& ctx : all_contexts(vocab, max_ctx)) {
    for (std::size_t n = 1; n <= max_size; ++n) {
      for (const Term& m : e.terms(ctx, n)) out.push_back(TermJ{ctx, m});
    }
  }
  return out;
}

std::vector<SubstJ> enumerate_subst_judgements(std::size_t max_size, const std::vector<Var>& vocab,
                                               std::size_t max_ctx) {
  Enumerator e(vocab);
  std::vector<SubstJ> out;
  for (const Context& ctx : all_contexts(vocab, max_ctx)) {
    for (std::size_t n = 1; n <= max_size; ++n) {
      for (const auto& [s, cod] : e.substs(ctx, n)) out.push_back(SubstJ{ctx, s, cod});
    }
  }
  return out;
}

std::vector<Judgement> random_judgements(std::uint64_t seed, std::size_t count, std::size_t budget,
                                         const std::vector<Var>& vocab) {
  std::vector<Judgement> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 4 == 3) {
      out.emplace_back(generate_subst(seed + i, budget, vocab));
    } else {
      out.emplace_back(generate(seed + i, budget, vocab));
    }
  }
  return out;
}

bool fv_step_ok(const Judgement& before, const Judgement& after) {
  if (const TermJ* a = std::get_if<TermJ>(&before)) {
    const TermJ* b = std::get_if<TermJ>(&after);
    if (!b) return false;
    if (!seq_sqsubseteq(fv_judgement(*b), fv_judgement(*a))) return false;
    return !(a->ctx == b->ctx) || seq_sqsubseteq(fv_term(b->term), fv_term(a->term));
  }
  const SubstJ& a = std::get<SubstJ>(before);
  const SubstJ* b = std::get_if<SubstJ>(&after);
  if (!b) return false;
  for (const FVSeq& s : fv_samples()) {
    if (!seq_sqsubseteq(apply_O(b->sub, s), apply_O(a.sub, s))) return false;
  }
  return true;
}

GraphReport explore_spa_graph(const std::vector<Judgement>& roots, const RewriteOptions& opt,
                              std::size_t node_cap, std::chrono::milliseconds time_limit) {
  auto deadline = std::chrono::steady_clock::now() + time_limit;
  enum class Color : std::uint8_t { Gray, Black };
  GraphReport rep;
  rep.roots = roots.size();
  std::unordered_map<Judgement, Color, JudgementHash> color;
  struct Frame {
    Judgement node;
    std::vector<Judgement> succ;
    std::size_t next = 0;
  };
  auto expand = [&](const Judgement& j) {
    std::vector<Judgement> out;
    for (const Redex& r : redexes(j, opt)) out.push_back(step(j, r, opt));
    return out;
  };
  for (const Judgement& root : roots) {
    if (color.count(root)) {
      ++rep.roots_done;
      continue;
    }
    std::vector<Frame> stack;
    color.emplace(root, Color::Gray);
    stack.push_back(Frame{root, expand(root)});
    while (!stack.empty()) {
      Frame& top = stack.back();
      if (top.next == top.succ.size()) {
        color[top.node] = Color::Black;
        stack.pop_back();
        continue;
      }
      Judgement child = top.succ[top.next++];
      ++rep.edges;
      ++rep.fv_steps;
      if (!fv_step_ok(top.node, child)) ++rep.fv_failures;
      auto it = color.find(child);
      if (it != color.end()) {
        if (it->second == Color::Gray) {
          rep.acyclic = false;
          rep.witness = print(child);
          rep.nodes = color.size();
          return rep;
        }
        continue;
      }
      if (time_limit.count() > 0 && (color.size() & 0xff) == 0 &&
          std::chrono::steady_clock::now() > deadline) {
        rep.timed_out = true;
        rep.witness = print(child);
        rep.nodes = color.size();
        return rep;
      }
      if (color.size() >= node_cap) {
        rep.finite = false;
        rep.witness = print(child);
        rep.nodes = color.size();
        return rep;
      }
      color.emplace(child, Color::Gray);
      std::vector<Judgement> succ = expand(child);
      stack.push_back(Frame{std::move(child), std::move(succ)});
    }
    ++rep.roots_done;
  }
  rep.nodes = color.size();
  return rep;
}

std::vector<std::string_view> suite_names() {
  std::vector<std::string_view> out;
  for (const auto& s : suites()) out.push_back(s.first);
  return out;
}

std::optional<SuiteResult> run_suite(std::string_view name, const SuiteOptions& opt) {
  for (const auto& [n, fn] : suites()) {
    if (n == name) return fn(opt);
  }
  return std::nullopt;
}

std::string suite_to_json(const SuiteResult& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.name;
  j["passed"] = r.passed();
  j["cases"] = r.cases;
  j["failures"] = r.failures;
  j["fv_steps"] = r.fv_steps;
  j["fv_failures"] = r.fv_failures;
  j["notes"] = r.notes;
  return j.dump(2);
}

const std::vector<GoldenTrace>& golden_traces() {
  static const std::vector<GoldenTrace> kTraces = {
      {"y |- (lam x y. x) y", "y |- lam z. y"},
      {"|- (lam x y z. x z (y z)) (lam x y. x)", "|- lam y z. z"},
      {"x, x |- pi_x * x", "x, y |- x"},
      {"x, x, z |- pi_z * pi_x * x", "x, y, z |- x"},
  };
  return kTraces;
}

}  // namespace lampi
