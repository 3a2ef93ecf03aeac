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

#include "lampi/rewrite.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include <json.hpp>

#include "lampi/freevars.hpp"
#include "lampi/wellformed.hpp"

namespace lampi {
namespace {

constexpr std::array<std::pair<RuleName, std::string_view>, 19> kRuleNames{{
    {RuleName::Beta, "Beta"},
    {RuleName::Abs, "Abs"},
    {RuleName::App, "App"},
    {RuleName::ConsVar, "ConsVar"},
    {RuleName::New, "New"},
    {RuleName::IdVar, "IdVar"},
    {RuleName::Clos, "Clos"},
    {RuleName::Ass, "Ass"},
    {RuleName::IdR, "IdR"},
    {RuleName::IdShift, "IdShift"},
    {RuleName::ConsShift, "ConsShift"},
    {RuleName::Map, "Map"},
    {RuleName::Pi1, "Pi1"},
    {RuleName::Pi2, "Pi2"},
    {RuleName::Alpha1, "Alpha1"},
    {RuleName::Alpha2, "Alpha2"},
    {RuleName::StrongAbs, "StrongAbs"},
    {RuleName::IdTerm, "IdTerm"},
    {RuleName::IdSubst, "IdSubst"},
}};

std::set<Var> with(std::set<Var> s, const Var& v) {
  s.insert(v);
  return s;
}

// Binder renaming data for lam a. M: whether a occurs free in lam a. M and
// which names a fresh binder must avoid.
struct Renaming {
  bool applicable;
  std::set<Var> forbidden;
};

Renaming alpha1_condition(const Term& lam) {
  std::set<Var> sup = support(fv_term(lam));
  bool applicable = sup.count(lam.name()) > 0;
  return {applicable, with(std::move(sup), lam.name())};
}

Renaming alpha2_condition(const TermJ& j, std::size_t index) {
  Context tail = j.ctx.slice(index - 1, j.ctx.size());
  std::set<Var> sup = support(fv_term(lambda_closure(tail, j.term)));
  const Var& a = j.ctx[index - 1];
  bool applicable = sup.count(a) > 0;
  return {applicable, with(std::move(sup), a)};
}

Var strong_abs_binder(const Term& clos, const RewriteOptions& opt) {
  const Var& a = clos.body().name();
  return canonical_fresh(a, support(fv_term(clos)), opt.vocabulary);
}

// Rules whose left-hand side matches at the root of `e`, in rule order.
void root_rules(const Expr& e, const RewriteOptions& opt, bool include_alpha,
                std::vector<Redex>& out, const Path& path) {
  auto add = [&](RuleName r, std::optional<Var> fresh = {}) {
    out.push_back(Redex{Position{path, std::nullopt}, r, std::move(fresh)});
  };
  if (const Term* t = std::get_if<Term>(&e)) {
    if (t->is_app()) {
      if (opt.beta && t->fun().is_lam()) add(RuleName::Beta);
    } else if (t->is_clos()) {
      const Subst& s = t->sub();
      const Term& m = t->body();
      if (m.is_lam()) add(RuleName::Abs);
      if (m.is_app()) add(RuleName::App);
      if (m.is_var()) {
        const Var& b = m.name();
        if (s.is_cons()) add(s.name() == b ? RuleName::ConsVar : RuleName::New);
        if (s.is_id()) add(RuleName::IdVar);
      }
      if (m.is_clos()) add(RuleName::Clos);
      if (m.is_var()) {
        const Var& b = m.name();
        if (s.is_pi() && s.name() != b) add(RuleName::Pi1);
        if (s.is_comp() && s.right().is_pi() && s.right().name() != b) add(RuleName::Pi2);
      }
      if (opt.extra_rules) {
        if (m.is_lam()) add(RuleName::StrongAbs, strong_abs_binder(*t, opt));
        if (s.is_id()) add(RuleName::IdTerm);
      }
    } else if (t->is_lam() && include_alpha) {
      Renaming r = alpha1_condition(*t);
      if (r.applicable) add(RuleName::Alpha1, canonical_fresh(t->name(), r.forbidden, opt.vocabulary));
    }
    return;
  }
  const Subst& c = std::get<Subst>(e);
  if (!c.is_comp()) return;
  const Subst& s = c.left();
  const Subst& q = c.right();
  if (q.is_comp()) add(RuleName::Ass);
  if (q.is_id()) add(RuleName::IdR);
  if (s.is_id() && q.is_pi()) add(RuleName::IdShift);
  if (s.is_cons() && q.is_pi() && s.name() == q.name()) add(RuleName::ConsShift);
  if (q.is_cons()) add(RuleName::Map);
  if (opt.extra_rules && s.is_id()) add(RuleName::IdSubst);
}

void walk(const Expr& e, const RewriteOptions& opt, bool include_alpha, Path& path,
          std::vector<Redex>& out) {
  root_rules(e, opt, include_alpha, out, path);
  auto visit = [&](Selector sel, const Expr& c) {
    path.push_back(sel);
    walk(c, opt, include_alpha, path, out);
    path.pop_back();
  };
  if (const Term* t = std::get_if<Term>(&e)) {
    switch (t->kind()) {
      case Term::Kind::Var:
        return;
      case Term::Kind::App:
        visit(Selector::AppFun, t->fun());
        visit(Selector::AppArg, t->arg());
        return;
      case Term::Kind::Lam:
        visit(Selector::LamBody, t->body());
        return;
      case Term::Kind::Clos:
        visit(Selector::ClosSub, t->sub());
        visit(Selector::ClosTerm, t->body());
        return;
    }
    return;
  }
  const Subst& s = std::get<Subst>(e);
  switch (s.kind()) {
    case Subst::Kind::Id:
    case Subst::Kind::Pi:
      return;
    case Subst::Kind::Cons:
      visit(Selector::ConsSub, s.rest());
      visit(Selector::ConsTerm, s.term());
      return;
    case Subst::Kind::Comp:
      visit(Selector::CompLeft, s.left());
      visit(Selector::CompRight, s.right());
      return;
  }
}

std::vector<Redex> collect(const Expr& e, const RewriteOptions& opt, bool include_alpha) {
  std::vector<Redex> out;
  Path path;
  walk(e, opt, include_alpha, path, out);
  return out;
}

void alpha2_redexes(const TermJ& j, const RewriteOptions& opt, std::vector<Redex>& out) {
  for (std::size_t i = 1; i <= j.ctx.size(); ++i) {
    Renaming r = alpha2_condition(j, i);
    if (r.applicable) {
      out.push_back(Redex{Position{{}, i}, RuleName::Alpha2,
                          canonical_fresh(j.ctx[i - 1], r.forbidden, opt.vocabulary)});
    }
  }
}

Expr judgement_body(const Judgement& j) {
  if (const TermJ* t = std::get_if<TermJ>(&j)) return t->term;
  return std::get<SubstJ>(j).sub;
}

[[noreturn]] void invalid(const Redex& r, const std::string& why) {
  throw InvalidRedex(std::string(rule_name(r.rule)) + " at " + position_to_string(r.position) +
                     ": " + why);
}

Var checked_fresh(const Redex& r, const std::set<Var>& forbidden, const Var& base,
                  const RewriteOptions& opt) {
  if (!r.fresh) return canonical_fresh(base, forbidden, opt.vocabulary);
  if (forbidden.count(*r.fresh)) invalid(r, "binder " + r.fresh->name() + " is not fresh");
  return *r.fresh;
}

Expr contract(const Expr& e, const Redex& r, const RewriteOptions& opt) {
  std::vector<Redex> here;
  root_rules(e, opt, r.rule == RuleName::Alpha1, here, {});
  bool found = std::any_of(here.begin(), here.end(), [&](const Redex& h) { return h.rule == r.rule; });
  if (!found) invalid(r, "rule does not match");

  if (const Term* t = std::get_if<Term>(&e)) {
    switch (r.rule) {
      case RuleName::Beta: {
        const Term& lam = t->fun();
        return Term::clos(Subst::cons(Subst::id(), t->arg(), lam.name()), lam.body());
      }
      case RuleName::Abs: {
        const Term& lam = t->body();
        const Var& a = lam.name();
        Subst up = Subst::cons(Subst::comp(Subst::pi(a), t->sub()), Term::var(a), a);
        return Term::lam(a, Term::clos(std::move(up), lam.body()), lam.annotation());
      }
      case RuleName::StrongAbs: {
        const Term& lam = t->body();
        Var b = r.fresh ? *r.fresh : strong_abs_binder(*t, opt);
        Subst up = Subst::cons(Subst::comp(Subst::pi(b), t->sub()), Term::var(b), lam.name());
        return Term::lam(b, Term::clos(std::move(up), lam.body()), lam.annotation());
      }
      case RuleName::App:
        return Term::app(Term::clos(t->sub(), t->body().fun()),
                         Term::clos(t->sub(), t->body().arg()));
      case RuleName::ConsVar:
        return t->sub().term();
      case RuleName::New:
        return Term::clos(t->sub().rest(), t->body());
      case RuleName::IdVar:
      case RuleName::Pi1:
      case RuleName::IdTerm:
        return t->body();
      case RuleName::Clos:
        return Term::clos(Subst::comp(t->sub(), t->body().sub()), t->body().body());
      case RuleName::Pi2:
        return Term::clos(t->sub().left(), t->body());
      case RuleName::Alpha1: {
        Renaming cond = alpha1_condition(*t);
        Var b = checked_fresh(r, cond.forbidden, t->name(), opt);
        Subst ren = Subst::cons(Subst::pi(b), Term::var(b), t->name());
        return Term::lam(b, Term::clos(std::move(ren), t->body()), t->annotation());
      }
      default:
        break;
    }
    invalid(r, "not a term rule");
  }
  const Subst& c = std::get<Subst>(e);
  const Subst& s = c.left();
  const Subst& q = c.right();
  switch (r.rule) {
    case RuleName::Ass:
      return Subst::comp(Subst::comp(s, q.left()), q.right());
    case RuleName::IdR:
      return s;
    case RuleName::IdShift:
    case RuleName::IdSubst:
      return q;
    case RuleName::ConsShift:
      return s.rest();
    case RuleName::Map:
      return Subst::cons(Subst::comp(s, q.rest()), Term::clos(s, q.term()), q.name());
    default:
      break;
  }
  invalid(r, "not a substitution rule");
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Redex pick(const std::vector<Redex>& rs, Strategy s, std::uint64_t& rng) {
  switch (s) {
    case Strategy::Leftmost:
      return rs.front();
    case Strategy::Rightmost:
      return rs.back();
    case Strategy::Random:
      return rs[splitmix(rng) % rs.size()];
  }
  return rs.front();
}

Trace run(const Judgement& j, const NormalizeOptions& opt, std::size_t budget, bool fault) {
  Trace tr{j, {}, Trace::Status::NormalForm};
  std::uint64_t rng = opt.seed;
  Judgement cur = j;
  while (true) {
    std::optional<Redex> r = choose_redex(cur, opt, rng);
    if (!r) return tr;
    if (tr.steps.size() >= budget) {
      if (fault) throw LimitFault("substitution calculus exceeded the step cap");
      tr.status = Trace::Status::BudgetExhausted;
      return tr;
    }
    cur = step(cur, *r, opt.rewrite);
    tr.steps.push_back(TraceStep{*r, cur});
  }
}

bool pi_chain(const Subst& s, std::vector<Var>& out) {
  if (s.is_pi()) {
    out.push_back(s.name());
    return true;
  }
  if (s.is_comp() && s.right().is_pi() && pi_chain(s.left(), out)) {
    out.push_back(s.right().name());
    return true;
  }
  return false;
}

}  // namespace

std::string_view rule_name(RuleName r) {
  for (const auto& [rule, name] : kRuleNames) {
    if (rule == r) return name;
  }
  return "?";
}

std::optional<RuleName> rule_from_name(std::string_view name) {
  for (const auto& [rule, n] : kRuleNames) {
    if (n == name) return rule;
  }
  return std::nullopt;
}

bool is_alpha(RuleName r) { return r == RuleName::Alpha1 || r == RuleName::Alpha2; }

Subst lift(const Context& delta, const Subst& s) {
  Subst out = s;
  for (const Var& a : delta) out = Subst::cons(Subst::comp(Subst::pi(a), out), Term::var(a), a);
  return out;
}

Var fresh(const Var& base, const std::set<Var>& forbidden) {
  if (!forbidden.count(base)) return base;
  std::string stem = base.name();
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  for (std::size_t i = 1;; ++i) {
    Var candidate(stem + std::to_string(i));
    if (!forbidden.count(candidate)) return candidate;
  }
}

Var canonical_fresh(const Var& base, const std::set<Var>& forbidden,
                    const std::vector<Var>& vocabulary) {
  if (!forbidden.count(base)) return base;
  std::size_t n = vocabulary.size();
  auto at = std::find(vocabulary.begin(), vocabulary.end(), base);
  std::size_t start = at == vocabulary.end() ? 0 : static_cast<std::size_t>(at - vocabulary.begin()) + 1;
  for (std::size_t k = 0; k < n; ++k) {
    const Var& v = vocabulary[(start + k) % n];
    if (!forbidden.count(v)) return v;
  }
  return fresh(base, forbidden);
}

std::vector<Redex> redexes(const Expr& e, const RewriteOptions& opt) { return collect(e, opt, true); }

std::vector<Redex> redexes(const Judgement& j, const RewriteOptions& opt) {
  std::vector<Redex> out = collect(judgement_body(j), opt, true);
  if (const TermJ* t = std::get_if<TermJ>(&j)) alpha2_redexes(*t, opt, out);
  return out;
}

Expr step(const Expr& e, const Redex& r, const RewriteOptions& opt) {
  if (r.position.ctx_index) invalid(r, "context positions need a judgement");
  Expr sub;
  try {
    sub = subexpr_at(e, r.position.path);
  } catch (const std::out_of_range&) {
    invalid(r, "no such position");
  }
  return replace_at(e, r.position.path, contract(sub, r, opt));
}

Judgement step(const Judgement& j, const Redex& r, const RewriteOptions& opt) {
  if (r.position.ctx_index) {
    const TermJ* t = std::get_if<TermJ>(&j);
    if (!t) invalid(r, "renaming a context entry needs a term judgement");
    if (r.rule != RuleName::Alpha2) invalid(r, "only Alpha2 acts on the context");
    std::size_t i = *r.position.ctx_index;
    if (i == 0 || i > t->ctx.size()) invalid(r, "no such context entry");
    Renaming cond = alpha2_condition(*t, i);
    if (!cond.applicable) invalid(r, "the entry is not free in the judgement");
    const Var& a = t->ctx[i - 1];
    Var b = checked_fresh(r, cond.forbidden, a, opt);
    Context delta = t->ctx.slice(i, t->ctx.size());
    Context ctx = t->ctx.slice(0, i - 1).pushed(b).concat(delta);
    Subst ren = lift(delta, Subst::cons(Subst::pi(b), Term::var(b), a));
    return TermJ{std::move(ctx), Term::clos(std::move(ren), t->term)};
  }
  if (r.rule == RuleName::Alpha2) invalid(r, "Alpha2 needs a context position");
  if (const TermJ* t = std::get_if<TermJ>(&j)) {
    return TermJ{t->ctx, std::get<Term>(step(Expr(t->term), r, opt))};
  }
  const SubstJ& s = std::get<SubstJ>(j);
  return SubstJ{s.ctx, std::get<Subst>(step(Expr(s.sub), r, opt)), s.cod};
}

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Leftmost: return "leftmost";
    case Strategy::Rightmost: return "rightmost";
    case Strategy::Random: return "random";
  }
  return "?";
}

std::optional<Strategy> strategy_from_name(std::string_view name) {
  if (name == "leftmost") return Strategy::Leftmost;
  if (name == "rightmost") return Strategy::Rightmost;
  if (name == "random" || name == "seeded-random") return Strategy::Random;
  return std::nullopt;
}

std::optional<Redex> choose_redex(const Judgement& j, const NormalizeOptions& opt,
                                  std::uint64_t& rng_state) {
  Expr body = judgement_body(j);
  std::vector<Redex> rs = collect(body, opt.rewrite, false);
  if (!rs.empty()) return pick(rs, opt.strategy, rng_state);
  rs = collect(body, opt.rewrite, true);
  if (const TermJ* t = std::get_if<TermJ>(&j)) alpha2_redexes(*t, opt.rewrite, rs);
  if (rs.empty()) return std::nullopt;
  return pick(rs, opt.strategy, rng_state);
}

Trace normalize_spa(const Judgement& j, const NormalizeOptions& opt) {
  NormalizeOptions o = opt;
  o.rewrite.beta = false;
  return run(j, o, kSpaStepCap, true);
}

Trace normalize_lpi(const Judgement& j, const NormalizeOptions& opt) {
  NormalizeOptions o = opt;
  o.rewrite.beta = true;
  return run(j, o, opt.max_steps, false);
}

std::string position_to_string(const Position& p) {
  if (p.ctx_index) return "ctx-index(" + std::to_string(*p.ctx_index) + ")";
  std::string out;
  for (Selector s : p.path) {
    if (!out.empty()) out += '.';
    out += selector_name(s);
  }
  return out.empty() ? "root" : out;
}

std::string trace_to_json(const Trace& t) {
  nlohmann::ordered_json doc;
  doc["start"] = print(t.start);
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const TraceStep& s : t.steps) {
    nlohmann::ordered_json st;
    st["rule"] = std::string(rule_name(s.redex.rule));
    nlohmann::ordered_json pos = nlohmann::ordered_json::array();
    if (s.redex.position.ctx_index) {
      pos.push_back(position_to_string(s.redex.position));
    } else {
      for (Selector sel : s.redex.position.path) pos.push_back(std::string(selector_name(sel)));
    }
    st["position"] = std::move(pos);
    if (s.redex.fresh) st["fresh"] = s.redex.fresh->name();
    st["result"] = print(s.result);
    steps.push_back(std::move(st));
  }
  doc["steps"] = std::move(steps);
  doc["status"] = t.status == Trace::Status::NormalForm ? "normal_form" : "budget_exhausted";
  return doc.dump(2);
}

SubstShape classify_subst_nf(const Subst& s) {
  SubstShape out;
  if (s.is_id()) {
    out.kind = SubstShape::Kind::Id;
    return out;
  }
  if (pi_chain(s, out.pis)) {
    out.kind = SubstShape::Kind::PiChain;
    return out;
  }
  out.pis.clear();
  const Subst* cur = &s;
  while (cur->is_cons()) {
    out.entries.emplace_back(cur->term(), cur->name());
    cur = &cur->rest();
  }
  std::reverse(out.entries.begin(), out.entries.end());
  if (out.entries.empty()) return SubstShape{};
  if (cur->is_id()) {
    out.kind = SubstShape::Kind::ConsOverId;
  } else if (pi_chain(*cur, out.pis)) {
    out.kind = SubstShape::Kind::ConsOverPiChain;
  } else {
    return SubstShape{};
  }
  return out;
}

std::string_view shape_name(SubstShape::Kind k) {
  switch (k) {
    case SubstShape::Kind::Id: return "id";
    case SubstShape::Kind::PiChain: return "pi-chain";
    case SubstShape::Kind::ConsOverId: return "cons-over-id";
    case SubstShape::Kind::ConsOverPiChain: return "cons-over-pi-chain";
    case SubstShape::Kind::NotNormalShape: return "not-normal-shape";
  }
  return "?";
}

bool is_pure(const Term& m) {
  switch (m.kind()) {
    case Term::Kind::Var:
      return true;
    case Term::Kind::App:
      return is_pure(m.fun()) && is_pure(m.arg());
    case Term::Kind::Lam:
      return is_pure(m.body());
    case Term::Kind::Clos:
      return false;
  }
  return false;
}

}  // namespace lampi
