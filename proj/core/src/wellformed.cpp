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

#include "lampi/wellformed.hpp"

#include <algorithm>
#include <optional>
#include <utility>

#include "lampi/syntax.hpp"

namespace lampi {
namespace {

struct Failure {
  NotDerivable nd;
};

[[noreturn]] void fail(const Path& path, std::string rule, std::string reason) {
  throw Failure{NotDerivable{path, std::move(rule), std::move(reason)}};
}

class Builder {
 public:
  Derivation term(const Context& ctx, const Term& m) {
    switch (m.kind()) {
      case Term::Kind::Var:
        return var(ctx, m);
      case Term::Kind::App: {
        Derivation f = descend(Selector::AppFun, [&] { return term(ctx, m.fun()); });
        Derivation x = descend(Selector::AppArg, [&] { return term(ctx, m.arg()); });
        return {TermJ{ctx, m}, WfRule::III, {std::move(f), std::move(x)}};
      }
      case Term::Kind::Lam: {
        Derivation b = descend(Selector::LamBody, [&] { return term(ctx.pushed(m.name()), m.body()); });
        return {TermJ{ctx, m}, WfRule::IV, {std::move(b)}};
      }
      case Term::Kind::Clos: {
        Derivation s = descend(Selector::ClosSub, [&] { return subst(ctx, m.sub()); });
        const Context& cod = std::get<SubstJ>(s.root).cod;
        Derivation b = descend(Selector::ClosTerm, [&] { return term(cod, m.body()); });
        return {TermJ{ctx, m}, WfRule::V, {std::move(s), std::move(b)}};
      }
    }
    fail(path_, "?", "unknown term");
  }

  Derivation subst(const Context& ctx, const Subst& s) {
    switch (s.kind()) {
      case Subst::Kind::Id:
        return {SubstJ{ctx, s, ctx}, WfRule::VI, {}};
      case Subst::Kind::Pi:
        if (ctx.empty()) {
          fail(path_, "(vii)", "pi_" + s.name().name() + " needs a non-empty context");
        }
        if (ctx.back() != s.name()) {
          fail(path_, "(vii)",
               "pi_" + s.name().name() + " requires the context to end in " + s.name().name() +
                   ", but it ends in " + ctx.back().name());
        }
        return {SubstJ{ctx, s, ctx.popped()}, WfRule::VII, {}};
      case Subst::Kind::Cons: {
        Derivation r = descend(Selector::ConsSub, [&] { return subst(ctx, s.rest()); });
        Derivation n = descend(Selector::ConsTerm, [&] { return term(ctx, s.term()); });
        Context cod = std::get<SubstJ>(r.root).cod.pushed(s.name());
        return {SubstJ{ctx, s, std::move(cod)}, WfRule::VIII, {std::move(r), std::move(n)}};
      }
      case Subst::Kind::Comp: {
        Derivation l = descend(Selector::CompLeft, [&] { return subst(ctx, s.left()); });
        const Context& mid = std::get<SubstJ>(l.root).cod;
        Derivation r = descend(Selector::CompRight, [&] { return subst(mid, s.right()); });
        Context cod = std::get<SubstJ>(r.root).cod;
        return {SubstJ{ctx, s, std::move(cod)}, WfRule::IX, {std::move(l), std::move(r)}};
      }
    }
    fail(path_, "?", "unknown substitution");
  }

 private:
  template <typename F>
  Derivation descend(Selector sel, F&& f) {
    path_.push_back(sel);
    Derivation d = f();
    path_.pop_back();
    return d;
  }

  Derivation var(const Context& ctx, const Term& m) {
    if (ctx.empty()) {
      fail(path_, "(i)", "variable " + m.name().name() + " does not occur in the context");
    }
    if (ctx.back() == m.name()) return {TermJ{ctx, m}, WfRule::I, {}};
    Derivation p = var(ctx.popped(), m);
    return {TermJ{ctx, m}, WfRule::II, {std::move(p)}};
  }

  Path path_;
};

// Derivability without building derivations. `ctx` is used as a stack.
class Checker {
 public:
  bool term(std::vector<Var>& ctx, const Term& m) {
    switch (m.kind()) {
      case Term::Kind::Var:
        return std::find(ctx.begin(), ctx.end(), m.name()) != ctx.end();
      case Term::Kind::App:
        return term(ctx, m.fun()) && term(ctx, m.arg());
      case Term::Kind::Lam: {
        ctx.push_back(m.name());
        bool r = term(ctx, m.body());
        ctx.pop_back();
        return r;
      }
      case Term::Kind::Clos: {
        std::vector<Var> cod = ctx;
        return subst(cod, m.sub()) && term(cod, m.body());
      }
    }
    return false;
  }

  // Replaces `ctx` by the codomain.
  bool subst(std::vector<Var>& ctx, const Subst& s) {
    switch (s.kind()) {
      case Subst::Kind::Id:
        return true;
      case Subst::Kind::Pi:
        if (ctx.empty() || ctx.back() != s.name()) return false;
        ctx.pop_back();
        return true;
      case Subst::Kind::Cons: {
        if (!term(ctx, s.term())) return false;
        if (!subst(ctx, s.rest())) return false;
        ctx.push_back(s.name());
        return true;
      }
      case Subst::Kind::Comp:
        return subst(ctx, s.left()) && subst(ctx, s.right());
    }
    return false;
  }
};

}  // namespace

std::string_view wf_rule_name(WfRule r) {
  switch (r) {
    case WfRule::I: return "(i)";
    case WfRule::II: return "(ii)";
    case WfRule::III: return "(iii)";
    case WfRule::IV: return "(iv)";
    case WfRule::V: return "(v)";
    case WfRule::VI: return "(vi)";
    case WfRule::VII: return "(vii)";
    case WfRule::VIII: return "(viii)";
    case WfRule::IX: return "(ix)";
  }
  return "?";
}

std::string NotDerivable::message() const {
  std::string where;
  for (Selector s : path) {
    if (!where.empty()) where += '.';
    where += selector_name(s);
  }
  if (where.empty()) where = "root";
  return "not derivable: rule " + rule + " fails at " + where + ": " + reason;
}

Checked<Derivation> derive(const Judgement& j) {
  Builder b;
  try {
    if (const TermJ* t = std::get_if<TermJ>(&j)) return b.term(t->ctx, t->term);
    const SubstJ& s = std::get<SubstJ>(j);
    Derivation d = b.subst(s.ctx, s.sub);
    const Context& cod = std::get<SubstJ>(d.root).cod;
    if (cod != s.cod) {
      return NotDerivable{{}, std::string(wf_rule_name(d.rule)),
                          "codomain is " + (cod.empty() ? std::string("empty") : print(cod)) +
                              ", not " + (s.cod.empty() ? std::string("empty") : print(s.cod))};
    }
    return d;
  } catch (const Failure& f) {
    return f.nd;
  }
}

Checked<Context> infer_codomain(const Context& ctx, const Subst& s) {
  Builder b;
  try {
    Derivation d = b.subst(ctx, s);
    return std::get<SubstJ>(d.root).cod;
  } catch (const Failure& f) {
    return f.nd;
  }
}

bool is_derivable(const Context& ctx, const Term& m) {
  std::vector<Var> work(ctx.begin(), ctx.end());
  return Checker{}.term(work, m);
}

bool is_derivable(const Judgement& j) {
  if (const TermJ* t = std::get_if<TermJ>(&j)) return is_derivable(t->ctx, t->term);
  const SubstJ& s = std::get<SubstJ>(j);
  std::vector<Var> work(s.ctx.begin(), s.ctx.end());
  return Checker{}.subst(work, s.sub) && work == s.cod.vars();
}

Term lambda_closure(const Context& ctx, const Term& m) {
  Term out = m;
  for (auto it = ctx.vars().rbegin(); it != ctx.vars().rend(); ++it) out = Term::lam(*it, out);
  return out;
}

}  // namespace lampi
