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

#include "lampi/typing.hpp"

#include <utility>

#include "lampi/syntax.hpp"
#include "parser.hpp"

namespace lampi {
namespace {

TypedContext typed_context(const std::vector<detail::CtxEntry>& entries, std::size_t offset) {
  TypedContext out;
  for (const auto& e : entries) {
    if (!e.type) throw ParseError(offset, {"':' and a type"}, "untyped context entry");
    out.push_back({e.var, *e.type});
  }
  return out;
}

TypedContext popped(const TypedContext& ctx) { return {ctx.begin(), ctx.end() - 1}; }

TypedContext pushed(TypedContext ctx, TypedEntry e) {
  ctx.push_back(std::move(e));
  return ctx;
}

struct Failure {
  NotDerivable nd;
};

class Builder {
 public:
  // The root of the result is a TTermJ carrying the inferred type.
  TypedDerivation term(const TypedContext& ctx, const Term& m) {
    switch (m.kind()) {
      case Term::Kind::Var:
        return var(ctx, m);
      case Term::Kind::App: {
        TypedDerivation f = descend(Selector::AppFun, [&] { return term(ctx, m.fun()); });
        TypedDerivation x = descend(Selector::AppArg, [&] { return term(ctx, m.arg()); });
        const Type& ft = type_of(f);
        if (ft.kind() != Type::Kind::Arrow) {
          fail("(iii)", "the function has type " + print(ft) + ", not an arrow type");
        }
        if (!(ft.dom() == type_of(x))) {
          fail("(iii)", "the argument has type " + print(type_of(x)) + ", expected " + print(ft.dom()));
        }
        Type result = ft.cod();
        return {TTermJ{ctx, m, result}, WfRule::III, {std::move(f), std::move(x)}};
      }
      case Term::Kind::Lam: {
        if (!m.annotation()) fail("(iv)", "binder " + m.name().name() + " has no type annotation");
        const Type& a = *m.annotation();
        TypedDerivation b = descend(Selector::LamBody, [&] {
          return term(pushed(ctx, {m.name(), a}), m.body());
        });
        Type t = Type::arrow(a, type_of(b));
        return {TTermJ{ctx, m, t}, WfRule::IV, {std::move(b)}};
      }
      case Term::Kind::Clos: {
        TypedDerivation s = descend(Selector::ClosSub, [&] { return subst(ctx, m.sub()); });
        TypedContext cod = std::get<TSubstJ>(s.root).cod;
        TypedDerivation b = descend(Selector::ClosTerm, [&] { return term(cod, m.body()); });
        Type t = type_of(b);
        return {TTermJ{ctx, m, t}, WfRule::V, {std::move(s), std::move(b)}};
      }
    }
    fail("?", "unknown term");
  }

  TypedDerivation subst(const TypedContext& ctx, const Subst& s) {
    switch (s.kind()) {
      case Subst::Kind::Id:
        return {TSubstJ{ctx, s, ctx}, WfRule::VI, {}};
      case Subst::Kind::Pi:
        if (ctx.empty() || ctx.back().var != s.name()) {
          fail("(vii)", "pi_" + s.name().name() + " requires the context to end in " + s.name().name());
        }
        return {TSubstJ{ctx, s, popped(ctx)}, WfRule::VII, {}};
      case Subst::Kind::Cons: {
        TypedDerivation r = descend(Selector::ConsSub, [&] { return subst(ctx, s.rest()); });
        TypedDerivation n = descend(Selector::ConsTerm, [&] { return term(ctx, s.term()); });
        TypedContext cod = pushed(std::get<TSubstJ>(r.root).cod, {s.name(), type_of(n)});
        return {TSubstJ{ctx, s, std::move(cod)}, WfRule::VIII, {std::move(r), std::move(n)}};
      }
      case Subst::Kind::Comp: {
        TypedDerivation l = descend(Selector::CompLeft, [&] { return subst(ctx, s.left()); });
        TypedContext mid = std::get<TSubstJ>(l.root).cod;
        TypedDerivation r = descend(Selector::CompRight, [&] { return subst(mid, s.right()); });
        TypedContext cod = std::get<TSubstJ>(r.root).cod;
        return {TSubstJ{ctx, s, std::move(cod)}, WfRule::IX, {std::move(l), std::move(r)}};
      }
    }
    fail("?", "unknown substitution");
  }

  [[noreturn]] void fail(std::string rule, std::string reason) const {
    throw Failure{NotDerivable{path_, std::move(rule), std::move(reason)}};
  }

 private:
  static const Type& type_of(const TypedDerivation& d) { return std::get<TTermJ>(d.root).type; }

  template <typename F>
  TypedDerivation descend(Selector sel, F&& f) {
    path_.push_back(sel);
    TypedDerivation d = f();
    path_.pop_back();
    return d;
  }

  TypedDerivation var(const TypedContext& ctx, const Term& m) {
    if (ctx.empty()) fail("(i)", "variable " + m.name().name() + " does not occur in the context");
    if (ctx.back().var == m.name()) return {TTermJ{ctx, m, ctx.back().type}, WfRule::I, {}};
    TypedDerivation p = var(popped(ctx), m);
    Type t = type_of(p);
    return {TTermJ{ctx, m, t}, WfRule::II, {std::move(p)}};
  }

  Path path_;
};

std::string print_arrow(const ArrowExpr& a, bool seq_right) {
  switch (a.kind) {
    case ArrowExpr::Kind::Id: return "id";
    case ArrowExpr::Kind::Pr1: return "pr1";
    case ArrowExpr::Kind::Pr2: return "pr2";
    case ArrowExpr::Kind::Ev: return "ev";
    case ArrowExpr::Kind::Pair:
      return "<" + print_arrow(*a.f, false) + ", " + print_arrow(*a.g, false) + ">";
    case ArrowExpr::Kind::Curry:
      return "cur(" + print_arrow(*a.f, false) + ")";
    case ArrowExpr::Kind::Seq: {
      std::string s = print_arrow(*a.f, false) + " ; " + print_arrow(*a.g, true);
      return seq_right ? "(" + s + ")" : s;
    }
  }
  return "?";
}

bool same(const std::shared_ptr<const ArrowExpr>& a, const std::shared_ptr<const ArrowExpr>& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace

TypedJudgement parse_typed_judgement(std::string_view text) {
  detail::Parser p(text);
  TypedContext ctx = typed_context(p.context(), 0);
  p.expect(detail::Tok::Turnstile);
  Expr e = p.expr();
  if (auto* t = std::get_if<Term>(&e)) {
    p.expect(detail::Tok::Colon);
    Type ty = p.type();
    p.finish();
    return TTermJ{std::move(ctx), *t, std::move(ty)};
  }
  p.expect(detail::Tok::Triangle);
  TypedContext cod = typed_context(p.context(), text.size());
  p.finish();
  return TSubstJ{std::move(ctx), std::get<Subst>(std::move(e)), std::move(cod)};
}

std::string print(const TypedContext& ctx) {
  std::string out;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) out += ", ";
    out += ctx[i].var.name() + ":";
    out += ctx[i].type.kind() == Type::Kind::Arrow ? "(" + print(ctx[i].type) + ")" : print(ctx[i].type);
  }
  return out;
}

std::string print(const TypedJudgement& j) {
  if (const TTermJ* t = std::get_if<TTermJ>(&j)) {
    std::string c = print(t->ctx);
    return c + (c.empty() ? "|- " : " |- ") + print(t->term) + " : " + print(t->type);
  }
  const TSubstJ& s = std::get<TSubstJ>(j);
  std::string c = print(s.ctx);
  std::string out = c + (c.empty() ? "|- " : " |- ") + print(s.sub) + " |>";
  if (!s.cod.empty()) out += " " + print(s.cod);
  return out;
}

Checked<TypedDerivation> typecheck(const TypedJudgement& j) {
  Builder b;
  try {
    if (const TTermJ* t = std::get_if<TTermJ>(&j)) {
      TypedDerivation d = b.term(t->ctx, t->term);
      const Type& inferred = std::get<TTermJ>(d.root).type;
      if (!(inferred == t->type)) {
        return NotDerivable{{}, std::string(wf_rule_name(d.rule)),
                            "the term has type " + print(inferred) + ", not " + print(t->type)};
      }
      return d;
    }
    const TSubstJ& s = std::get<TSubstJ>(j);
    TypedDerivation d = b.subst(s.ctx, s.sub);
    if (!(std::get<TSubstJ>(d.root).cod == s.cod)) {
      return NotDerivable{{}, std::string(wf_rule_name(d.rule)),
                          "the codomain is " + print(std::get<TSubstJ>(d.root).cod) + ", not " +
                              print(s.cod)};
    }
    return d;
  } catch (const Failure& f) {
    return f.nd;
  }
}

Judgement erase(const TypedJudgement& j) {
  auto plain = [](const TypedContext& c) {
    std::vector<Var> vars;
    for (const auto& e : c) vars.push_back(e.var);
    return Context(std::move(vars));
  };
  if (const TTermJ* t = std::get_if<TTermJ>(&j)) {
    // Binder annotations are kept on the term; they do not affect
    // derivability.
    return TermJ{plain(t->ctx), t->term};
  }
  const TSubstJ& s = std::get<TSubstJ>(j);
  return SubstJ{plain(s.ctx), s.sub, plain(s.cod)};
}

bool operator==(const ObjExpr& a, const ObjExpr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ObjExpr::Kind::Terminal:
      return true;
    case ObjExpr::Kind::TypeObj:
      return a.type == b.type;
    case ObjExpr::Kind::Prod:
      return *a.left == *b.left && *a.right == *b.right;
  }
  return false;
}

ObjExpr context_object(const TypedContext& ctx) {
  ObjExpr out;
  for (const auto& e : ctx) {
    ObjExpr t{ObjExpr::Kind::TypeObj, nullptr, nullptr, e.type};
    out = ObjExpr{ObjExpr::Kind::Prod, std::make_shared<const ObjExpr>(std::move(out)),
                  std::make_shared<const ObjExpr>(std::move(t)), std::nullopt};
  }
  return out;
}

std::string print(const ObjExpr& o) {
  switch (o.kind) {
    case ObjExpr::Kind::Terminal:
      return "1";
    case ObjExpr::Kind::TypeObj:
      return o.type->kind() == Type::Kind::Arrow ? "(" + print(*o.type) + ")" : print(*o.type);
    case ObjExpr::Kind::Prod: {
      std::string l = print(*o.left);
      if (o.left->kind == ObjExpr::Kind::Prod) l = "(" + l + ")";
      return l + " x " + print(*o.right);
    }
  }
  return "?";
}

ArrowExpr ArrowExpr::id() { return {Kind::Id, nullptr, nullptr}; }
ArrowExpr ArrowExpr::pr1() { return {Kind::Pr1, nullptr, nullptr}; }
ArrowExpr ArrowExpr::pr2() { return {Kind::Pr2, nullptr, nullptr}; }
ArrowExpr ArrowExpr::ev() { return {Kind::Ev, nullptr, nullptr}; }

ArrowExpr ArrowExpr::pair(ArrowExpr f, ArrowExpr g) {
  return {Kind::Pair, std::make_shared<const ArrowExpr>(std::move(f)),
          std::make_shared<const ArrowExpr>(std::move(g))};
}

ArrowExpr ArrowExpr::curry(ArrowExpr f) {
  return {Kind::Curry, std::make_shared<const ArrowExpr>(std::move(f)), nullptr};
}

ArrowExpr ArrowExpr::seq(ArrowExpr f, ArrowExpr g) {
  return {Kind::Seq, std::make_shared<const ArrowExpr>(std::move(f)),
          std::make_shared<const ArrowExpr>(std::move(g))};
}

bool operator==(const ArrowExpr& a, const ArrowExpr& b) {
  return a.kind == b.kind && same(a.f, b.f) && same(a.g, b.g);
}

ArrowExpr ccc_arrow(const TypedDerivation& d) {
  auto p = [&](std::size_t i) { return ccc_arrow(d.premises[i]); };
  switch (d.rule) {
    case WfRule::I: return ArrowExpr::pr2();
    case WfRule::II: return ArrowExpr::seq(ArrowExpr::pr1(), p(0));
    case WfRule::III: return ArrowExpr::seq(ArrowExpr::pair(p(0), p(1)), ArrowExpr::ev());
    case WfRule::IV: return ArrowExpr::curry(p(0));
    case WfRule::V: return ArrowExpr::seq(p(0), p(1));
    case WfRule::VI: return ArrowExpr::id();
    case WfRule::VII: return ArrowExpr::pr1();
    case WfRule::VIII: return ArrowExpr::pair(p(0), p(1));
    case WfRule::IX: return ArrowExpr::seq(p(0), p(1));
  }
  return ArrowExpr::id();
}

std::string print(const ArrowExpr& a) { return print_arrow(a, false); }

}  // namespace lampi
