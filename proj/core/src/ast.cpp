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

#include "lampi/ast.hpp"

#include <array>
#include <cctype>
#include <stdexcept>
#include <utility>

namespace lampi {
namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_str(const std::string& s) { return std::hash<std::string>{}(s); }

}  // namespace

bool is_valid_var_name(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  if (name == "id" || name == "pi" || name == "lam") return false;
  if (name.substr(0, 3) == "pi_") return false;
  return true;
}

Var::Var(std::string name) : name_(std::move(name)) {
  if (!is_valid_var_name(name_)) {
    throw std::invalid_argument("invalid variable name '" + name_ + "'");
  }
}

// --- Type -----------------------------------------------------------------

Type Type::base(std::string name) {
  if (name.empty() || !std::isupper(static_cast<unsigned char>(name[0]))) {
    throw std::invalid_argument("type names start with an uppercase letter");
  }
  return Type(std::make_shared<const detail::TypeNode>(
      detail::TypeNode{Kind::Base, std::move(name), {}, {}}));
}

Type Type::arrow(Type dom, Type cod) {
  return Type(std::make_shared<const detail::TypeNode>(
      detail::TypeNode{Kind::Arrow, {}, std::move(dom), std::move(cod)}));
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Type::Kind::Base) return a.name() == b.name();
  return a.dom() == b.dom() && a.cod() == b.cod();
}

// --- Term -----------------------------------------------------------------

Term Term::var(Var v) {
  std::size_t h = mix(1, hash_str(v.name()));
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{Kind::Var, std::move(v), std::nullopt, {}, {}, {}, 1, h}));
}

Term Term::app(Term fun, Term arg) {
  std::size_t size = 1 + fun.size() + arg.size();
  std::size_t h = mix(mix(2, fun.hash()), arg.hash());
  return Term(std::make_shared<const detail::TermNode>(detail::TermNode{
      Kind::App, Var{}, std::nullopt, std::move(fun), std::move(arg), {}, size, h}));
}

Term Term::lam(Var binder, Term body, std::optional<Type> annotation) {
  // Annotations do not take part in the hash; equality still compares them.
  std::size_t size = 1 + body.size();
  std::size_t h = mix(mix(3, hash_str(binder.name())), body.hash());
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{Kind::Lam, std::move(binder), std::move(annotation),
                       std::move(body), {}, {}, size, h}));
}

Term Term::clos(Subst sub, Term body) {
  std::size_t size = 1 + sub.size() + body.size();
  std::size_t h = mix(mix(4, sub.hash()), body.hash());
  return Term(std::make_shared<const detail::TermNode>(detail::TermNode{
      Kind::Clos, Var{}, std::nullopt, std::move(body), {}, std::move(sub), size, h}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var:
      return a.name() == b.name();
    case Term::Kind::App:
      return a.fun() == b.fun() && a.arg() == b.arg();
    case Term::Kind::Lam:
      return a.name() == b.name() && a.annotation() == b.annotation() && a.body() == b.body();
    case Term::Kind::Clos:
      return a.sub() == b.sub() && a.body() == b.body();
  }
  return false;
}

// --- Subst ----------------------------------------------------------------

Subst Subst::id() {
  static const Subst kId(std::make_shared<const detail::SubstNode>(
      detail::SubstNode{Kind::Id, Var{}, {}, {}, {}, 1, mix(5, 0)}));
  return kId;
}

Subst Subst::pi(Var v) {
  std::size_t h = mix(6, hash_str(v.name()));
  return Subst(std::make_shared<const detail::SubstNode>(
      detail::SubstNode{Kind::Pi, std::move(v), {}, {}, {}, 1, h}));
}

Subst Subst::cons(Subst rest, Term term, Var target) {
  std::size_t size = 1 + rest.size() + term.size();
  std::size_t h = mix(mix(mix(7, rest.hash()), term.hash()), hash_str(target.name()));
  return Subst(std::make_shared<const detail::SubstNode>(detail::SubstNode{
      Kind::Cons, std::move(target), std::move(rest), {}, std::move(term), size, h}));
}

Subst Subst::comp(Subst left, Subst right) {
  std::size_t size = 1 + left.size() + right.size();
  std::size_t h = mix(mix(8, left.hash()), right.hash());
  return Subst(std::make_shared<const detail::SubstNode>(detail::SubstNode{
      Kind::Comp, Var{}, std::move(left), std::move(right), {}, size, h}));
}

bool operator==(const Subst& a, const Subst& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Subst::Kind::Id:
      return true;
    case Subst::Kind::Pi:
      return a.name() == b.name();
    case Subst::Kind::Cons:
      return a.name() == b.name() && a.term() == b.term() && a.rest() == b.rest();
    case Subst::Kind::Comp:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

// --- Context --------------------------------------------------------------

Context Context::pushed(Var v) const {
  std::vector<Var> out = vars_;
  out.push_back(std::move(v));
  return Context(std::move(out));
}

Context Context::popped() const {
  if (vars_.empty()) throw std::out_of_range("pop from empty context");
  return Context(std::vector<Var>(vars_.begin(), vars_.end() - 1));
}

Context Context::slice(std::size_t from, std::size_t to) const {
  if (from > to || to > vars_.size()) throw std::out_of_range("context slice");
  return Context(std::vector<Var>(vars_.begin() + static_cast<std::ptrdiff_t>(from),
                                  vars_.begin() + static_cast<std::ptrdiff_t>(to)));
}

Context Context::concat(const Context& tail) const {
  std::vector<Var> out = vars_;
  out.insert(out.end(), tail.vars_.begin(), tail.vars_.end());
  return Context(std::move(out));
}

// --- Positions ------------------------------------------------------------

namespace {

constexpr std::array<std::pair<Selector, std::string_view>, 9> kSelectorNames{{
    {Selector::LamBody, "lam-body"},
    {Selector::AppFun, "app-fun"},
    {Selector::AppArg, "app-arg"},
    {Selector::ClosSub, "clos-sub"},
    {Selector::ClosTerm, "clos-term"},
    {Selector::ConsSub, "cons-sub"},
    {Selector::ConsTerm, "cons-term"},
    {Selector::CompLeft, "comp-left"},
    {Selector::CompRight, "comp-right"},
}};

[[noreturn]] void bad_path() { throw std::out_of_range("position does not address a node"); }

Expr child(const Expr& e, Selector s) {
  if (const Term* t = std::get_if<Term>(&e)) {
    switch (s) {
      case Selector::LamBody:
        if (t->is_lam()) return t->body();
        break;
      case Selector::AppFun:
        if (t->is_app()) return t->fun();
        break;
      case Selector::AppArg:
        if (t->is_app()) return t->arg();
        break;
      case Selector::ClosSub:
        if (t->is_clos()) return t->sub();
        break;
      case Selector::ClosTerm:
        if (t->is_clos()) return t->body();
        break;
      default:
        break;
    }
    bad_path();
  }
  const Subst& q = std::get<Subst>(e);
  switch (s) {
    case Selector::ConsSub:
      if (q.is_cons()) return q.rest();
      break;
    case Selector::ConsTerm:
      if (q.is_cons()) return q.term();
      break;
    case Selector::CompLeft:
      if (q.is_comp()) return q.left();
      break;
    case Selector::CompRight:
      if (q.is_comp()) return q.right();
      break;
    default:
      break;
  }
  bad_path();
}

Expr with_child(const Expr& e, Selector s, const Expr& c) {
  if (const Term* t = std::get_if<Term>(&e)) {
    switch (s) {
      case Selector::LamBody:
        return Term::lam(t->name(), std::get<Term>(c), t->annotation());
      case Selector::AppFun:
        return Term::app(std::get<Term>(c), t->arg());
      case Selector::AppArg:
        return Term::app(t->fun(), std::get<Term>(c));
      case Selector::ClosSub:
        return Term::clos(std::get<Subst>(c), t->body());
      case Selector::ClosTerm:
        return Term::clos(t->sub(), std::get<Term>(c));
      default:
        bad_path();
    }
  }
  const Subst& q = std::get<Subst>(e);
  switch (s) {
    case Selector::ConsSub:
      return Subst::cons(std::get<Subst>(c), q.term(), q.name());
    case Selector::ConsTerm:
      return Subst::cons(q.rest(), std::get<Term>(c), q.name());
    case Selector::CompLeft:
      return Subst::comp(std::get<Subst>(c), q.right());
    case Selector::CompRight:
      return Subst::comp(q.left(), std::get<Subst>(c));
    default:
      bad_path();
  }
}

Expr replace_from(const Expr& e, const Path& path, std::size_t i, const Expr& r) {
  if (i == path.size()) {
    if (e.index() != r.index()) throw std::invalid_argument("replacement has the wrong sort");
    return r;
  }
  return with_child(e, path[i], replace_from(child(e, path[i]), path, i + 1, r));
}

}  // namespace

std::string_view selector_name(Selector s) {
  for (const auto& [sel, name] : kSelectorNames) {
    if (sel == s) return name;
  }
  return "?";
}

std::optional<Selector> selector_from_name(std::string_view name) {
  for (const auto& [sel, n] : kSelectorNames) {
    if (n == name) return sel;
  }
  return std::nullopt;
}

Expr subexpr_at(const Expr& root, const Path& path) {
  Expr cur = root;
  for (Selector s : path) cur = child(cur, s);
  return cur;
}

Expr replace_at(const Expr& root, const Path& path, const Expr& replacement) {
  return replace_from(root, path, 0, replacement);
}

std::size_t hash_value(const Context& ctx) {
  std::size_t h = 9;
  for (const Var& v : ctx) h = mix(h, hash_str(v.name()));
  return h;
}

std::size_t hash_value(const Judgement& j) {
  if (const TermJ* t = std::get_if<TermJ>(&j)) {
    return mix(hash_value(t->ctx), t->term.hash());
  }
  const SubstJ& s = std::get<SubstJ>(j);
  return mix(mix(mix(hash_value(s.ctx), s.sub.hash()), hash_value(s.cod)), 1);
}

}  // namespace lampi
