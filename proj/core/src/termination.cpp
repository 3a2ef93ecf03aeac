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

#include "lampi/termination.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <json.hpp>
#include <utility>

#include "lampi/freevars.hpp"

namespace lampi {

struct LabTerm::Node {
  Kind kind;
  Sort sort;
  Var name;
  std::string meta;
  std::optional<std::size_t> label;
  std::vector<LabTerm> args;
};

namespace {

using Kind = LabTerm::Kind;
using Sort = LabTerm::Sort;

const std::string kEmpty;

[[noreturn]] void invalid(LabRule r, const std::string& why) {
  throw InvalidRedex(std::string(lab_rule_name(r)) + ": " + why);
}

std::size_t child_index(const LabTerm& t, Selector sel) {
  switch (sel) {
    case Selector::LamBody:
      if (t.kind() == Kind::Lam || t.kind() == Kind::BoldLam) return 0;
      break;
    case Selector::AppFun:
    case Selector::AppArg:
      if (t.kind() == Kind::App) return sel == Selector::AppFun ? 0 : 1;
      break;
    case Selector::ClosSub:
    case Selector::ClosTerm:
      if (t.kind() == Kind::Clos) return sel == Selector::ClosSub ? 0 : 1;
      break;
    case Selector::ConsSub:
    case Selector::ConsTerm:
      if (t.kind() == Kind::Cons) return sel == Selector::ConsSub ? 0 : 1;
      break;
    case Selector::CompLeft:
    case Selector::CompRight:
      if (t.kind() == Kind::Comp) return sel == Selector::CompLeft ? 0 : 1;
      break;
  }
  throw std::out_of_range("selector " + std::string(selector_name(sel)) + " does not apply to " +
                          print(t));
}

Selector selector_for(const LabTerm& t, std::size_t i) {
  switch (t.kind()) {
    case Kind::Lam:
    case Kind::BoldLam:
      return Selector::LamBody;
    case Kind::App:
      return i == 0 ? Selector::AppFun : Selector::AppArg;
    case Kind::Clos:
      return i == 0 ? Selector::ClosSub : Selector::ClosTerm;
    case Kind::Comp:
      return i == 0 ? Selector::CompLeft : Selector::CompRight;
    case Kind::Cons:
      return i == 0 ? Selector::ConsSub : Selector::ConsTerm;
    default:
      break;
  }
  throw std::out_of_range("leaf has no children");
}

std::string paren(const LabTerm& t) {
  std::string s = print(t);
  return t.arity() == 0 ? s : "(" + s + ")";
}

std::string label_suffix(const LabTerm& t) {
  return t.label() ? "_" + std::to_string(*t.label()) : "";
}

bool in_some_level(const FVSeq& fv, const Var& a) {
  for (const auto& level : fv.levels()) {
    if (level.count(a)) return true;
  }
  return false;
}

std::size_t measure_at(const LabTerm& t) { return measure(t); }

}  // namespace

// ---------------------------------------------------------------------------
// LabTerm

LabTerm LabTerm::var(const Var& a) {
  return LabTerm(std::make_shared<const Node>(Node{Kind::Var, Sort::Term, a, {}, {}, {}}));
}

LabTerm LabTerm::pi(const Var& a) {
  return LabTerm(std::make_shared<const Node>(Node{Kind::Pi, Sort::Subst, a, {}, {}, {}}));
}

LabTerm LabTerm::id() {
  return LabTerm(std::make_shared<const Node>(Node{Kind::Id, Sort::Subst, {}, {}, {}, {}}));
}

LabTerm LabTerm::meta(std::string name, Sort sort) {
  return LabTerm(std::make_shared<const Node>(Node{Kind::Meta, sort, {}, std::move(name), {}, {}}));
}

LabTerm LabTerm::app(LabTerm fun, LabTerm arg) {
  return LabTerm(std::make_shared<const Node>(
      Node{Kind::App, Sort::Term, {}, {}, {}, {std::move(fun), std::move(arg)}}));
}

LabTerm LabTerm::lam(const Var& a, LabTerm body) {
  return LabTerm(
      std::make_shared<const Node>(Node{Kind::Lam, Sort::Term, a, {}, {}, {std::move(body)}}));
}

LabTerm LabTerm::bold_lam(const Var& a, LabTerm body, std::optional<std::size_t> label) {
  return LabTerm(std::make_shared<const Node>(
      Node{Kind::BoldLam, Sort::Term, a, {}, label, {std::move(body)}}));
}

LabTerm LabTerm::circ(LabTerm left, LabTerm right, std::optional<std::size_t> label) {
  Sort s = right.sort();
  Kind k = s == Sort::Term ? Kind::Clos : Kind::Comp;
  return LabTerm(std::make_shared<const Node>(
      Node{k, s, {}, {}, label, {std::move(left), std::move(right)}}));
}

LabTerm LabTerm::cons(LabTerm rest, LabTerm term, const Var& a) {
  return LabTerm(std::make_shared<const Node>(
      Node{Kind::Cons, Sort::Subst, a, {}, {}, {std::move(rest), std::move(term)}}));
}

LabTerm::Kind LabTerm::kind() const { return node_->kind; }
LabTerm::Sort LabTerm::sort() const { return node_->sort; }
const Var& LabTerm::name() const { return node_->name; }
const std::string& LabTerm::meta_name() const { return node_->meta; }
const std::optional<std::size_t>& LabTerm::label() const { return node_->label; }
std::size_t LabTerm::arity() const { return node_->args.size(); }
const LabTerm& LabTerm::arg(std::size_t i) const { return node_->args.at(i); }

LabTerm LabTerm::relabelled(std::optional<std::size_t> label) const {
  Node n = *node_;
  n.label = label;
  return LabTerm(std::make_shared<const Node>(std::move(n)));
}

bool operator==(const LabTerm& a, const LabTerm& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.sort == y.sort && x.name == y.name && x.meta == y.meta &&
         x.label == y.label && x.args == y.args;
}

const LabTerm& lab_subterm(const LabTerm& t, const Path& path) {
  const LabTerm* cur = &t;
  for (Selector sel : path) cur = &cur->arg(child_index(*cur, sel));
  return *cur;
}

namespace {

LabTerm with_arg(const LabTerm& t, std::size_t i, LabTerm a) {
  switch (t.kind()) {
    case Kind::App:
      return i == 0 ? LabTerm::app(std::move(a), t.arg(1)) : LabTerm::app(t.arg(0), std::move(a));
    case Kind::Lam:
      return LabTerm::lam(t.name(), std::move(a));
    case Kind::BoldLam:
      return LabTerm::bold_lam(t.name(), std::move(a), t.label());
    case Kind::Clos:
    case Kind::Comp:
      return i == 0 ? LabTerm::circ(std::move(a), t.arg(1), t.label())
                    : LabTerm::circ(t.arg(0), std::move(a), t.label());
    case Kind::Cons:
      return i == 0 ? LabTerm::cons(std::move(a), t.arg(1), t.name())
                    : LabTerm::cons(t.arg(0), std::move(a), t.name());
    default:
      break;
  }
  throw std::out_of_range("leaf has no children");
}

LabTerm replace_from(const LabTerm& t, const Path& path, std::size_t depth, const LabTerm& r) {
  if (depth == path.size()) return r;
  std::size_t i = child_index(t, path[depth]);
  return with_arg(t, i, replace_from(t.arg(i), path, depth + 1, r));
}

}  // namespace

LabTerm lab_replace(const LabTerm& t, const Path& path, const LabTerm& replacement) {
  return replace_from(t, path, 0, replacement);
}

std::string print(const LabTerm& t) {
  switch (t.kind()) {
    case Kind::Var:
      return t.name().name();
    case Kind::Pi:
      return "pi_" + t.name().name();
    case Kind::Id:
      return "id";
    case Kind::Meta:
      return t.meta_name();
    case Kind::App: {
      std::string f = t.arg(0).kind() == Kind::App ? print(t.arg(0)) : paren(t.arg(0));
      return f + " " + paren(t.arg(1));
    }
    case Kind::Lam:
      return "lam " + t.name().name() + ". " + print(t.arg(0));
    case Kind::BoldLam:
      return "LAM" + label_suffix(t) + " " + t.name().name() + ". " + print(t.arg(0));
    case Kind::Clos:
    case Kind::Comp:
      return paren(t.arg(0)) + " *" + label_suffix(t) + " " + paren(t.arg(1));
    case Kind::Cons:
      return "<" + print(t.arg(0)) + ", " + print(t.arg(1)) + "/" + t.name().name() + ">";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Measure, marking

std::size_t measure(const Term& m) {
  switch (m.kind()) {
    case Term::Kind::Var:
      return 0;
    case Term::Kind::App:
      return std::max(measure(m.fun()), measure(m.arg()));
    case Term::Kind::Lam:
      return measure(m.body()) + 1;
    case Term::Kind::Clos:
      return measure(m.sub()) + measure(m.body());
  }
  return 0;
}

std::size_t measure(const Subst& s) {
  switch (s.kind()) {
    case Subst::Kind::Id:
    case Subst::Kind::Pi:
      return 0;
    case Subst::Kind::Cons:
      return std::max(measure(s.rest()), measure(s.term()));
    case Subst::Kind::Comp:
      return measure(s.left()) + measure(s.right());
  }
  return 0;
}

std::size_t measure(const LabTerm& t) {
  switch (t.kind()) {
    case Kind::Var:
    case Kind::Pi:
    case Kind::Id:
    case Kind::Meta:
      return 0;
    case Kind::App:
    case Kind::Cons:
      return std::max(measure(t.arg(0)), measure(t.arg(1)));
    case Kind::Lam:
    case Kind::BoldLam:
      return measure(t.arg(0)) + 1;
    case Kind::Clos:
    case Kind::Comp:
      return measure(t.arg(0)) + measure(t.arg(1));
  }
  return 0;
}

LabTerm star(const Term& m) {
  switch (m.kind()) {
    case Term::Kind::Var:
      return LabTerm::var(m.name());
    case Term::Kind::App:
      return LabTerm::app(star(m.fun()), star(m.arg()));
    case Term::Kind::Lam:
      if (in_some_level(fv_term(m), m.name())) return LabTerm::bold_lam(m.name(), star(m.body()));
      return LabTerm::lam(m.name(), star(m.body()));
    case Term::Kind::Clos:
      return LabTerm::circ(star(m.sub()), star(m.body()));
  }
  return {};
}

LabTerm star(const Subst& s) {
  switch (s.kind()) {
    case Subst::Kind::Id:
      return LabTerm::id();
    case Subst::Kind::Pi:
      return LabTerm::pi(s.name());
    case Subst::Kind::Cons:
      return LabTerm::cons(star(s.rest()), star(s.term()), s.name());
    case Subst::Kind::Comp:
      return LabTerm::circ(star(s.left()), star(s.right()));
  }
  return {};
}

Expr unmark(const LabTerm& t) {
  auto term = [](const LabTerm& u) { return std::get<Term>(unmark(u)); };
  auto sub = [](const LabTerm& u) { return std::get<Subst>(unmark(u)); };
  switch (t.kind()) {
    case Kind::Var:
      return Term::var(t.name());
    case Kind::Pi:
      return Subst::pi(t.name());
    case Kind::Id:
      return Subst::id();
    case Kind::Meta:
      throw std::invalid_argument("schema variable " + t.meta_name() + " has no unmarked form");
    case Kind::App:
      return Term::app(term(t.arg(0)), term(t.arg(1)));
    case Kind::Lam:
    case Kind::BoldLam:
      return Term::lam(t.name(), term(t.arg(0)));
    case Kind::Clos:
      return Term::clos(sub(t.arg(0)), term(t.arg(1)));
    case Kind::Comp:
      return Subst::comp(sub(t.arg(0)), sub(t.arg(1)));
    case Kind::Cons:
      return Subst::cons(sub(t.arg(0)), term(t.arg(1)), t.name());
  }
  return Term{};
}

// ---------------------------------------------------------------------------
// Rules

std::string_view lab_rule_name(LabRule r) {
  static constexpr std::array<std::string_view, kLabRuleCount> kNames = {
      "Abs1", "Abs2",  "Abs3",    "Abs4",      "App", "ConsVar", "New",
      "IdVar", "Clos", "Ass",     "IdR",       "IdShift", "ConsShift", "Map",
      "Pi1",  "Pi2",   "Alpha",   "Xi",        "Decr1", "Decr2", "Decr3"};
  return kNames[static_cast<std::size_t>(r)];
}

namespace {

bool is(const LabTerm& t, Kind k) { return t.kind() == k; }

LabTerm up_subst(const Var& a, const LabTerm& s, std::optional<std::size_t> k) {
  return LabTerm::cons(LabTerm::circ(LabTerm::pi(a), s, k), LabTerm::var(a), a);
}

// Structural matching shared by R and Q. Returns the right-hand side with
// labels supplied by `lab`, which receives the rule and the redex.
struct Labels {
  std::optional<std::size_t> outer;  // root of the right-hand side
  std::optional<std::size_t> inner;  // composition below it
  std::optional<std::size_t> k;      // pi_a * s, or the second copy
};

LabTerm contract(const LabTerm& t, LabRule rule, const std::optional<Var>& fresh,
                 const Labels& l) {
  switch (rule) {
    case LabRule::Abs1:
    case LabRule::Abs2:
    case LabRule::Abs3:
    case LabRule::Abs4: {
      bool src_bold = rule == LabRule::Abs2 || rule == LabRule::Abs4;
      bool dst_bold = rule == LabRule::Abs2 || rule == LabRule::Abs3;
      if (!is(t, Kind::Clos)) invalid(rule, "not a closure");
      const LabTerm& lam = t.arg(1);
      if (!is(lam, src_bold ? Kind::BoldLam : Kind::Lam)) {
        invalid(rule, src_bold ? "body is not a marked abstraction" : "body is not an unmarked abstraction");
      }
      const Var& a = lam.name();
      LabTerm body = LabTerm::circ(up_subst(a, t.arg(0), l.k), lam.arg(0), l.inner);
      return dst_bold ? LabTerm::bold_lam(a, std::move(body), l.outer) : LabTerm::lam(a, std::move(body));
    }
    case LabRule::App:
      if (!is(t, Kind::Clos) || !is(t.arg(1), Kind::App)) invalid(rule, "not s * (M N)");
      return LabTerm::app(LabTerm::circ(t.arg(0), t.arg(1).arg(0), l.inner),
                          LabTerm::circ(t.arg(0), t.arg(1).arg(1), l.k));
    case LabRule::ConsVar:
      if (!is(t, Kind::Clos) || !is(t.arg(0), Kind::Cons) || !is(t.arg(1), Kind::Var) ||
          t.arg(0).name() != t.arg(1).name()) {
        invalid(rule, "not <s, N/a> * a");
      }
      return t.arg(0).arg(1);
    case LabRule::New:
      if (!is(t, Kind::Clos) || !is(t.arg(0), Kind::Cons) || !is(t.arg(1), Kind::Var) ||
          t.arg(0).name() == t.arg(1).name()) {
        invalid(rule, "not <s, N/a> * b with a != b");
      }
      return LabTerm::circ(t.arg(0).arg(0), t.arg(1), l.outer);
    case LabRule::IdVar:
      if (!is(t, Kind::Clos) || !is(t.arg(0), Kind::Id) || !is(t.arg(1), Kind::Var)) {
        invalid(rule, "not id * a");
      }
      return t.arg(1);
    case LabRule::Clos:
    case LabRule::Ass: {
      Kind k = rule == LabRule::Clos ? Kind::Clos : Kind::Comp;
      if (!is(t, k) || !is(t.arg(1), k)) invalid(rule, "not s * q * X");
      return LabTerm::circ(LabTerm::circ(t.arg(0), t.arg(1).arg(0), l.inner), t.arg(1).arg(1),
                           l.outer);
    }
    case LabRule::IdR:
      if (!is(t, Kind::Comp) || !is(t.arg(1), Kind::Id)) invalid(rule, "not s * id");
      return t.arg(0);
    case LabRule::IdShift:
      if (!is(t, Kind::Comp) || !is(t.arg(0), Kind::Id) || !is(t.arg(1), Kind::Pi)) {
        invalid(rule, "not id * pi_a");
      }
      return t.arg(1);
    case LabRule::ConsShift:
      if (!is(t, Kind::Comp) || !is(t.arg(0), Kind::Cons) || !is(t.arg(1), Kind::Pi) ||
          t.arg(0).name() != t.arg(1).name()) {
        invalid(rule, "not <s, N/a> * pi_a");
      }
      return t.arg(0).arg(0);
    case LabRule::Map:
      if (!is(t, Kind::Comp) || !is(t.arg(1), Kind::Cons)) invalid(rule, "not s * <q, N/a>");
      return LabTerm::cons(LabTerm::circ(t.arg(0), t.arg(1).arg(0), l.inner),
                           LabTerm::circ(t.arg(0), t.arg(1).arg(1), l.k), t.arg(1).name());
    case LabRule::Pi1:
      if (!is(t, Kind::Clos) || !is(t.arg(0), Kind::Pi) || !is(t.arg(1), Kind::Var) ||
          t.arg(0).name() == t.arg(1).name()) {
        invalid(rule, "not pi_a * b with a != b");
      }
      return t.arg(1);
    case LabRule::Pi2: {
      if (!is(t, Kind::Clos) || !is(t.arg(0), Kind::Comp) || !is(t.arg(1), Kind::Var)) {
        invalid(rule, "not (s * pi_a) * b");
      }
      const LabTerm& sp = t.arg(0);
      if (!is(sp.arg(1), Kind::Pi) || sp.arg(1).name() == t.arg(1).name()) {
        invalid(rule, "not (s * pi_a) * b with a != b");
      }
      return LabTerm::circ(sp.arg(0), t.arg(1), l.outer);
    }
    case LabRule::Alpha: {
      if (!is(t, Kind::BoldLam)) invalid(rule, "not a marked abstraction");
      if (!fresh) invalid(rule, "no binder given");
      const Var& b = *fresh;
      LabTerm ren = LabTerm::cons(LabTerm::pi(b), LabTerm::var(b), t.name());
      return LabTerm::lam(b, LabTerm::circ(std::move(ren), t.arg(0), l.inner));
    }
    case LabRule::Xi:
      if (!is(t, Kind::BoldLam)) invalid(rule, "not a marked abstraction");
      return LabTerm::lam(t.name(), t.arg(0));
    case LabRule::Decr1:
    case LabRule::Decr2:
    case LabRule::Decr3:
      break;
  }
  invalid(rule, "not a rule of R");
}

std::size_t need(const std::optional<std::size_t>& l, LabRule rule) {
  if (!l) invalid(rule, "unlabelled symbol in a Q redex");
  return *l;
}

// Largest admissible labels for the Q rule at `t`.
Labels q_labels(const LabTerm& t, LabRule rule) {
  Labels out;
  switch (rule) {
    case LabRule::Abs1:
    case LabRule::Abs3: {
      std::size_t l1 = need(t.label(), rule);
      if (l1 == 0) invalid(rule, "outer label must be i+1");
      out.inner = out.k = l1 - 1;
      out.outer = l1;
      return out;
    }
    case LabRule::Abs2:
    case LabRule::Abs4: {
      std::size_t l1 = need(t.label(), rule);
      if (!is(t, Kind::Clos) || !is(t.arg(1), Kind::BoldLam)) return out;
      std::size_t l2 = need(t.arg(1).label(), rule);
      if (l1 == 0 || l2 == 0) invalid(rule, "labels must be i+1 and j+1");
      std::size_t i = l1 - 1;
      std::size_t j = l2 - 1;
      if (j > i) invalid(rule, "no k with i = j + k");
      out.outer = l1;
      out.inner = i;
      out.k = i - j;
      return out;
    }
    case LabRule::App:
    case LabRule::Map:
    case LabRule::New: {
      std::size_t i = need(t.label(), rule);
      out.outer = out.inner = out.k = i;
      return out;
    }
    case LabRule::IdVar:
    case LabRule::IdShift:
    case LabRule::Pi1:
      if (need(t.label(), rule) != 0) invalid(rule, "label must be 0");
      return out;
    case LabRule::Clos:
    case LabRule::Ass: {
      std::size_t l1 = need(t.label(), rule);
      if (t.arity() == 2 && t.arg(1).arity() == 2) {
        std::size_t l2 = need(t.arg(1).label(), rule);
        if (l2 > l1) invalid(rule, "labels must be i+j+k and j+k");
      }
      // k = 0 maximizes the inner label i+j.
      out.outer = out.inner = l1;
      return out;
    }
    case LabRule::Pi2: {
      std::size_t i = need(t.label(), rule);
      if (t.arity() == 2 && t.arg(0).arity() == 2 && need(t.arg(0).label(), rule) != i) {
        invalid(rule, "both compositions must carry the same label");
      }
      out.outer = i;
      return out;
    }
    case LabRule::Alpha:
    case LabRule::Xi: {
      std::size_t l = need(t.label(), rule);
      if (l == 0) invalid(rule, "label must be i+1");
      out.inner = l - 1;
      return out;
    }
    case LabRule::ConsVar:
    case LabRule::IdR:
    case LabRule::ConsShift:
      return out;
    case LabRule::Decr1:
    case LabRule::Decr2:
    case LabRule::Decr3:
      break;
  }
  invalid(rule, "Decr rules take an explicit target label");
}

}  // namespace

LabTerm r_step(const LabTerm& t, const Path& position, LabRule rule, const std::optional<Var>& fresh) {
  const LabTerm& redex = lab_subterm(t, position);
  return lab_replace(t, position, contract(redex, rule, fresh, Labels{}));
}

LabTerm q_step(const LabTerm& t, const Path& position, LabRule rule, const std::optional<Var>& fresh) {
  const LabTerm& redex = lab_subterm(t, position);
  Labels l = q_labels(redex, rule);
  return lab_replace(t, position, contract(redex, rule, fresh, l));
}

LabTerm label(const LabTerm& r) {
  if (r.arity() == 0) return r;
  LabTerm out = r;
  for (std::size_t i = 0; i < r.arity(); ++i) out = with_arg(out, i, label(r.arg(i)));
  if (r.kind() == Kind::BoldLam || r.kind() == Kind::Clos || r.kind() == Kind::Comp) {
    out = out.relabelled(measure_at(r));
  }
  return out;
}

bool decr_reachable(const LabTerm& from, const LabTerm& to) {
  if (from.kind() != to.kind() || from.name() != to.name() || from.meta_name() != to.meta_name() ||
      from.arity() != to.arity()) {
    return false;
  }
  if (from.label().has_value() != to.label().has_value()) return false;
  if (from.label() && *to.label() > *from.label()) return false;
  for (std::size_t i = 0; i < from.arity(); ++i) {
    if (!decr_reachable(from.arg(i), to.arg(i))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Embedding

namespace {

LabRule plain_rule(RuleName r) {
  switch (r) {
    case RuleName::App: return LabRule::App;
    case RuleName::ConsVar: return LabRule::ConsVar;
    case RuleName::New: return LabRule::New;
    case RuleName::IdVar: return LabRule::IdVar;
    case RuleName::Clos: return LabRule::Clos;
    case RuleName::Ass: return LabRule::Ass;
    case RuleName::IdR: return LabRule::IdR;
    case RuleName::IdShift: return LabRule::IdShift;
    case RuleName::ConsShift: return LabRule::ConsShift;
    case RuleName::Map: return LabRule::Map;
    case RuleName::Pi1: return LabRule::Pi1;
    case RuleName::Pi2: return LabRule::Pi2;
    case RuleName::Alpha1: return LabRule::Alpha;
    default: break;
  }
  throw EmbedError("rule " + std::string(rule_name(r)) + " has no counterpart in R");
}

// Paths where `got` is marked and `want` is not, outermost first.
void paled(const LabTerm& got, const LabTerm& want, Path& path, std::vector<Path>& out) {
  bool same_shape = got.arity() == want.arity() && got.name() == want.name();
  if (got.kind() == Kind::BoldLam && want.kind() == Kind::Lam && same_shape) {
    out.push_back(path);
  } else if (got.kind() != want.kind() || !same_shape) {
    throw EmbedError("R result " + print(got) + " does not match " + print(want));
  }
  for (std::size_t i = 0; i < got.arity(); ++i) {
    path.push_back(selector_for(got, i));
    paled(got.arg(i), want.arg(i), path, out);
    path.pop_back();
  }
}

std::vector<RStep> embed(const Term& m1, const Redex& redex, const Term& m2) {
  if (redex.position.ctx_index) throw EmbedError("context renaming is not a term step");
  const Path& pos = redex.position.path;
  LabTerm src = star(m1);
  LabTerm dst = star(m2);
  LabRule rule;
  if (redex.rule == RuleName::Abs) {
    const LabTerm& before = lab_subterm(src, pos);
    const LabTerm& after = lab_subterm(dst, pos);
    bool b1 = before.arity() == 2 && before.arg(1).kind() == Kind::BoldLam;
    bool b2 = after.kind() == Kind::BoldLam;
    rule = b1 ? (b2 ? LabRule::Abs2 : LabRule::Abs4) : (b2 ? LabRule::Abs3 : LabRule::Abs1);
  } else {
    rule = plain_rule(redex.rule);
  }
  std::vector<RStep> steps;
  LabTerm cur;
  try {
    cur = r_step(src, pos, rule, redex.fresh);
  } catch (const InvalidRedex& e) {
    throw EmbedError(std::string("no R step: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw EmbedError(std::string("no R step: ") + e.what());
  }
  steps.push_back(RStep{rule, pos, rule == LabRule::Alpha ? redex.fresh : std::nullopt, cur});
  std::vector<Path> xs;
  Path p;
  paled(cur, dst, p, xs);
  for (const Path& x : xs) {
    cur = r_step(cur, x, LabRule::Xi);
    steps.push_back(RStep{LabRule::Xi, x, std::nullopt, cur});
  }
  if (!(cur == dst)) throw EmbedError("R derivation ends in " + print(cur) + ", not " + print(dst));
  return steps;
}

}  // namespace

std::vector<RStep> embed_step(const Term& m1, const Redex& redex) {
  RewriteOptions opt;
  opt.beta = false;
  Term m2 = std::get<Term>(step(Expr{m1}, redex, opt));
  return embed(m1, redex, m2);
}

std::vector<RStep> embed_step(const Term& m1, const Term& m2, RuleName rule) {
  RewriteOptions opt;
  opt.beta = false;
  LabTerm target = star(m2);
  for (Redex r : redexes(Expr{m1}, opt)) {
    if (r.rule != rule || r.position.ctx_index) continue;
    if (rule == RuleName::Alpha1) {
      Expr at = subexpr_at(Expr{m2}, r.position.path);
      const Term* t = std::get_if<Term>(&at);
      if (!t || !t->is_lam()) continue;
      r.fresh = t->name();
    }
    Expr out;
    try {
      out = step(Expr{m1}, r, opt);
    } catch (const std::exception&) {
      continue;
    }
    if (star(std::get<Term>(out)) == target) return embed(m1, r, m2);
  }
  throw EmbedError("no " + std::string(rule_name(rule)) + " step leads from the first term to the second");
}

// ---------------------------------------------------------------------------
// Precedence and path order

Symbol symbol_of(const LabTerm& t) {
  Symbol s{Symbol::Kind::Id, {}, {}, {}};
  switch (t.kind()) {
    case Kind::Var: s.kind = Symbol::Kind::Var; s.name = t.name(); break;
    case Kind::Pi: s.kind = Symbol::Kind::Pi; s.name = t.name(); break;
    case Kind::Id: s.kind = Symbol::Kind::Id; break;
    case Kind::Meta: s.kind = Symbol::Kind::Meta; s.meta = t.meta_name(); break;
    case Kind::App: s.kind = Symbol::Kind::App; break;
    case Kind::Lam: s.kind = Symbol::Kind::Lam; s.name = t.name(); break;
    case Kind::BoldLam:
      s.kind = Symbol::Kind::BoldLam;
      s.name = t.name();
      s.label = t.label();
      break;
    case Kind::Clos:
    case Kind::Comp:
      s.kind = Symbol::Kind::Circ;
      s.label = t.label();
      break;
    case Kind::Cons: s.kind = Symbol::Kind::Cons; s.name = t.name(); break;
  }
  return s;
}

bool q_precedence(const Symbol& f, const Symbol& g) {
  using K = Symbol::Kind;
  if (f.kind == K::Circ && f.label) {
    std::size_t i = *f.label;
    switch (g.kind) {
      case K::Circ: return g.label && *g.label < i;
      case K::BoldLam: return g.label && *g.label <= i;
      case K::Lam:
      case K::App:
      case K::Cons:
      case K::Pi:
      case K::Var:
        return true;
      default:
        return false;
    }
  }
  if (f.kind == K::BoldLam && f.label) {
    std::size_t i = *f.label;
    switch (g.kind) {
      case K::Circ:
      case K::BoldLam:
        return g.label && *g.label < i;
      case K::Cons: return g.name == f.name || i >= 1;
      case K::App: return i >= 1;
      case K::Lam:
      case K::Pi:
      case K::Var:
        return true;
      default:
        return false;
    }
  }
  return false;
}

namespace {

class Lpo {
 public:
  Lpo(Precedence prec, LexStatus status) : prec_(prec), status_(status) {}

  bool gt(const LabTerm& s, const LabTerm& t) const {
    for (std::size_t i = 0; i < s.arity(); ++i) {
      if (s.arg(i) == t || gt(s.arg(i), t)) return true;
    }
    Symbol f = symbol_of(s);
    Symbol g = symbol_of(t);
    if (prec_(f, g)) return dominates_args(s, t);
    if (f == g && s.arity() == t.arity()) {
      std::size_t n = s.arity();
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t i = status_ == LexStatus::LeftToRight ? k : n - 1 - k;
        if (s.arg(i) == t.arg(i)) continue;
        return gt(s.arg(i), t.arg(i)) && dominates_args(s, t);
      }
    }
    return false;
  }

 private:
  bool dominates_args(const LabTerm& s, const LabTerm& t) const {
    for (std::size_t j = 0; j < t.arity(); ++j) {
      if (!gt(s, t.arg(j))) return false;
    }
    return true;
  }

  Precedence prec_;
  LexStatus status_;
};

}  // namespace

bool lpo_greater(const LabTerm& s, const LabTerm& t, Precedence prec, LexStatus status) {
  return Lpo(prec, status).gt(s, t);
}

// ---------------------------------------------------------------------------
// Q schemas

std::vector<QInstance> q_instances(std::size_t bound) {
  using L = LabTerm;
  const Var x("x");
  const Var y("y");
  const std::array<Var, 2> names = {x, y};
  const L s = L::meta("s", Sort::Subst);
  const L q = L::meta("q", Sort::Subst);
  const L r = L::meta("r", Sort::Subst);
  const L M = L::meta("M", Sort::Term);
  const L N = L::meta("N", Sort::Term);

  std::vector<QInstance> out;
  auto add = [&](LabRule rule, std::string params, L lhs, L rhs) {
    out.push_back(QInstance{rule, std::move(params), std::move(lhs), std::move(rhs)});
  };
  auto nm = [](const Var& v) { return v.name(); };
  auto lab = [](const char* n, std::size_t v) { return std::string(n) + "=" + std::to_string(v); };

  for (const Var& a : names) {
    for (std::size_t i = 0; i <= bound; ++i) {
      for (std::size_t k = 0; k <= i; ++k) {
        std::string p = lab("i", i) + " " + lab("k", k) + " a=" + nm(a);
        L body = L::circ(up_subst(a, s, k), M, i);
        add(LabRule::Abs1, p, L::circ(s, L::lam(a, M), i + 1), L::lam(a, body));
        add(LabRule::Abs3, p, L::circ(s, L::lam(a, M), i + 1), L::bold_lam(a, body, i + 1));
      }
    }
    for (std::size_t j = 0; j <= bound; ++j) {
      for (std::size_t k = 0; k <= bound; ++k) {
        std::size_t i = j + k;
        std::string p = lab("j", j) + " " + lab("k", k) + " a=" + nm(a);
        L lhs = L::circ(s, L::bold_lam(a, M, j + 1), i + 1);
        L body = L::circ(up_subst(a, s, k), M, i);
        add(LabRule::Abs2, p, lhs, L::bold_lam(a, body, i + 1));
        add(LabRule::Abs4, p, lhs, L::lam(a, body));
      }
    }
  }

  for (std::size_t i = 0; i <= bound; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (std::size_t k = 0; k <= i; ++k) {
        std::string p = lab("i", i) + " " + lab("j", j) + " " + lab("k", k);
        add(LabRule::App, p, L::circ(s, L::app(M, N), i), L::app(L::circ(s, M, j), L::circ(s, N, k)));
        for (const Var& a : names) {
          add(LabRule::Map, p + " a=" + nm(a), L::circ(s, L::cons(q, N, a), i),
              L::cons(L::circ(s, q, j), L::circ(s, N, k), a));
        }
      }
    }
  }

  for (const Var& a : names) {
    for (const Var& b : names) {
      std::string ab = "a=" + nm(a) + " b=" + nm(b);
      for (std::size_t i = 0; i <= bound; ++i) {
        if (a == b) {
          add(LabRule::ConsVar, lab("i", i) + " a=" + nm(a), L::circ(L::cons(s, N, a), L::var(a), i), N);
          add(LabRule::ConsShift, lab("i", i) + " a=" + nm(a),
              L::circ(L::cons(s, N, a), L::pi(a), i), s);
          continue;
        }
        for (std::size_t j = 0; j <= i; ++j) {
          add(LabRule::New, lab("i", i) + " " + lab("j", j) + " " + ab,
              L::circ(L::cons(s, N, a), L::var(b), i), L::circ(s, L::var(b), j));
        }
        add(LabRule::Pi2, lab("i", i) + " " + ab, L::circ(L::circ(s, L::pi(a), i), L::var(b), i),
            L::circ(s, L::var(b), i));
      }
      if (a != b) add(LabRule::Pi1, ab, L::circ(L::pi(a), L::var(b), 0), L::var(b));
      for (std::size_t i = 0; i <= bound; ++i) {
        L ren = L::cons(L::pi(b), L::var(b), a);
        add(LabRule::Alpha, lab("i", i) + " " + ab, L::bold_lam(a, M, i + 1),
            L::lam(b, L::circ(ren, M, i)));
      }
    }
    add(LabRule::IdVar, "a=" + nm(a), L::circ(L::id(), L::var(a), 0), L::var(a));
    add(LabRule::IdShift, "a=" + nm(a), L::circ(L::id(), L::pi(a), 0), L::pi(a));
    for (std::size_t i = 0; i <= bound; ++i) {
      add(LabRule::Xi, lab("i", i) + " a=" + nm(a), L::bold_lam(a, M, i + 1), L::lam(a, M));
      for (std::size_t j = 0; j < i; ++j) {
        add(LabRule::Decr1, lab("i", i) + " " + lab("j", j) + " a=" + nm(a), L::bold_lam(a, M, i),
            L::bold_lam(a, M, j));
      }
    }
  }

  for (std::size_t i = 0; i <= bound; ++i) {
    for (std::size_t j = 0; j <= bound; ++j) {
      for (std::size_t k = 0; k <= bound; ++k) {
        std::string p = lab("i", i) + " " + lab("j", j) + " " + lab("k", k);
        add(LabRule::Clos, p, L::circ(s, L::circ(q, M, j + k), i + j + k),
            L::circ(L::circ(s, q, i + j), M, i + j + k));
        add(LabRule::Ass, p, L::circ(s, L::circ(q, r, j + k), i + j + k),
            L::circ(L::circ(s, q, i + j), r, i + j + k));
      }
    }
    add(LabRule::IdR, lab("i", i), L::circ(s, L::id(), i), s);
    for (std::size_t j = 0; j < i; ++j) {
      std::string p = lab("i", i) + " " + lab("j", j);
      add(LabRule::Decr2, p, L::circ(s, M, i), L::circ(s, M, j));
      add(LabRule::Decr3, p, L::circ(s, q, i), L::circ(s, q, j));
    }
  }
  return out;
}

QReport check_q_decrease(std::size_t label_bound, LexStatus status) {
  QReport rep;
  rep.label_bound = label_bound;
  std::vector<QInstance> all = q_instances(label_bound);
  std::vector<bool> seen(kLabRuleCount, false);
  for (QInstance& inst : all) {
    seen[static_cast<std::size_t>(inst.rule)] = true;
    if (!lpo_greater(inst.lhs, inst.rhs, q_precedence, status)) rep.failures.push_back(std::move(inst));
  }
  rep.instances = all.size();
  rep.rules_checked = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
  return rep;
}

std::string report_to_json(const QReport& r) {
  nlohmann::ordered_json j;
  j["rules_checked"] = r.rules_checked;
  j["instances"] = r.instances;
  nlohmann::ordered_json fails = nlohmann::ordered_json::array();
  for (const QInstance& f : r.failures) {
    fails.push_back({{"rule", std::string(lab_rule_name(f.rule))},
                     {"params", f.params},
                     {"lhs", print(f.lhs)},
                     {"rhs", print(f.rhs)}});
  }
  j["failures"] = std::move(fails);
  j["label_bound"] = r.label_bound;
  j["note"] = "labels are instantiated up to label_bound only";
  return j.dump(2);
}

}  // namespace lampi
