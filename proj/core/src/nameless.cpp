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

#include "lampi/nameless.hpp"

#include <utility>

#include "lampi/rewrite.hpp"

namespace lampi {
namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

constexpr std::size_t kSigmaStepCap = 1000000;

}  // namespace

// --- Construction -------------------------------------------------------------

NamelessTerm NamelessTerm::one() {
  static const NamelessTerm kOne(std::make_shared<const detail::NTermNode>(
      detail::NTermNode{Kind::One, {}, {}, {}, 1, mix(11, 0), 0}));
  return kOne;
}

NamelessTerm NamelessTerm::num(std::size_t n) {
  if (n == 0) throw std::invalid_argument("numerals start at 1");
  return NamelessTerm(std::make_shared<const detail::NTermNode>(
      detail::NTermNode{Kind::Num, {}, {}, {}, 1, mix(15, n), n}));
}

NamelessTerm NamelessTerm::app(NamelessTerm fun, NamelessTerm arg) {
  std::size_t size = 1 + fun.size() + arg.size();
  std::size_t h = mix(mix(12, fun.hash()), arg.hash());
  return NamelessTerm(std::make_shared<const detail::NTermNode>(
      detail::NTermNode{Kind::App, std::move(fun), std::move(arg), {}, size, h, 0}));
}

NamelessTerm NamelessTerm::lam(NamelessTerm body) {
  std::size_t size = 1 + body.size();
  std::size_t h = mix(13, body.hash());
  return NamelessTerm(std::make_shared<const detail::NTermNode>(
      detail::NTermNode{Kind::Lam, std::move(body), {}, {}, size, h, 0}));
}

NamelessTerm NamelessTerm::clos(NamelessSubst sub, NamelessTerm body) {
  std::size_t size = 1 + sub.size() + body.size();
  std::size_t h = mix(mix(14, sub.hash()), body.hash());
  return NamelessTerm(std::make_shared<const detail::NTermNode>(
      detail::NTermNode{Kind::Clos, std::move(body), {}, std::move(sub), size, h, 0}));
}

bool operator==(const NamelessTerm& a, const NamelessTerm& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case NamelessTerm::Kind::One:
      return true;
    case NamelessTerm::Kind::Num:
      return a.index() == b.index();
    case NamelessTerm::Kind::App:
      return a.fun() == b.fun() && a.arg() == b.arg();
    case NamelessTerm::Kind::Lam:
      return a.body() == b.body();
    case NamelessTerm::Kind::Clos:
      return a.sub() == b.sub() && a.body() == b.body();
  }
  return false;
}

NamelessSubst NamelessSubst::id() {
  static const NamelessSubst kId(std::make_shared<const detail::NSubstNode>(
      detail::NSubstNode{Kind::Id, {}, {}, {}, 1, mix(15, 0)}));
  return kId;
}

NamelessSubst NamelessSubst::pi() {
  static const NamelessSubst kPi(std::make_shared<const detail::NSubstNode>(
      detail::NSubstNode{Kind::Pi, {}, {}, {}, 1, mix(16, 0)}));
  return kPi;
}

NamelessSubst NamelessSubst::cons(NamelessSubst rest, NamelessTerm term) {
  std::size_t size = 1 + rest.size() + term.size();
  std::size_t h = mix(mix(17, rest.hash()), term.hash());
  return NamelessSubst(std::make_shared<const detail::NSubstNode>(
      detail::NSubstNode{Kind::Cons, std::move(rest), {}, std::move(term), size, h}));
}

NamelessSubst NamelessSubst::comp(NamelessSubst left, NamelessSubst right) {
  std::size_t size = 1 + left.size() + right.size();
  std::size_t h = mix(mix(18, left.hash()), right.hash());
  return NamelessSubst(std::make_shared<const detail::NSubstNode>(
      detail::NSubstNode{Kind::Comp, std::move(left), std::move(right), {}, size, h}));
}

bool operator==(const NamelessSubst& a, const NamelessSubst& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case NamelessSubst::Kind::Id:
    case NamelessSubst::Kind::Pi:
      return true;
    case NamelessSubst::Kind::Cons:
      return a.rest() == b.rest() && a.term() == b.term();
    case NamelessSubst::Kind::Comp:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

// --- Numerals -----------------------------------------------------------------

NamelessTerm numeral(std::size_t n) {
  if (n == 0) throw std::invalid_argument("numerals start at 1");
  if (n == 1) return NamelessTerm::one();
  NamelessSubst chain = NamelessSubst::pi();
  for (std::size_t i = 2; i < n; ++i) chain = NamelessSubst::comp(chain, NamelessSubst::pi());
  return NamelessTerm::clos(chain, NamelessTerm::one());
}

namespace {

// Length of a left-nested shift chain ((p * p) * ...) * p, or 0.
std::size_t shift_chain_length(const NamelessSubst& u) {
  if (u.is_pi()) return 1;
  if (u.is_comp() && u.right().is_pi()) {
    std::size_t n = shift_chain_length(u.left());
    return n ? n + 1 : 0;
  }
  return 0;
}

}  // namespace

std::optional<std::size_t> numeral_value(const NamelessTerm& u) {
  if (u.is_one()) return 1;
  if (u.is_clos() && u.body().is_one()) {
    std::size_t n = shift_chain_length(u.sub());
    if (n) return n + 1;
  }
  return std::nullopt;
}

// --- Sigma normalization ---------------------------------------------------------

namespace {

using NS = NamelessSubst;
using NT = NamelessTerm;

std::optional<NT> sigma_root(const NT& t) {
  if (!t.is_clos()) return std::nullopt;
  const NS& u = t.sub();
  const NT& m = t.body();
  switch (m.kind()) {
    case NT::Kind::Lam:
      return NT::lam(NT::clos(NS::cons(NS::comp(NS::pi(), u), NT::one()), m.body()));
    case NT::Kind::App:
      return NT::app(NT::clos(u, m.fun()), NT::clos(u, m.arg()));
    case NT::Kind::One:
      if (u.is_cons()) return u.term();
      if (u.is_id()) return NT::one();
      return std::nullopt;
    case NT::Kind::Num:
      return std::nullopt;
    case NT::Kind::Clos:
      return NT::clos(NS::comp(u, m.sub()), m.body());
  }
  return std::nullopt;
}

std::optional<NS> sigma_root(const NS& s) {
  if (!s.is_comp()) return std::nullopt;
  const NS& u = s.left();
  const NS& v = s.right();
  if (v.is_comp()) return NS::comp(NS::comp(u, v.left()), v.right());
  if (v.is_id()) return u;
  if (v.is_pi() && u.is_id()) return v;
  if (v.is_pi() && u.is_cons()) return u.rest();
  if (v.is_cons()) return NS::cons(NS::comp(u, v.rest()), NT::clos(u, v.term()));
  return std::nullopt;
}

template <bool Outermost>
std::optional<NT> sigma_step(const NT& t);
template <bool Outermost>
std::optional<NS> sigma_step(const NS& s);

template <bool Outermost>
std::optional<NT> sigma_children(const NT& t) {
  switch (t.kind()) {
    case NT::Kind::One:
    case NT::Kind::Num:
      return std::nullopt;
    case NT::Kind::Lam:
      if (auto b = sigma_step<Outermost>(t.body())) return NT::lam(*b);
      return std::nullopt;
    case NT::Kind::App:
      if (Outermost) {
        if (auto f = sigma_step<Outermost>(t.fun())) return NT::app(*f, t.arg());
        if (auto a = sigma_step<Outermost>(t.arg())) return NT::app(t.fun(), *a);
      } else {
        if (auto a = sigma_step<Outermost>(t.arg())) return NT::app(t.fun(), *a);
        if (auto f = sigma_step<Outermost>(t.fun())) return NT::app(*f, t.arg());
      }
      return std::nullopt;
    case NT::Kind::Clos:
      if (Outermost) {
        if (auto u = sigma_step<Outermost>(t.sub())) return NT::clos(*u, t.body());
        if (auto b = sigma_step<Outermost>(t.body())) return NT::clos(t.sub(), *b);
      } else {
        if (auto b = sigma_step<Outermost>(t.body())) return NT::clos(t.sub(), *b);
        if (auto u = sigma_step<Outermost>(t.sub())) return NT::clos(*u, t.body());
      }
      return std::nullopt;
  }
  return std::nullopt;
}

template <bool Outermost>
std::optional<NS> sigma_children(const NS& s) {
  switch (s.kind()) {
    case NS::Kind::Id:
    case NS::Kind::Pi:
      return std::nullopt;
    case NS::Kind::Cons:
      if (Outermost) {
        if (auto r = sigma_step<Outermost>(s.rest())) return NS::cons(*r, s.term());
        if (auto v = sigma_step<Outermost>(s.term())) return NS::cons(s.rest(), *v);
      } else {
        if (auto v = sigma_step<Outermost>(s.term())) return NS::cons(s.rest(), *v);
        if (auto r = sigma_step<Outermost>(s.rest())) return NS::cons(*r, s.term());
      }
      return std::nullopt;
    case NS::Kind::Comp:
      if (Outermost) {
        if (auto l = sigma_step<Outermost>(s.left())) return NS::comp(*l, s.right());
        if (auto r = sigma_step<Outermost>(s.right())) return NS::comp(s.left(), *r);
      } else {
        if (auto r = sigma_step<Outermost>(s.right())) return NS::comp(s.left(), *r);
        if (auto l = sigma_step<Outermost>(s.left())) return NS::comp(*l, s.right());
      }
      return std::nullopt;
  }
  return std::nullopt;
}

template <bool Outermost>
std::optional<NT> sigma_step(const NT& t) {
  if (Outermost) {
    if (auto r = sigma_root(t)) return r;
    return sigma_children<Outermost>(t);
  }
  if (auto c = sigma_children<Outermost>(t)) return c;
  return sigma_root(t);
}

template <bool Outermost>
std::optional<NS> sigma_step(const NS& s) {
  if (Outermost) {
    if (auto r = sigma_root(s)) return r;
    return sigma_children<Outermost>(s);
  }
  if (auto c = sigma_children<Outermost>(s)) return c;
  return sigma_root(s);
}

template <typename T>
T normalize_with(const T& x, SigmaStrategy strategy) {
  T cur = x;
  for (std::size_t n = 0; n < kSigmaStepCap; ++n) {
    std::optional<T> next = strategy == SigmaStrategy::LeftmostOutermost
                                ? sigma_step<true>(cur)
                                : sigma_step<false>(cur);
    if (!next) return cur;
    cur = std::move(*next);
  }
  throw LimitFault("sigma normalization exceeded the step cap");
}

}  // namespace

NamelessTerm sigma_normalize(const NamelessTerm& u, SigmaStrategy strategy) {
  return normalize_with(u, strategy);
}

NamelessSubst sigma_normalize(const NamelessSubst& u, SigmaStrategy strategy) {
  return normalize_with(u, strategy);
}

bool is_sigma_normal(const NamelessExpr& e) {
  if (const NT* t = std::get_if<NT>(&e)) return !sigma_step<true>(*t);
  return !sigma_step<true>(std::get<NS>(e));
}

bool is_pure(const NamelessTerm& u) {
  if (u.is_num() || numeral_value(u)) return true;
  switch (u.kind()) {
    case NT::Kind::App:
      return is_pure(u.fun()) && is_pure(u.arg());
    case NT::Kind::Lam:
      return is_pure(u.body());
    default:
      return false;
  }
}

// --- Translation ----------------------------------------------------------------

namespace {

NamelessExpr translate_with(const Derivation& d, bool atoms) {
  auto term = [&](std::size_t i) { return std::get<NT>(translate_with(d.premises[i], atoms)); };
  auto subst = [&](std::size_t i) { return std::get<NS>(translate_with(d.premises[i], atoms)); };
  switch (d.rule) {
    case WfRule::I:
      return atoms ? NT::num(1) : NT::one();
    case WfRule::II: {
      std::size_t n = 1;
      const Derivation* cur = &d;
      while (cur->rule == WfRule::II) {
        ++n;
        cur = &cur->premises[0];
      }
      return atoms ? NT::num(n) : numeral(n);
    }
    case WfRule::III:
      return NT::app(term(0), term(1));
    case WfRule::IV:
      return NT::lam(term(0));
    case WfRule::V:
      return NT::clos(subst(0), term(1));
    case WfRule::VI:
      return NS::id();
    case WfRule::VII:
      return NS::pi();
    case WfRule::VIII:
      return NS::cons(subst(0), term(1));
    case WfRule::IX:
      return NS::comp(subst(0), subst(1));
  }
  throw std::logic_error("unknown derivation rule");
}

NT expand(const NT& t);

NS expand(const NS& s) {
  switch (s.kind()) {
    case NS::Kind::Cons:
      return NS::cons(expand(s.rest()), expand(s.term()));
    case NS::Kind::Comp:
      return NS::comp(expand(s.left()), expand(s.right()));
    default:
      return s;
  }
}

NT expand(const NT& t) {
  switch (t.kind()) {
    case NT::Kind::Num:
      return numeral(t.index());
    case NT::Kind::App:
      return NT::app(expand(t.fun()), expand(t.arg()));
    case NT::Kind::Lam:
      return NT::lam(expand(t.body()));
    case NT::Kind::Clos:
      return NT::clos(expand(t.sub()), expand(t.body()));
    case NT::Kind::One:
      return t;
  }
  return t;
}

}  // namespace

NamelessExpr translate(const Derivation& d) { return translate_with(d, false); }

NamelessExpr expand_numerals(const NamelessExpr& e) {
  return std::visit([](const auto& v) { return NamelessExpr{expand(v)}; }, e);
}

namespace {

Derivation derive_or_throw(const Judgement& j) {
  Checked<Derivation> d = derive(j);
  if (auto* nd = std::get_if<NotDerivable>(&d)) throw NotDerivableError(*nd);
  return std::get<Derivation>(std::move(d));
}

std::size_t context_length(const Judgement& j) {
  if (const TermJ* t = std::get_if<TermJ>(&j)) return t->ctx.size();
  return std::get<SubstJ>(j).ctx.size();
}

}  // namespace

NamelessExpr translate(const Judgement& j) { return translate(derive_or_throw(j)); }

NamelessJudgement translate_ext(const Derivation& d) {
  return NamelessJudgement{context_length(d.root), translate_with(d, true)};
}

NamelessJudgement translate_ext(const Judgement& j) { return translate_ext(derive_or_throw(j)); }

bool simeq(const Judgement& a, const Judgement& b) { return translate(a) == translate(b); }

bool alpha_eq(const Judgement& a, const Judgement& b) {
  return translate_ext(a) == translate_ext(b);
}

NamelessSubst nameless_lift(std::size_t n, const NamelessSubst& s) {
  NS out = s;
  for (std::size_t i = 0; i < n; ++i) out = NS::cons(NS::comp(NS::pi(), out), NT::one());
  return out;
}

// --- Beta on pure terms ---------------------------------------------------------

namespace {

void collect_beta(const NT& u, Path& path, std::vector<Path>& out) {
  if (numeral_value(u)) return;
  if (u.is_app()) {
    if (u.fun().is_lam()) out.push_back(path);
    path.push_back(Selector::AppFun);
    collect_beta(u.fun(), path, out);
    path.back() = Selector::AppArg;
    collect_beta(u.arg(), path, out);
    path.pop_back();
  } else if (u.is_lam()) {
    path.push_back(Selector::LamBody);
    collect_beta(u.body(), path, out);
    path.pop_back();
  }
}

NT contract_at(const NT& u, const Path& path, std::size_t i) {
  if (i == path.size()) {
    if (!u.is_app() || !u.fun().is_lam()) throw NamelessStepError("not a Beta redex");
    return NT::clos(NS::cons(NS::id(), u.arg()), u.fun().body());
  }
  switch (path[i]) {
    case Selector::LamBody:
      if (u.is_lam()) return NT::lam(contract_at(u.body(), path, i + 1));
      break;
    case Selector::AppFun:
      if (u.is_app()) return NT::app(contract_at(u.fun(), path, i + 1), u.arg());
      break;
    case Selector::AppArg:
      if (u.is_app()) return NT::app(u.fun(), contract_at(u.arg(), path, i + 1));
      break;
    default:
      break;
  }
  throw NamelessStepError("position does not address a node");
}

}  // namespace

std::vector<Path> beta_redex_paths(const NamelessTerm& u) {
  std::vector<Path> out;
  Path path;
  collect_beta(u, path, out);
  return out;
}

NamelessTerm beta_step_pure(const NamelessTerm& u, const Path& position) {
  if (!is_pure(u)) throw NamelessStepError("term is not pure");
  return sigma_normalize(contract_at(u, position, 0));
}

std::optional<NamelessTerm> beta_normalize_pure(const NamelessTerm& u, std::size_t max_steps) {
  NT cur = u;
  for (std::size_t n = 0; n <= max_steps; ++n) {
    std::vector<Path> rs = beta_redex_paths(cur);
    if (rs.empty()) return cur;
    if (n == max_steps) break;
    cur = beta_step_pure(cur, rs.front());
  }
  return std::nullopt;
}

// --- Printing ---------------------------------------------------------------------

namespace {

enum class Slot { Top, Fun, Arg };

void print_nt(const NT& t, Slot slot, std::string& out);
void print_ns(const NS& s, std::string& out);

void print_element(const NS& s, std::string& out) {
  if (s.is_comp()) {
    out += '(';
    print_ns(s, out);
    out += ')';
  } else {
    print_ns(s, out);
  }
}

void print_nt(const NT& t, Slot slot, std::string& out) {
  if (t.is_num()) {
    out += "#" + std::to_string(t.index());
    return;
  }
  if (auto n = numeral_value(t)) {
    out += *n == 1 ? "1" : "#" + std::to_string(*n);
    return;
  }
  switch (t.kind()) {
    case NT::Kind::One:
    case NT::Kind::Num:
      out += '1';
      return;
    case NT::Kind::App: {
      bool paren = slot == Slot::Arg;
      if (paren) out += '(';
      print_nt(t.fun(), Slot::Fun, out);
      out += ' ';
      print_nt(t.arg(), Slot::Arg, out);
      if (paren) out += ')';
      return;
    }
    case NT::Kind::Lam: {
      bool paren = slot != Slot::Top;
      if (paren) out += '(';
      out += "\\ ";
      print_nt(t.body(), Slot::Top, out);
      if (paren) out += ')';
      return;
    }
    case NT::Kind::Clos: {
      bool paren = slot != Slot::Top;
      if (paren) out += '(';
      print_element(t.sub(), out);
      out += " * ";
      print_nt(t.body(), Slot::Top, out);
      if (paren) out += ')';
      return;
    }
  }
}

void print_ns(const NS& s, std::string& out) {
  switch (s.kind()) {
    case NS::Kind::Id:
      out += "id";
      return;
    case NS::Kind::Pi:
      out += 'p';
      return;
    case NS::Kind::Cons:
      out += '<';
      print_ns(s.rest(), out);
      out += ", ";
      print_nt(s.term(), Slot::Top, out);
      out += '>';
      return;
    case NS::Kind::Comp:
      print_element(s.left(), out);
      out += " * ";
      print_ns(s.right(), out);
      return;
  }
}

}  // namespace

std::string print(const NamelessTerm& u) {
  std::string out;
  print_nt(u, Slot::Top, out);
  return out;
}

std::string print(const NamelessSubst& u) {
  std::string out;
  print_ns(u, out);
  return out;
}

std::string print(const NamelessExpr& u) {
  return std::visit([](const auto& v) { return print(v); }, u);
}

std::string print(const NamelessJudgement& j) {
  return std::to_string(j.len) + " |- " + print(j.body);
}

}  // namespace lampi
