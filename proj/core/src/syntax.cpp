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

#include "lampi/syntax.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <utility>

#include "parser.hpp"

namespace lampi {
namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

Context plain_context(const std::vector<detail::CtxEntry>& entries, std::size_t offset) {
  std::vector<Var> vars;
  for (const auto& e : entries) {
    if (e.type) throw ParseError(offset, {"untyped context"}, "type annotation");
    vars.push_back(e.var);
  }
  return Context(std::move(vars));
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected,
                       const std::string& found)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": expected " +
                         join(expected, " or ") + ", found " + found),
      offset_(offset),
      expected_(std::move(expected)) {}

Term parse_term(std::string_view text) {
  detail::Parser p(text);
  Term t = p.term();
  p.finish();
  return t;
}

Subst parse_subst(std::string_view text) {
  detail::Parser p(text);
  Subst s = p.subst();
  p.finish();
  return s;
}

Context parse_context(std::string_view text) {
  detail::Parser p(text);
  Context c = plain_context(p.context(), 0);
  p.finish();
  return c;
}

Judgement parse_judgement(std::string_view text) {
  detail::Parser p(text);
  Context ctx = plain_context(p.context(), 0);
  p.expect(detail::Tok::Turnstile);
  Expr e = p.expr();
  if (auto* t = std::get_if<Term>(&e)) {
    p.finish();
    return TermJ{std::move(ctx), *t};
  }
  p.expect(detail::Tok::Triangle);
  Context cod = plain_context(p.context(), text.size());
  p.finish();
  return SubstJ{std::move(ctx), std::get<Subst>(std::move(e)), std::move(cod)};
}

Type parse_type(std::string_view text) {
  detail::Parser p(text);
  Type t = p.type();
  p.finish();
  return t;
}

Parsed parse(std::string_view text, Category category) {
  switch (category) {
    case Category::Term:
      return parse_term(text);
    case Category::Subst:
      return parse_subst(text);
    case Category::Context:
      return parse_context(text);
    case Category::Judgement:
      return parse_judgement(text);
  }
  return parse_term(text);
}

// --- Printing ---------------------------------------------------------------

namespace {

enum class Slot { Top, Fun, Arg };

void print_term(const Term& t, Slot slot, std::string& out);
void print_subst(const Subst& s, std::string& out);

void print_binder(const Term& lam, std::string& out) {
  out += lam.name().name();
  if (lam.annotation()) {
    out += ':';
    const Type& ty = *lam.annotation();
    if (ty.kind() == Type::Kind::Arrow) {
      out += '(' + print(ty) + ')';
    } else {
      out += print(ty);
    }
  }
}

// An element of a `*` chain: composition is parenthesized so that
// `(s * q) * M` stays distinct from `s * q * M`.
void print_chain_element(const Subst& s, std::string& out) {
  if (s.is_comp()) {
    out += '(';
    print_subst(s, out);
    out += ')';
  } else {
    print_subst(s, out);
  }
}

void print_term(const Term& t, Slot slot, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.name().name();
      return;
    case Term::Kind::App: {
      bool paren = slot == Slot::Arg;
      if (paren) out += '(';
      print_term(t.fun(), Slot::Fun, out);
      out += ' ';
      print_term(t.arg(), Slot::Arg, out);
      if (paren) out += ')';
      return;
    }
    case Term::Kind::Lam: {
      bool paren = slot != Slot::Top;
      if (paren) out += '(';
      out += "lam ";
      const Term* cur = &t;
      print_binder(*cur, out);
      cur = &cur->body();
      while (cur->is_lam()) {
        out += ' ';
        print_binder(*cur, out);
        cur = &cur->body();
      }
      out += ". ";
      print_term(*cur, Slot::Top, out);
      if (paren) out += ')';
      return;
    }
    case Term::Kind::Clos: {
      bool paren = slot != Slot::Top;
      if (paren) out += '(';
      print_chain_element(t.sub(), out);
      out += " * ";
      print_term(t.body(), Slot::Top, out);
      if (paren) out += ')';
      return;
    }
  }
}

void print_subst(const Subst& s, std::string& out) {
  switch (s.kind()) {
    case Subst::Kind::Id:
      out += "id";
      return;
    case Subst::Kind::Pi:
      out += "pi_" + s.name().name();
      return;
    case Subst::Kind::Cons: {
      std::vector<const Subst*> entries;
      const Subst* cur = &s;
      while (cur->is_cons()) {
        entries.push_back(cur);
        cur = &cur->rest();
      }
      out += '<';
      print_subst(*cur, out);
      for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        out += ", ";
        print_term((*it)->term(), Slot::Top, out);
        out += '/';
        out += (*it)->name().name();
      }
      out += '>';
      return;
    }
    case Subst::Kind::Comp:
      print_chain_element(s.left(), out);
      out += " * ";
      print_subst(s.right(), out);
      return;
  }
}

}  // namespace

std::string print(const Term& t) {
  std::string out;
  print_term(t, Slot::Top, out);
  return out;
}

std::string print(const Subst& s) {
  std::string out;
  print_subst(s, out);
  return out;
}

std::string print(const Context& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ", ";
    out += c[i].name();
  }
  return out;
}

std::string print(const Judgement& j) {
  if (const TermJ* t = std::get_if<TermJ>(&j)) {
    std::string out = print(t->ctx);
    out += out.empty() ? "|- " : " |- ";
    return out + print(t->term);
  }
  const SubstJ& s = std::get<SubstJ>(j);
  std::string out = print(s.ctx);
  out += out.empty() ? "|- " : " |- ";
  out += print(s.sub) + " |>";
  if (!s.cod.empty()) out += ' ' + print(s.cod);
  return out;
}

std::string print(const Expr& e) {
  return std::visit([](const auto& v) { return print(v); }, e);
}

std::string print(const Type& t) {
  if (t.kind() == Type::Kind::Base) return t.name();
  std::string dom = print(t.dom());
  if (t.dom().kind() == Type::Kind::Arrow) dom = '(' + dom + ')';
  return dom + " -> " + print(t.cod());
}

TermClass term_class(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: return TermClass::Var;
    case Term::Kind::App: return TermClass::App;
    case Term::Kind::Lam: return TermClass::Abs;
    case Term::Kind::Clos: return TermClass::Clos;
  }
  return TermClass::Var;
}

// --- Generation -------------------------------------------------------------

namespace {

class Generator {
 public:
  Generator(std::uint64_t seed, const std::vector<Var>& vocab) : rng_(seed), vocab_(vocab) {}

  Context random_context(std::size_t max_len) {
    std::size_t len = uniform(0, max_len);
    std::vector<Var> vars;
    for (std::size_t i = 0; i < len; ++i) vars.push_back(pick_vocab());
    return Context(std::move(vars));
  }

  static std::size_t min_term(const Context& ctx) { return ctx.empty() ? 2 : 1; }

  // Builds a term derivable in `ctx` with at most `budget` nodes; the
  // caller guarantees budget >= min_term(ctx).
  Term term(const Context& ctx, std::size_t budget) {
    std::size_t m = min_term(ctx);
    bool can_var = !ctx.empty();
    bool can_lam = budget >= 2;
    bool can_app = budget >= 1 + 2 * m;
    bool can_clos = budget >= 2 + m;
    double decay = 6.0 / static_cast<double>(budget);
    std::vector<double> w = {can_var ? 0.5 + decay : 0.0, can_lam ? 1.0 : 0.0,
                             can_app ? 1.0 : 0.0, can_clos ? 1.0 : 0.0};
    switch (choose(w)) {
      case 0: {
        // Any variable of the context is derivable by (i)/(ii).
        return Term::var(ctx[uniform(0, ctx.size() - 1)]);
      }
      case 1: {
        Var a = pick_vocab();
        return Term::lam(a, term(ctx.pushed(a), budget - 1));
      }
      case 2: {
        std::size_t left = uniform(m, budget - 1 - m);
        Term f = term(ctx, left);
        Term x = term(ctx, budget - 1 - f.size());
        return Term::app(std::move(f), std::move(x));
      }
      default: {
        // Reserve room for a body term in whatever codomain appears; the
        // empty codomain needs two nodes.
        std::size_t sub_budget = budget - 1 - 2;
        if (sub_budget == 0) sub_budget = 1;
        auto [s, cod] = subst(ctx, uniform(1, std::max<std::size_t>(1, sub_budget)));
        std::size_t rest = budget - 1 - s.size();
        if (rest < min_term(cod)) {
          // Fall back to a weakening-free closure id * M.
          Term body = term(ctx, budget - 2);
          return Term::clos(Subst::id(), std::move(body));
        }
        return Term::clos(std::move(s), term(cod, rest));
      }
    }
  }

  std::pair<Subst, Context> subst(const Context& ctx, std::size_t budget) {
    std::size_t m = min_term(ctx);
    bool can_pi = !ctx.empty();
    bool can_cons = budget >= 2 + m;
    bool can_comp = budget >= 3;
    double decay = 6.0 / static_cast<double>(budget);
    std::vector<double> w = {0.3 + decay / 2, can_pi ? 0.3 + decay / 2 : 0.0,
                             can_cons ? 1.0 : 0.0, can_comp ? 0.6 : 0.0};
    switch (choose(w)) {
      case 0:
        return {Subst::id(), ctx};
      case 1:
        return {Subst::pi(ctx.back()), ctx.popped()};
      case 2: {
        std::size_t left = uniform(1, budget - 1 - m);
        auto [s, cod] = subst(ctx, left);
        Term n = term(ctx, budget - 1 - s.size());
        Var a = pick_vocab();
        return {Subst::cons(std::move(s), std::move(n), a), cod.pushed(a)};
      }
      default: {
        std::size_t left = uniform(1, budget - 2);
        auto [s, mid] = subst(ctx, left);
        auto [q, cod] = subst(mid, budget - 1 - s.size());
        return {Subst::comp(std::move(s), std::move(q)), std::move(cod)};
      }
    }
  }

 private:
  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  std::size_t choose(const std::vector<double>& weights) {
    return std::discrete_distribution<std::size_t>(weights.begin(), weights.end())(rng_);
  }

  Var pick_vocab() { return vocab_[uniform(0, vocab_.size() - 1)]; }

  std::mt19937_64 rng_;
  const std::vector<Var>& vocab_;
};

}  // namespace

TermJ generate(std::uint64_t seed, std::size_t size_budget, const std::vector<Var>& vocabulary) {
  if (vocabulary.empty()) throw std::invalid_argument("generator vocabulary is empty");
  if (size_budget == 0) throw std::invalid_argument("size budget must be positive");
  Generator g(seed, vocabulary);
  Context ctx = g.random_context(3);
  // Budget 1 admits only a variable, which needs a non-empty context.
  while (size_budget < Generator::min_term(ctx)) ctx = g.random_context(3);
  return TermJ{ctx, g.term(ctx, size_budget)};
}

SubstJ generate_subst(std::uint64_t seed, std::size_t size_budget, const std::vector<Var>& vocabulary) {
  if (vocabulary.empty()) throw std::invalid_argument("generator vocabulary is empty");
  if (size_budget == 0) throw std::invalid_argument("size budget must be positive");
  Generator g(seed, vocabulary);
  Context ctx = g.random_context(3);
  auto [s, cod] = g.subst(ctx, size_budget);
  return SubstJ{std::move(ctx), std::move(s), std::move(cod)};
}

std::vector<Var> default_vocabulary() { return {Var("x"), Var("y"), Var("z")}; }

}  // namespace lampi
