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

// Test oracles written without the library's algorithms: a de Bruijn
// beta normalizer with index shifting, a simple type checker, a direct
// transcription of free-variable levels, a derivation counter that tries
// every rule, and the transitive closure of the symbol precedence.
//
// They only read the library's AST types.

#ifndef LAMPI_TESTS_ORACLES_HPP_
#define LAMPI_TESTS_ORACLES_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lampi/ast.hpp"
#include "lampi/nameless.hpp"
#include "lampi/termination.hpp"

namespace lampi::oracle {

// --- de Bruijn lambda terms -------------------------------------------------

struct Db;
using DbPtr = std::shared_ptr<const Db>;

/// Indices start at 1, matching the numerals.
struct Db {
  enum class Kind { Var, Lam, App } kind;
  int index = 0;
  DbPtr a;
  DbPtr b;
};

inline DbPtr db_var(int i) { return std::make_shared<const Db>(Db{Db::Kind::Var, i, nullptr, nullptr}); }
inline DbPtr db_lam(DbPtr body) {
  return std::make_shared<const Db>(Db{Db::Kind::Lam, 0, std::move(body), nullptr});
}
inline DbPtr db_app(DbPtr f, DbPtr x) {
  return std::make_shared<const Db>(Db{Db::Kind::App, 0, std::move(f), std::move(x)});
}

inline bool db_equal(const DbPtr& x, const DbPtr& y) {
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Db::Kind::Var:
      return x->index == y->index;
    case Db::Kind::Lam:
      return db_equal(x->a, y->a);
    case Db::Kind::App:
      return db_equal(x->a, y->a) && db_equal(x->b, y->b);
  }
  return false;
}

inline std::string db_print(const DbPtr& t) {
  switch (t->kind) {
    case Db::Kind::Var:
      return std::to_string(t->index);
    case Db::Kind::Lam:
      return "(\\" + db_print(t->a) + ")";
    case Db::Kind::App:
      return "(" + db_print(t->a) + " " + db_print(t->b) + ")";
  }
  return "?";
}

/// Adds d to every index >= cutoff.
inline DbPtr db_shift(const DbPtr& t, int d, int cutoff = 1) {
  switch (t->kind) {
    case Db::Kind::Var:
      return t->index >= cutoff ? db_var(t->index + d) : t;
    case Db::Kind::Lam:
      return db_lam(db_shift(t->a, d, cutoff + 1));
    case Db::Kind::App:
      return db_app(db_shift(t->a, d, cutoff), db_shift(t->b, d, cutoff));
  }
  return t;
}

/// t[j := s], removing index j.
inline DbPtr db_subst(const DbPtr& t, int j, const DbPtr& s) {
  switch (t->kind) {
    case Db::Kind::Var:
      if (t->index == j) return db_shift(s, j - 1);
      return t->index > j ? db_var(t->index - 1) : t;
    case Db::Kind::Lam:
      return db_lam(db_subst(t->a, j + 1, s));
    case Db::Kind::App:
      return db_app(db_subst(t->a, j, s), db_subst(t->b, j, s));
  }
  return t;
}

/// One normal-order step, if any.
inline std::optional<DbPtr> db_step(const DbPtr& t) {
  switch (t->kind) {
    case Db::Kind::Var:
      return std::nullopt;
    case Db::Kind::Lam:
      if (auto b = db_step(t->a)) return db_lam(*b);
      return std::nullopt;
    case Db::Kind::App:
      if (t->a->kind == Db::Kind::Lam) return db_subst(t->a->a, 1, t->b);
      if (auto f = db_step(t->a)) return db_app(*f, t->b);
      if (auto x = db_step(t->b)) return db_app(t->a, *x);
      return std::nullopt;
  }
  return std::nullopt;
}

inline std::optional<DbPtr> db_normalize(DbPtr t, std::size_t max_steps) {
  for (std::size_t i = 0; i < max_steps; ++i) {
    auto next = db_step(t);
    if (!next) return t;
    t = *next;
  }
  return std::nullopt;
}

/// A pure named term under `ctx`; the rightmost binding of a name wins.
inline DbPtr db_from_named(const Term& m, std::vector<Var> scope) {
  switch (m.kind()) {
    case Term::Kind::Var:
      for (std::size_t i = scope.size(); i-- > 0;) {
        if (scope[i] == m.name()) return db_var(static_cast<int>(scope.size() - i));
      }
      return nullptr;
    case Term::Kind::Lam: {
      scope.push_back(m.name());
      DbPtr b = db_from_named(m.body(), scope);
      return b ? db_lam(b) : nullptr;
    }
    case Term::Kind::App: {
      DbPtr f = db_from_named(m.fun(), scope);
      DbPtr x = db_from_named(m.arg(), scope);
      return f && x ? db_app(f, x) : nullptr;
    }
    case Term::Kind::Clos:
      return nullptr;
  }
  return nullptr;
}

/// A pure name-free term; numerals (encoded or atoms) become indices.
inline DbPtr db_from_nameless(const NamelessTerm& u) {
  if (u.is_num()) return db_var(static_cast<int>(u.index()));
  if (auto n = numeral_value(u)) return db_var(static_cast<int>(*n));
  switch (u.kind()) {
    case NamelessTerm::Kind::Lam: {
      DbPtr b = db_from_nameless(u.body());
      return b ? db_lam(b) : nullptr;
    }
    case NamelessTerm::Kind::App: {
      DbPtr f = db_from_nameless(u.fun());
      DbPtr x = db_from_nameless(u.arg());
      return f && x ? db_app(f, x) : nullptr;
    }
    default:
      return nullptr;
  }
}

// --- Simple types by unification --------------------------------------------

/// True if the closed term has a simple type, hence is strongly normalizing.
inline bool simply_typable(const DbPtr& t) {
  // Types: variables are >= 0, arrows are stored in a node table.
  struct Ty {
    bool arrow;
    int var;
    int dom;
    int cod;
  };
  std::vector<Ty> nodes;
  std::vector<int> parent;
  auto fresh = [&]() {
    nodes.push_back({false, static_cast<int>(nodes.size()), -1, -1});
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(nodes.size()) - 1;
  };
  auto arrow = [&](int d, int c) {
    nodes.push_back({true, -1, d, c});
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(nodes.size()) - 1;
  };
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::function<bool(int, int)> occurs = [&](int v, int t) {
    t = find(t);
    if (t == v) return true;
    return nodes[t].arrow && (occurs(v, nodes[t].dom) || occurs(v, nodes[t].cod));
  };
  std::function<bool(int, int)> unify = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return true;
    if (!nodes[x].arrow) {
      if (occurs(x, y)) return false;
      parent[x] = y;
      return true;
    }
    if (!nodes[y].arrow) return unify(y, x);
    // Children first: merging the arrows early lets a later binding close a
    // cycle that the occurs check cannot see.
    if (!unify(nodes[x].dom, nodes[y].dom) || !unify(nodes[x].cod, nodes[y].cod)) return false;
    parent[find(x)] = find(y);
    return true;
  };
  std::function<std::optional<int>(const DbPtr&, std::vector<int>&)> infer =
      [&](const DbPtr& u, std::vector<int>& env) -> std::optional<int> {
    switch (u->kind) {
      case Db::Kind::Var:
        if (u->index < 1 || static_cast<std::size_t>(u->index) > env.size()) return std::nullopt;
        return env[env.size() - static_cast<std::size_t>(u->index)];
      case Db::Kind::Lam: {
        int a = fresh();
        env.push_back(a);
        auto b = infer(u->a, env);
        env.pop_back();
        if (!b) return std::nullopt;
        return arrow(a, *b);
      }
      case Db::Kind::App: {
        auto f = infer(u->a, env);
        if (!f) return std::nullopt;
        auto x = infer(u->b, env);
        if (!x) return std::nullopt;
        int r = fresh();
        if (!unify(*f, arrow(*x, r))) return std::nullopt;
        return r;
      }
    }
    return std::nullopt;
  };
  std::vector<int> env;
  return infer(t, env).has_value();
}

// --- Free-variable levels ---------------------------------------------------

/// Level (1-based) -> variables; empty levels are absent.
using Levels = std::map<std::size_t, std::set<std::string>>;

inline Levels levels_union(Levels a, const Levels& b) {
  for (const auto& [i, vs] : b) a[i].insert(vs.begin(), vs.end());
  return a;
}

inline Levels levels_after_subst(const Subst& s, const Levels& a);

inline Levels levels_of(const Term& m) {
  switch (m.kind()) {
    case Term::Kind::Var:
      return Levels{{1, {m.name().name()}}};
    case Term::Kind::App:
      return levels_union(levels_of(m.fun()), levels_of(m.arg()));
    case Term::Kind::Lam: {
      // Level 1 loses the binder; level 2 drops onto level 1.
      Levels in = levels_of(m.body());
      Levels out;
      for (const auto& [i, vs] : in) {
        if (i == 1) {
          for (const auto& v : vs) {
            if (v != m.name().name()) out[1].insert(v);
          }
        } else {
          out[i - 1].insert(vs.begin(), vs.end());
        }
      }
      return out;
    }
    case Term::Kind::Clos:
      return levels_after_subst(m.sub(), levels_of(m.body()));
  }
  return {};
}

inline Levels levels_after_subst(const Subst& s, const Levels& a) {
  switch (s.kind()) {
    case Subst::Kind::Id:
      return a;
    case Subst::Kind::Pi: {
      Levels out;
      for (const auto& [i, vs] : a) out[i + 1] = vs;
      return out;
    }
    case Subst::Kind::Cons: {
      Levels in;
      for (const auto& [i, vs] : a) {
        if (i == 1) {
          for (const auto& v : vs) {
            if (v != s.name().name()) in[1].insert(v);
          }
        } else {
          in[i - 1].insert(vs.begin(), vs.end());
        }
      }
      return levels_union(levels_after_subst(s.rest(), in), levels_of(s.term()));
    }
    case Subst::Kind::Comp:
      return levels_after_subst(s.left(), levels_after_subst(s.right(), a));
  }
  return a;
}

inline std::string levels_print(const Levels& a) {
  std::size_t top = 0;
  for (const auto& [i, vs] : a) {
    if (!vs.empty()) top = i;
  }
  std::string out = "[";
  for (std::size_t i = 1; i <= top; ++i) {
    if (i > 1) out += ", ";
    out += "{";
    auto it = a.find(i);
    if (it != a.end()) {
      bool first = true;
      for (const auto& v : it->second) {
        if (!first) out += ", ";
        out += v;
        first = false;
      }
    }
    out += "}";
  }
  return out + "]";
}

// --- Derivation counting ----------------------------------------------------

/// Number of derivations of `ctx |- m`, trying every rule at every node.
std::size_t count_derivations(const Context& ctx, const Term& m);
/// Number of derivations of `ctx |- s |> cod`.
std::size_t count_derivations(const Context& ctx, const Subst& s, const Context& cod);

/// Every Δ for which ctx |- s |> Δ has a derivation (with multiplicity).
inline void codomains(const Context& ctx, const Subst& s, std::vector<Context>& out) {
  switch (s.kind()) {
    case Subst::Kind::Id:
      out.push_back(ctx);
      return;
    case Subst::Kind::Pi:
      if (!ctx.empty() && ctx.back() == s.name()) out.push_back(ctx.popped());
      return;
    case Subst::Kind::Cons: {
      if (count_derivations(ctx, s.term()) == 0) return;
      std::vector<Context> rest;
      codomains(ctx, s.rest(), rest);
      for (const Context& d : rest) out.push_back(d.pushed(s.name()));
      return;
    }
    case Subst::Kind::Comp: {
      std::vector<Context> mid;
      codomains(ctx, s.left(), mid);
      for (const Context& d : mid) codomains(d, s.right(), out);
      return;
    }
  }
}

inline std::size_t count_derivations(const Context& ctx, const Term& m) {
  std::size_t n = 0;
  switch (m.kind()) {
    case Term::Kind::Var:
      // (i) Γ, a |- a and (ii) Γ, b |- a from Γ |- a with a != b.
      if (!ctx.empty() && ctx.back() == m.name()) ++n;
      if (!ctx.empty() && !(ctx.back() == m.name())) n += count_derivations(ctx.popped(), m);
      return n;
    case Term::Kind::App:
      return count_derivations(ctx, m.fun()) * count_derivations(ctx, m.arg());
    case Term::Kind::Lam:
      return count_derivations(ctx.pushed(m.name()), m.body());
    case Term::Kind::Clos: {
      std::vector<Context> mids;
      codomains(ctx, m.sub(), mids);
      for (const Context& d : mids) n += count_derivations(d, m.body());
      return n;
    }
  }
  return n;
}

inline std::size_t count_derivations(const Context& ctx, const Subst& s, const Context& cod) {
  std::vector<Context> all;
  codomains(ctx, s, all);
  std::size_t n = 0;
  for (const Context& d : all) {
    if (d == cod) ++n;
  }
  return n;
}

// --- Symbol precedence by closure -------------------------------------------

/// Every symbol with labels in [0, max_label] and names in `names`.
inline std::vector<Symbol> symbols(std::size_t max_label, const std::vector<Var>& names) {
  std::vector<Symbol> out;
  out.push_back(Symbol{Symbol::Kind::Id, Var(), "", std::nullopt});
  out.push_back(Symbol{Symbol::Kind::App, Var(), "", std::nullopt});
  for (const Var& a : names) {
    out.push_back(Symbol{Symbol::Kind::Var, a, "", std::nullopt});
    out.push_back(Symbol{Symbol::Kind::Pi, a, "", std::nullopt});
    out.push_back(Symbol{Symbol::Kind::Lam, a, "", std::nullopt});
    out.push_back(Symbol{Symbol::Kind::Cons, a, "", std::nullopt});
  }
  for (std::size_t i = 0; i <= max_label; ++i) {
    out.push_back(Symbol{Symbol::Kind::Circ, Var(), "", i});
    for (const Var& a : names) out.push_back(Symbol{Symbol::Kind::BoldLam, a, "", i});
  }
  return out;
}

/// The generating pairs of the precedence, read off the rule table:
///   LAM_{i+1} a > circ_i > LAM_i a
///   circ_i > lam a, app, cons, pi_a, a
///   LAM_i a > lam b, cons, pi_b, b       (LAM_i a > <-, -/a>, every name)
///   LAM_i a > LAM_j a, circ_i > circ_j   (i > j)
inline bool generates(const Symbol& f, const Symbol& g) {
  using K = Symbol::Kind;
  auto lab = [](const Symbol& s) { return *s.label; };
  if (f.kind == K::Circ) {
    if (g.kind == K::BoldLam) return lab(g) == lab(f);
    if (g.kind == K::Circ) return lab(f) > lab(g);
    return g.kind == K::Lam || g.kind == K::App || g.kind == K::Cons || g.kind == K::Pi ||
           g.kind == K::Var;
  }
  if (f.kind == K::BoldLam) {
    if (g.kind == K::Circ) return lab(f) == lab(g) + 1;
    if (g.kind == K::BoldLam) return g.name == f.name && lab(f) > lab(g);
    if (g.kind == K::Cons) return g.name == f.name;
    return g.kind == K::Lam || g.kind == K::Pi || g.kind == K::Var;
  }
  return false;
}

/// Transitive closure of `generates` over `syms`; result[i][j] is syms[i] > syms[j].
inline std::vector<std::vector<bool>> precedence_closure(const std::vector<Symbol>& syms) {
  std::size_t n = syms.size();
  std::vector<std::vector<bool>> gt(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) gt[i][j] = generates(syms[i], syms[j]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!gt[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (gt[k][j]) gt[i][j] = true;
      }
    }
  }
  return gt;
}

}  // namespace lampi::oracle

#endif  // LAMPI_TESTS_ORACLES_HPP_
