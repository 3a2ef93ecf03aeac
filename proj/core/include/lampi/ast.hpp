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

#ifndef LAMPI_AST_HPP_
#define LAMPI_AST_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lampi {

/// A variable name: a lowercase letter followed by letters, digits or
/// underscores. `id`, `pi`, `lam` and anything spelled `pi_...` are reserved.
class Var {
 public:
  Var() = default;
  /// Throws std::invalid_argument if `name` is not a legal variable name.
  explicit Var(std::string name);

  const std::string& name() const { return name_; }

  friend bool operator==(const Var&, const Var&) = default;
  friend std::strong_ordering operator<=>(const Var&, const Var&) = default;

 private:
  std::string name_;
};

bool is_valid_var_name(std::string_view name);

namespace detail {
struct TypeNode;
struct TermNode;
struct SubstNode;
}  // namespace detail

/// Simple types `A`, `A -> B` for the typed judgement system.
class Type {
 public:
  enum class Kind : std::uint8_t { Base, Arrow };

  Type() = default;
  static Type base(std::string name);
  static Type arrow(Type dom, Type cod);

  Kind kind() const;
  const std::string& name() const;
  const Type& dom() const;
  const Type& cod() const;

  friend bool operator==(const Type& a, const Type& b);

 private:
  explicit Type(std::shared_ptr<const detail::TypeNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::TypeNode> node_;
};

class Subst;

/// M, N ::= a | M N | lam a. M | s * M
///
/// Terms are immutable and share structure freely. Equality is structural;
/// a structural hash is cached at construction.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, App, Lam, Clos };

  Term() = default;
  static Term var(Var v);
  static Term app(Term fun, Term arg);
  static Term lam(Var binder, Term body, std::optional<Type> annotation = {});
  static Term clos(Subst sub, Term body);

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_lam() const { return kind() == Kind::Lam; }
  bool is_clos() const { return kind() == Kind::Clos; }

  /// The variable of a Var node or the binder of a Lam node.
  const Var& name() const;
  const Term& fun() const;
  const Term& arg() const;
  /// Body of a Lam or Clos node.
  const Term& body() const;
  const Subst& sub() const;
  const std::optional<Type>& annotation() const;

  /// Number of AST nodes (variables, applications, abstractions, closures
  /// and every substitution node below them).
  std::size_t size() const;
  std::size_t hash() const;
  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

/// s, q ::= id | pi_a | <s, N/a> | s * q
class Subst {
 public:
  enum class Kind : std::uint8_t { Id, Pi, Cons, Comp };

  Subst() = default;
  static Subst id();
  static Subst pi(Var v);
  static Subst cons(Subst rest, Term term, Var target);
  static Subst comp(Subst left, Subst right);

  Kind kind() const;
  bool is_id() const { return kind() == Kind::Id; }
  bool is_pi() const { return kind() == Kind::Pi; }
  bool is_cons() const { return kind() == Kind::Cons; }
  bool is_comp() const { return kind() == Kind::Comp; }

  /// Subscript of pi_a, or the target variable a of <s, N/a>.
  const Var& name() const;
  const Subst& rest() const;
  const Term& term() const;
  const Subst& left() const;
  const Subst& right() const;

  std::size_t size() const;
  std::size_t hash() const;
  bool same_node(const Subst& other) const { return node_ == other.node_; }

  friend bool operator==(const Subst& a, const Subst& b);

 private:
  explicit Subst(std::shared_ptr<const detail::SubstNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::SubstNode> node_;
};

/// An ordered list of variables; repetitions are significant and the
/// rightmost occurrence of a variable is the binding one.
class Context {
 public:
  Context() = default;
  Context(std::initializer_list<Var> vars) : vars_(vars) {}
  explicit Context(std::vector<Var> vars) : vars_(std::move(vars)) {}

  std::size_t size() const { return vars_.size(); }
  bool empty() const { return vars_.empty(); }
  const Var& operator[](std::size_t i) const { return vars_[i]; }
  const Var& back() const { return vars_.back(); }
  const std::vector<Var>& vars() const { return vars_; }
  auto begin() const { return vars_.begin(); }
  auto end() const { return vars_.end(); }

  Context pushed(Var v) const;
  Context popped() const;
  /// Entries [from, to).
  Context slice(std::size_t from, std::size_t to) const;
  Context concat(const Context& tail) const;

  friend bool operator==(const Context&, const Context&) = default;

 private:
  std::vector<Var> vars_;
};

/// Γ |- M
struct TermJ {
  Context ctx;
  Term term;
  friend bool operator==(const TermJ&, const TermJ&) = default;
};

/// Γ |- s |> Δ
struct SubstJ {
  Context ctx;
  Subst sub;
  Context cod;
  friend bool operator==(const SubstJ&, const SubstJ&) = default;
};

using Judgement = std::variant<TermJ, SubstJ>;

/// Either sort of expression; used wherever a position may address a term
/// or a substitution.
using Expr = std::variant<Term, Subst>;

/// Child selectors of a position path.
enum class Selector : std::uint8_t {
  LamBody,
  AppFun,
  AppArg,
  ClosSub,
  ClosTerm,
  ConsSub,
  ConsTerm,
  CompLeft,
  CompRight,
};

std::string_view selector_name(Selector s);
std::optional<Selector> selector_from_name(std::string_view name);

using Path = std::vector<Selector>;

/// The subexpression of `root` at `path`. Throws std::out_of_range if the
/// path does not address a node.
Expr subexpr_at(const Expr& root, const Path& path);
/// `root` with the node at `path` replaced by `replacement`.
Expr replace_at(const Expr& root, const Path& path, const Expr& replacement);

std::size_t hash_value(const Context& ctx);
std::size_t hash_value(const Judgement& j);

struct JudgementHash {
  std::size_t operator()(const Judgement& j) const { return hash_value(j); }
};

// ---------------------------------------------------------------------------
// Node layouts. Kept in the header so the accessors inline.

namespace detail {

struct TypeNode {
  Type::Kind kind;
  std::string name;
  Type dom;
  Type cod;
};

struct TermNode {
  Term::Kind kind;
  Var name;
  std::optional<Type> annotation;
  Term first;   // fun, or body of Lam/Clos
  Term second;  // arg
  Subst sub;
  std::size_t size;
  std::size_t hash;
};

struct SubstNode {
  Subst::Kind kind;
  Var name;
  Subst first;   // rest / left
  Subst second;  // right
  Term term;
  std::size_t size;
  std::size_t hash;
};

}  // namespace detail

inline Type::Kind Type::kind() const { return node_->kind; }
inline const std::string& Type::name() const { return node_->name; }
inline const Type& Type::dom() const { return node_->dom; }
inline const Type& Type::cod() const { return node_->cod; }

inline Term::Kind Term::kind() const { return node_->kind; }
inline const Var& Term::name() const { return node_->name; }
inline const Term& Term::fun() const { return node_->first; }
inline const Term& Term::arg() const { return node_->second; }
inline const Term& Term::body() const { return node_->first; }
inline const Subst& Term::sub() const { return node_->sub; }
inline const std::optional<Type>& Term::annotation() const { return node_->annotation; }
inline std::size_t Term::size() const { return node_->size; }
inline std::size_t Term::hash() const { return node_->hash; }

inline Subst::Kind Subst::kind() const { return node_->kind; }
inline const Var& Subst::name() const { return node_->name; }
inline const Subst& Subst::rest() const { return node_->first; }
inline const Subst& Subst::left() const { return node_->first; }
inline const Subst& Subst::right() const { return node_->second; }
inline const Term& Subst::term() const { return node_->term; }
inline std::size_t Subst::size() const { return node_->size; }
inline std::size_t Subst::hash() const { return node_->hash; }

}  // namespace lampi

template <>
struct std::hash<lampi::Term> {
  std::size_t operator()(const lampi::Term& t) const { return t.hash(); }
};

template <>
struct std::hash<lampi::Subst> {
  std::size_t operator()(const lampi::Subst& s) const { return s.hash(); }
};

#endif  // LAMPI_AST_HPP_
