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

// Name-free terms with explicit substitutions (de Bruijn style):
//
//   U, V ::= 1 | U V | \ U | u * U
//   u, v ::= id | p | <u, V> | u * v
//
// and the substitution rules
//
//   Abs  u * \U -> \ <p * u, 1> * U     App  u * (U V) -> (u * U) (u * V)
//   ConsVar <u, V> * 1 -> V             IdVar id * 1 -> 1
//   Clos u * v * U -> (u * v) * U       Ass  u * v * w -> (u * v) * w
//   IdR  u * id -> u                    IdShift id * p -> p
//   ConsShift <u, V> * p -> u           Map  u * <v, V> -> <u * v, u * V>
//
// The numeral #n is ((p * p) * ... * p) * 1 with n-1 shifts, nested to the
// left; #1 is 1.
//
// Extended terms, used for alpha-equivalence, have numerals as atoms
// (kind Num) instead: the atom #2 and the term p * #1 are different there,
// while their encodings coincide.

#ifndef LAMPI_NAMELESS_HPP_
#define LAMPI_NAMELESS_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lampi/ast.hpp"
#include "lampi/wellformed.hpp"

namespace lampi {

namespace detail {
struct NTermNode;
struct NSubstNode;
}  // namespace detail

class NamelessSubst;

class NamelessTerm {
 public:
  enum class Kind : std::uint8_t { One, App, Lam, Clos, Num };

  NamelessTerm() = default;
  static NamelessTerm one();
  /// The numeral atom #n of extended terms; n >= 1.
  static NamelessTerm num(std::size_t n);
  static NamelessTerm app(NamelessTerm fun, NamelessTerm arg);
  static NamelessTerm lam(NamelessTerm body);
  static NamelessTerm clos(NamelessSubst sub, NamelessTerm body);

  Kind kind() const;
  bool is_one() const { return kind() == Kind::One; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_lam() const { return kind() == Kind::Lam; }
  bool is_clos() const { return kind() == Kind::Clos; }
  bool is_num() const { return kind() == Kind::Num; }

  /// n of a Num atom.
  std::size_t index() const;
  const NamelessTerm& fun() const;
  const NamelessTerm& arg() const;
  /// Body of a Lam or Clos node.
  const NamelessTerm& body() const;
  const NamelessSubst& sub() const;

  std::size_t size() const;
  std::size_t hash() const;

  friend bool operator==(const NamelessTerm& a, const NamelessTerm& b);

 private:
  explicit NamelessTerm(std::shared_ptr<const detail::NTermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::NTermNode> node_;
};

class NamelessSubst {
 public:
  enum class Kind : std::uint8_t { Id, Pi, Cons, Comp };

  NamelessSubst() = default;
  static NamelessSubst id();
  static NamelessSubst pi();
  static NamelessSubst cons(NamelessSubst rest, NamelessTerm term);
  static NamelessSubst comp(NamelessSubst left, NamelessSubst right);

  Kind kind() const;
  bool is_id() const { return kind() == Kind::Id; }
  bool is_pi() const { return kind() == Kind::Pi; }
  bool is_cons() const { return kind() == Kind::Cons; }
  bool is_comp() const { return kind() == Kind::Comp; }

  const NamelessSubst& rest() const;
  const NamelessTerm& term() const;
  const NamelessSubst& left() const;
  const NamelessSubst& right() const;

  std::size_t size() const;
  std::size_t hash() const;

  friend bool operator==(const NamelessSubst& a, const NamelessSubst& b);

 private:
  explicit NamelessSubst(std::shared_ptr<const detail::NSubstNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::NSubstNode> node_;
};

using NamelessExpr = std::variant<NamelessTerm, NamelessSubst>;

/// `len |- body`: a name-free judgement; `len` is the context length.
struct NamelessJudgement {
  std::size_t len = 0;
  NamelessExpr body;

  friend bool operator==(const NamelessJudgement&, const NamelessJudgement&) = default;
};

/// Throws std::invalid_argument for n == 0.
NamelessTerm numeral(std::size_t n);
/// n if `u` is exactly the numeral #n.
std::optional<std::size_t> numeral_value(const NamelessTerm& u);

enum class SigmaStrategy { LeftmostOutermost, RightmostInnermost };

NamelessTerm sigma_normalize(const NamelessTerm& u,
                             SigmaStrategy strategy = SigmaStrategy::LeftmostOutermost);
NamelessSubst sigma_normalize(const NamelessSubst& u,
                              SigmaStrategy strategy = SigmaStrategy::LeftmostOutermost);
bool is_sigma_normal(const NamelessExpr& e);

/// Built from numerals (encoded or atoms) by application and abstraction
/// only.
bool is_pure(const NamelessTerm& u);

class NotDerivableError : public std::runtime_error {
 public:
  explicit NotDerivableError(const NotDerivable& nd)
      : std::runtime_error(nd.message()), detail_(nd) {}
  const NotDerivable& detail() const { return detail_; }

 private:
  NotDerivable detail_;
};

/// Structural recursion on the derivation; variables become numerals
/// counting from the right end of the context.
NamelessExpr translate(const Derivation& d);
/// Derives `j` first; throws NotDerivableError.
NamelessExpr translate(const Judgement& j);
/// Context length and extended term: variables become Num atoms.
NamelessJudgement translate_ext(const Derivation& d);
NamelessJudgement translate_ext(const Judgement& j);
/// Replaces every Num atom by the numeral it stands for, so that
/// expand_numerals(translate_ext(d).body) == translate(d).
NamelessExpr expand_numerals(const NamelessExpr& e);

/// Equal translations. Throws NotDerivableError.
bool simeq(const Judgement& a, const Judgement& b);
/// Equal extended translations and equal context lengths. Throws
/// NotDerivableError.
bool alpha_eq(const Judgement& a, const Judgement& b);

/// lift(s) = <p * s, 1>, applied n times.
NamelessSubst nameless_lift(std::size_t n, const NamelessSubst& s);

class NamelessStepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Paths (LamBody/AppFun/AppArg) of the Beta redexes of a pure term,
/// outermost first.
std::vector<Path> beta_redex_paths(const NamelessTerm& u);
/// Contract the Beta redex (\U) V -> <id, V> * U at `position`, then
/// normalize the substitutions of the whole term. `u` must be pure.
NamelessTerm beta_step_pure(const NamelessTerm& u, const Path& position);
/// Leftmost-outermost beta steps on a pure term; nothing if `max_steps`
/// is exceeded.
std::optional<NamelessTerm> beta_normalize_pure(const NamelessTerm& u, std::size_t max_steps);

/// `1`, `#n` for other numerals and for every Num atom, `\ U`, `p`,
/// `<u, V>`, `u * U`.
std::string print(const NamelessTerm& u);
std::string print(const NamelessSubst& u);
std::string print(const NamelessExpr& u);
std::string print(const NamelessJudgement& j);

// ---------------------------------------------------------------------------

namespace detail {

struct NTermNode {
  NamelessTerm::Kind kind;
  NamelessTerm first;   // fun, or body of Lam/Clos
  NamelessTerm second;  // arg
  NamelessSubst sub;
  std::size_t size;
  std::size_t hash;
  std::size_t index;  // Num only
};

struct NSubstNode {
  NamelessSubst::Kind kind;
  NamelessSubst first;   // rest / left
  NamelessSubst second;  // right
  NamelessTerm term;
  std::size_t size;
  std::size_t hash;
};

}  // namespace detail

inline NamelessTerm::Kind NamelessTerm::kind() const { return node_->kind; }
inline std::size_t NamelessTerm::index() const { return node_->index; }
inline const NamelessTerm& NamelessTerm::fun() const { return node_->first; }
inline const NamelessTerm& NamelessTerm::arg() const { return node_->second; }
inline const NamelessTerm& NamelessTerm::body() const { return node_->first; }
inline const NamelessSubst& NamelessTerm::sub() const { return node_->sub; }
inline std::size_t NamelessTerm::size() const { return node_->size; }
inline std::size_t NamelessTerm::hash() const { return node_->hash; }

inline NamelessSubst::Kind NamelessSubst::kind() const { return node_->kind; }
inline const NamelessSubst& NamelessSubst::rest() const { return node_->first; }
inline const NamelessSubst& NamelessSubst::left() const { return node_->first; }
inline const NamelessSubst& NamelessSubst::right() const { return node_->second; }
inline const NamelessTerm& NamelessSubst::term() const { return node_->term; }
inline std::size_t NamelessSubst::size() const { return node_->size; }
inline std::size_t NamelessSubst::hash() const { return node_->hash; }

}  // namespace lampi

#endif  // LAMPI_NAMELESS_HPP_
