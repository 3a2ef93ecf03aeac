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

// Strong normalization machinery for the substitution calculus.
//
// A term is embedded into the system R by marking ("bold") every
// abstraction lam a. L with a free in lam a. L. R has the substitution rules
// with four variants of Abs, an unconditional renaming rule and a rule xi
// that erases a mark:
//
//   Abs1  s * lam a. M  -> lam a. <pi_a * s, a/a> * M
//   Abs2  s * LAM a. M  -> LAM a. <pi_a * s, a/a> * M
//   Abs3  s * lam a. M  -> LAM a. <pi_a * s, a/a> * M
//   Abs4  s * LAM a. M  -> lam a. <pi_a * s, a/a> * M
//   alpha LAM a. M      -> lam b. <pi_b, b/a> * M
//   xi    LAM a. M      -> lam a. M
//
// Labelling each composition and each bold abstraction with its value under
// |.| gives the system Q, whose termination follows from a lexicographic
// path order over a precedence on labelled symbols.

#ifndef LAMPI_TERMINATION_HPP_
#define LAMPI_TERMINATION_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lampi/ast.hpp"
#include "lampi/rewrite.hpp"

namespace lampi {

/// Ground terms and substitutions of R and Q. Schema variables are
/// represented by named constants of either sort (kind Meta).
class LabTerm {
 public:
  enum class Kind { Var, Pi, Id, Meta, App, Lam, BoldLam, Clos, Comp, Cons };
  enum class Sort { Term, Subst };

  LabTerm() = default;
  static LabTerm var(const Var& a);
  static LabTerm pi(const Var& a);
  static LabTerm id();
  static LabTerm meta(std::string name, Sort sort);
  static LabTerm app(LabTerm fun, LabTerm arg);
  static LabTerm lam(const Var& a, LabTerm body);
  static LabTerm bold_lam(const Var& a, LabTerm body, std::optional<std::size_t> label = {});
  /// Clos or Comp, chosen by the sort of `right`.
  static LabTerm circ(LabTerm left, LabTerm right, std::optional<std::size_t> label = {});
  static LabTerm cons(LabTerm rest, LabTerm term, const Var& a);

  Kind kind() const;
  Sort sort() const;
  /// Binder, variable, pi index or cons target.
  const Var& name() const;
  const std::string& meta_name() const;
  const std::optional<std::size_t>& label() const;
  std::size_t arity() const;
  const LabTerm& arg(std::size_t i) const;

  /// Same node with a different label.
  LabTerm relabelled(std::optional<std::size_t> label) const;

  friend bool operator==(const LabTerm& a, const LabTerm& b);

 private:
  struct Node;
  explicit LabTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Subterm selection uses the same selectors as ordinary terms; BoldLam
/// uses LamBody.
const LabTerm& lab_subterm(const LabTerm& t, const Path& path);
LabTerm lab_replace(const LabTerm& t, const Path& path, const LabTerm& replacement);

std::string print(const LabTerm& t);

/// |lam a. M| = |M| + 1, |s * M| = |s| + |M|, |M N| = max(|M|, |N|),
/// |<s, N/a>| = max(|s|, |N|), and 0 for id, pi_a and a.
std::size_t measure(const Term& m);
std::size_t measure(const Subst& s);
std::size_t measure(const LabTerm& t);

/// Marks every lam a. L with a in some level of FV(lam a. L).
LabTerm star(const Term& m);
LabTerm star(const Subst& s);
/// Removes marks and labels. Throws std::invalid_argument on schema
/// variables.
Expr unmark(const LabTerm& t);

/// Rules of R, followed by the label-decreasing rules of Q.
enum class LabRule {
  Abs1,
  Abs2,
  Abs3,
  Abs4,
  App,
  ConsVar,
  New,
  IdVar,
  Clos,
  Ass,
  IdR,
  IdShift,
  ConsShift,
  Map,
  Pi1,
  Pi2,
  Alpha,
  Xi,
  Decr1,
  Decr2,
  Decr3,
};

inline constexpr std::size_t kLabRuleCount = 21;

std::string_view lab_rule_name(LabRule r);

/// One R rule at `position`; `fresh` is the new binder for Alpha. Labels
/// are dropped on constructed nodes. Throws InvalidRedex.
LabTerm r_step(const LabTerm& t, const Path& position, LabRule rule,
               const std::optional<Var>& fresh = {});

/// The Q rule with the same name, with every free label on the right-hand
/// side chosen as large as the side conditions allow. Throws InvalidRedex if
/// the labels of the redex do not fit the rule. Decr rules are rejected.
LabTerm q_step(const LabTerm& t, const Path& position, LabRule rule,
               const std::optional<Var>& fresh = {});

/// Labels every composition and bold abstraction with its measure.
LabTerm label(const LabTerm& r);

/// `to` is reachable from `from` by Decr steps: same shape and marks, and
/// every label of `to` is at most the label at the same place in `from`.
bool decr_reachable(const LabTerm& from, const LabTerm& to);

struct RStep {
  LabRule rule;
  Path position;
  std::optional<Var> fresh;
  LabTerm result;
};

class EmbedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An R-derivation star(m1) ->+ star(m2) for a substitution-calculus step
/// m1 -> m2 by `rule`: the step of the same name (Abs picks Abs1..Abs4 from
/// the marks on both sides, Alpha1 becomes alpha), then xi for every mark
/// that disappears. Throws EmbedError if there is none.
std::vector<RStep> embed_step(const Term& m1, const Term& m2, RuleName rule);
/// Same, for the contraction of `redex` in `m1`.
std::vector<RStep> embed_step(const Term& m1, const Redex& redex);

/// Function symbols of Q. Clos and Comp share the symbol Circ.
struct Symbol {
  enum class Kind { Var, Pi, Id, Meta, App, Lam, BoldLam, Circ, Cons };
  Kind kind;
  Var name;
  std::string meta;
  std::optional<std::size_t> label;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

Symbol symbol_of(const LabTerm& t);

/// The strict precedence on Q symbols, generated by
///
///   LAM_{i+1} a > circ_i > LAM_i a
///   circ_i > lam a, app, <-, -/a>, pi_a, a
///   LAM_i a > lam b, <-, -/a>, pi_b, b
///   LAM_i a > LAM_j a, circ_i > circ_j   (i > j)
///
/// and closed under transitivity. id and schema constants are minimal.
bool q_precedence(const Symbol& f, const Symbol& g);

using Precedence = bool (*)(const Symbol&, const Symbol&);

/// Order in which arguments of equal root symbols are compared.
enum class LexStatus { LeftToRight, RightToLeft };

bool lpo_greater(const LabTerm& s, const LabTerm& t, Precedence prec = q_precedence,
                 LexStatus status = LexStatus::RightToLeft);

struct QInstance {
  LabRule rule;
  /// e.g. "i=1 j=0 k=1 a=x b=y"
  std::string params;
  LabTerm lhs;
  LabTerm rhs;
};

/// All instances of the Q rule schemas with label variables in
/// [0, label_bound] and binder names in {x, y}. Every schema variable is a
/// distinct constant.
std::vector<QInstance> q_instances(std::size_t label_bound);

struct QReport {
  std::size_t label_bound = 0;
  std::size_t rules_checked = 0;
  std::size_t instances = 0;
  std::vector<QInstance> failures;
};

/// lpo_greater(lhs, rhs) on every instance. Q has infinitely many labels;
/// only the bounded instances are checked.
QReport check_q_decrease(std::size_t label_bound, LexStatus status = LexStatus::RightToLeft);
std::string report_to_json(const QReport& r);

}  // namespace lampi

#endif  // LAMPI_TERMINATION_HPP_
