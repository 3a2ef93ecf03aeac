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

// The rewriting engine.
//
//   Beta       (lam a. M) N          -> <id, N/a> * M
//   Abs        s * lam a. M          -> lam a. <pi_a * s, a/a> * M
//   App        s * (M N)             -> (s * M) (s * N)
//   ConsVar    <s, N/a> * a          -> N
//   New        <s, N/a> * b          -> s * b                      (a != b)
//   IdVar      id * a                -> a
//   Clos       s * q * M             -> (s * q) * M
//   Ass        s * q * r             -> (s * q) * r
//   IdR        s * id                -> s
//   IdShift    id * pi_a             -> pi_a
//   ConsShift  <s, N/a> * pi_a       -> s
//   Map        s * <q, N/a>          -> <s * q, s * N/a>
//   Pi1        pi_a * b              -> b                          (a != b)
//   Pi2        (s * pi_a) * b        -> s * b                      (a != b)
//   Alpha1     lam a. M              -> lam b. <pi_b, b/a> * M
//                 a free in lam a. M, b not free in lam a. M
//   Alpha2     G, a, D |- M          ~> G, b, D |- lift_D(<pi_b, b/a>) * M
//                 a free in (a, D |- M), b not free in (a, D |- M)
//
// Optional extras: StrongAbs  s * lam a. M -> lam b. <pi_b * s, b/a> * M,
// IdTerm  id * M -> M,  IdSubst  id * s -> s.

#ifndef LAMPI_REWRITE_HPP_
#define LAMPI_REWRITE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lampi/ast.hpp"
#include "lampi/syntax.hpp"

namespace lampi {

enum class RuleName {
  Beta,
  Abs,
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
  Alpha1,
  Alpha2,
  StrongAbs,
  IdTerm,
  IdSubst,
};

std::string_view rule_name(RuleName r);
std::optional<RuleName> rule_from_name(std::string_view name);
bool is_alpha(RuleName r);

/// A path into the term or substitution of a judgement, or (for Alpha2)
/// the 1-based index of a context entry.
struct Position {
  Path path;
  std::optional<std::size_t> ctx_index;

  friend bool operator==(const Position&, const Position&) = default;
};

struct Redex {
  Position position;
  RuleName rule;
  /// The new binder name for Alpha1, Alpha2 and StrongAbs.
  std::optional<Var> fresh;

  friend bool operator==(const Redex&, const Redex&) = default;
};

struct RewriteOptions {
  /// Include Beta. Without it the system is the substitution calculus with
  /// explicit renaming.
  bool beta = true;
  /// StrongAbs, IdTerm and IdSubst.
  bool extra_rules = false;
  /// Preferred names for fresh binders, tried cyclically after the name
  /// being replaced.
  std::vector<Var> vocabulary = default_vocabulary();
};

class InvalidRedex : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// lift_nil(s) = s, lift_(S, a)(s) = <pi_a * lift_S(s), a/a>.
Subst lift(const Context& delta, const Subst& s);

/// `base` if allowed; otherwise the stem of `base` (trailing digits
/// stripped) followed by the least positive number that is allowed.
Var fresh(const Var& base, const std::set<Var>& forbidden);

/// `base` if allowed; else the first allowed vocabulary entry, scanning
/// cyclically from the one after `base`; else fresh(base, forbidden).
Var canonical_fresh(const Var& base, const std::set<Var>& forbidden,
                    const std::vector<Var>& vocabulary);

/// All redexes, outermost first and left to right; for a term judgement the
/// Alpha2 redexes follow, by increasing context index.
std::vector<Redex> redexes(const Expr& e, const RewriteOptions& opt = {});
std::vector<Redex> redexes(const Judgement& j, const RewriteOptions& opt = {});

/// Contracts `r`. Throws InvalidRedex if the rule does not apply there.
Expr step(const Expr& e, const Redex& r, const RewriteOptions& opt = {});
Judgement step(const Judgement& j, const Redex& r, const RewriteOptions& opt = {});

enum class Strategy { Leftmost, Rightmost, Random };

std::string_view strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(std::string_view name);

struct TraceStep {
  Redex redex;
  Judgement result;
};

struct Trace {
  enum class Status { NormalForm, BudgetExhausted };

  Judgement start;
  std::vector<TraceStep> steps;
  Status status = Status::NormalForm;

  const Judgement& final() const { return steps.empty() ? start : steps.back().result; }
};

struct NormalizeOptions {
  RewriteOptions rewrite;
  Strategy strategy = Strategy::Leftmost;
  std::uint64_t seed = 0;
  std::size_t max_steps = 10000;
};

/// Raised when the substitution calculus fails to terminate within the
/// safety cap. This indicates a bug, not a user error.
class LimitFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kSpaStepCap = 1000000;

/// Rules other than Beta to a normal form. Non-renaming rules are applied
/// until none is left, then one renaming step, and so on.
Trace normalize_spa(const Judgement& j, const NormalizeOptions& opt = {});

/// All rules including Beta, with the same renaming schedule, stopping at a
/// normal form or after `max_steps` steps.
Trace normalize_lpi(const Judgement& j, const NormalizeOptions& opt = {});

/// Picks the redex the strategy would contract next, or nothing at a normal
/// form. `rng_state` is advanced for the random strategy.
std::optional<Redex> choose_redex(const Judgement& j, const NormalizeOptions& opt,
                                  std::uint64_t& rng_state);

std::string position_to_string(const Position& p);
std::string trace_to_json(const Trace& t);

/// Shapes of substitution normal forms. pi_{a1...an} is the left-nested
/// composition (...(pi_a1 * pi_a2) * ...) * pi_an.
struct SubstShape {
  enum class Kind { Id, PiChain, ConsOverId, ConsOverPiChain, NotNormalShape };
  Kind kind = Kind::NotNormalShape;
  std::vector<Var> pis;
  std::vector<std::pair<Term, Var>> entries;
};

SubstShape classify_subst_nf(const Subst& s);
std::string_view shape_name(SubstShape::Kind k);

/// No closure s * N anywhere.
bool is_pure(const Term& m);

}  // namespace lampi

#endif  // LAMPI_REWRITE_HPP_
