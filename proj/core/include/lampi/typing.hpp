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

// Simply typed judgements and their values as arrows of a cartesian closed
// category.
//
//   (i)    G, x:A |- x : A                       pr2
//   (ii)   G |- x : A  ==>  G, y:B |- x : A      pr1 ; f        (x != y)
//   (iii)  G |- M : A -> B,  G |- N : A  ==>  G |- M N : B      <f, g> ; ev
//   (iv)   G, x:A |- M : B  ==>  G |- lam x:A. M : A -> B       cur(f)
//   (v)    G |- s |> D,  D |- M : A  ==>  G |- s * M : A        f ; g
//   (vi)   G |- id |> G                                         id
//   (vii)  G, x:A |- pi_x |> G                                  pr1
//   (viii) G |- s |> D,  G |- N : A  ==>  G |- <s, N/x> |> D, x:A   <f, g>
//   (ix)   G |- s |> D,  D |- q |> S  ==>  G |- s * q |> S      f ; g
//
// `f ; g` is diagrammatic composition: f first.

#ifndef LAMPI_TYPING_HPP_
#define LAMPI_TYPING_HPP_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "lampi/ast.hpp"
#include "lampi/wellformed.hpp"

namespace lampi {

struct TypedEntry {
  Var var;
  Type type;
  friend bool operator==(const TypedEntry&, const TypedEntry&) = default;
};

using TypedContext = std::vector<TypedEntry>;

/// G |- M : A
struct TTermJ {
  TypedContext ctx;
  Term term;
  Type type;
};

/// G |- s |> D
struct TSubstJ {
  TypedContext ctx;
  Subst sub;
  TypedContext cod;
};

using TypedJudgement = std::variant<TTermJ, TSubstJ>;

struct TypedDerivation {
  TypedJudgement root;
  WfRule rule;
  std::vector<TypedDerivation> premises;
};

TypedJudgement parse_typed_judgement(std::string_view text);
std::string print(const TypedContext& ctx);
std::string print(const TypedJudgement& j);

Checked<TypedDerivation> typecheck(const TypedJudgement& j);

/// Drops all type information.
Judgement erase(const TypedJudgement& j);

struct ObjExpr {
  enum class Kind { Terminal, Prod, TypeObj };
  Kind kind = Kind::Terminal;
  std::shared_ptr<const ObjExpr> left;
  std::shared_ptr<const ObjExpr> right;
  std::optional<Type> type;

  friend bool operator==(const ObjExpr& a, const ObjExpr& b);
};

/// (...((1 x A1) x A2) ...) x An
ObjExpr context_object(const TypedContext& ctx);
std::string print(const ObjExpr& o);

struct ArrowExpr {
  enum class Kind { Id, Pr1, Pr2, Pair, Curry, Ev, Seq };
  Kind kind = Kind::Id;
  std::shared_ptr<const ArrowExpr> f;
  std::shared_ptr<const ArrowExpr> g;

  static ArrowExpr id();
  static ArrowExpr pr1();
  static ArrowExpr pr2();
  static ArrowExpr ev();
  static ArrowExpr pair(ArrowExpr f, ArrowExpr g);
  static ArrowExpr curry(ArrowExpr f);
  static ArrowExpr seq(ArrowExpr f, ArrowExpr g);

  friend bool operator==(const ArrowExpr& a, const ArrowExpr& b);
};

ArrowExpr ccc_arrow(const TypedDerivation& d);
/// `pr1 ; pr2`, `cur(f)`, `<f, g>`, `ev`, `id`.
std::string print(const ArrowExpr& a);

}  // namespace lampi

#endif  // LAMPI_TYPING_HPP_
