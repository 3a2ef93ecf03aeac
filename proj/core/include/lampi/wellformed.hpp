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

// Derivability of judgements.
//
//   (i)    G, a |- a
//   (ii)   G |- a           ==>  G, b |- a         (a != b)
//   (iii)  G |- M, G |- N   ==>  G |- M N
//   (iv)   G, a |- M        ==>  G |- lam a. M
//   (v)    G |- s |> D, D |- M   ==>  G |- s * M
//   (vi)   G |- id |> G
//   (vii)  G, a |- pi_a |> G
//   (viii) G |- s |> D, G |- N   ==>  G |- <s, N/a> |> D, a
//   (ix)   G |- s |> D, D |- q |> S  ==>  G |- s * q |> S
//
// Every judgement shape is the conclusion of exactly one rule, so checking
// is a deterministic bottom-up walk.

#ifndef LAMPI_WELLFORMED_HPP_
#define LAMPI_WELLFORMED_HPP_

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lampi/ast.hpp"

namespace lampi {

enum class WfRule { I, II, III, IV, V, VI, VII, VIII, IX };

std::string_view wf_rule_name(WfRule r);

struct Derivation {
  Judgement root;
  WfRule rule;
  std::vector<Derivation> premises;
};

/// Why a judgement has no derivation. `path` addresses the term or
/// substitution node where the failing rule was tried.
struct NotDerivable {
  Path path;
  std::string rule;
  std::string reason;

  std::string message() const;
};

template <typename T>
using Checked = std::variant<T, NotDerivable>;

template <typename T>
bool ok(const Checked<T>& c) {
  return std::holds_alternative<T>(c);
}

Checked<Derivation> derive(const Judgement& j);

/// The unique D with ctx |- s |> D, if any.
Checked<Context> infer_codomain(const Context& ctx, const Subst& s);

/// Same answer as derive(), without building the derivation.
bool is_derivable(const Judgement& j);
bool is_derivable(const Context& ctx, const Term& m);

/// lam G. M: the context folded into abstractions, innermost last.
Term lambda_closure(const Context& ctx, const Term& m);

}  // namespace lampi

#endif  // LAMPI_WELLFORMED_HPP_
