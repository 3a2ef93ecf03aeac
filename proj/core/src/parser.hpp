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

#ifndef LAMPI_SRC_PARSER_HPP_
#define LAMPI_SRC_PARSER_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lampi/ast.hpp"

namespace lampi::detail {

enum class Tok {
  Ident,   // lowercase-initial word
  Upper,   // uppercase-initial word (type names)
  Lam,
  Id,
  Pi,      // pi_<var>; the variable is in `text`
  LParen,
  RParen,
  LAngle,
  RAngle,
  Comma,
  Slash,
  Dot,
  Star,
  Colon,
  Arrow,   // ->
  Turnstile,  // |-
  Triangle,   // |>
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

struct CtxEntry {
  Var var;
  std::optional<Type> type;
};

/// Recursive-descent parser shared by the untyped and typed front ends.
class Parser {
 public:
  explicit Parser(std::string_view text);

  Expr expr();
  Term term();
  Subst subst();
  Type type();
  /// Possibly empty; stops before any token that cannot continue a context.
  std::vector<CtxEntry> context();

  bool at(Tok k) const { return tokens_[pos_].kind == k; }
  void expect(Tok k);
  void finish();
  [[noreturn]] void fail(std::vector<std::string> expected) const;

 private:
  const Token& peek() const { return tokens_[pos_]; }
  void advance() { ++pos_; }
  Var var();
  Expr element();
  Expr primary();
  bool at_term_atom() const;

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string token_name(Tok k);

}  // namespace lampi::detail

#endif  // LAMPI_SRC_PARSER_HPP_
