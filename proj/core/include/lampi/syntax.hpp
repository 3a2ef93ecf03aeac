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

// ASCII concrete syntax.
//
//   term   ::= "lam" binder+ "." term | chain
//   binder ::= var | var ":" type
//   chain  ::= (sub-atom "*")* (term-atom+ | sub-atom)
//   sub-atom  ::= "id" | "pi_" var | "<" subst ("," term "/" var)+ ">" | "(" subst ")"
//   term-atom ::= var | "(" term ")"
//
// A context is a comma-separated list of variables; judgements are written
// `ctx |- M` and `ctx |- s |> ctx`.

#ifndef LAMPI_SYNTAX_HPP_
#define LAMPI_SYNTAX_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lampi/ast.hpp"

namespace lampi {

enum class Category { Term, Subst, Context, Judgement };

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

  /// Byte offset of the offending token.
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

using Parsed = std::variant<Term, Subst, Context, Judgement>;

Parsed parse(std::string_view text, Category category);
Term parse_term(std::string_view text);
Subst parse_subst(std::string_view text);
Context parse_context(std::string_view text);
Judgement parse_judgement(std::string_view text);
Type parse_type(std::string_view text);

std::string print(const Term& t);
std::string print(const Subst& s);
std::string print(const Context& c);
std::string print(const Judgement& j);
std::string print(const Expr& e);
std::string print(const Type& t);

/// Top-level grammar class of a term.
enum class TermClass { Var, App, Abs, Clos };
TermClass term_class(const Term& t);

/// A random derivable judgement `ctx |- M` whose term has at most
/// `size_budget` nodes. Deterministic in `seed`.
TermJ generate(std::uint64_t seed, std::size_t size_budget, const std::vector<Var>& vocabulary);

/// A random derivable judgement `ctx |- s |> cod` whose substitution has at
/// most `size_budget` nodes.
SubstJ generate_subst(std::uint64_t seed, std::size_t size_budget,
                      const std::vector<Var>& vocabulary);

/// The default generator vocabulary {x, y, z}.
std::vector<Var> default_vocabulary();

}  // namespace lampi

#endif  // LAMPI_SYNTAX_HPP_
