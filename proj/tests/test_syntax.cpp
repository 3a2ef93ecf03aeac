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

#include <doctest.h>

#include <string>
#include <vector>

#include "lampi/syntax.hpp"
#include "lampi/wellformed.hpp"

using namespace lampi;

namespace {

Term v(const char* n) { return Term::var(Var(n)); }

}  // namespace

TEST_CASE("curried abstraction is nested lambdas") {
  CHECK(parse_term("lam x y. x") == Term::lam(Var("x"), Term::lam(Var("y"), v("x"))));
}

TEST_CASE("closure binds weaker than application") {
  Term want = Term::clos(Subst::id(), Term::app(v("x"), Term::app(v("y"), v("z"))));
  CHECK(parse_term("id * x(y z)") == want);
  CHECK(parse_term("id * x (y z)") == want);
}

TEST_CASE("multi-entry cons nests to the left") {
  Subst want = Subst::cons(Subst::cons(Subst::id(), v("y"), Var("x")), v("z"), Var("x"));
  CHECK(parse_subst("<id, y/x, z/x>") == want);
}

TEST_CASE("composition chains associate to the right") {
  Subst want = Subst::comp(Subst::pi(Var("x")), Subst::comp(Subst::pi(Var("y")), Subst::id()));
  CHECK(parse_subst("pi_x * pi_y * id") == want);
  Term clos = parse_term("pi_x * pi_y * x");
  REQUIRE(clos.is_clos());
  CHECK(clos.sub() == Subst::pi(Var("x")));
  CHECK(clos.body().is_clos());
}

TEST_CASE("printing uses the fewest parentheses") {
  CHECK(print(Term::clos(Subst::pi(Var("y")), v("x"))) == "pi_y * x");
  CHECK(print(Term::lam(Var("x"), Term::lam(Var("y"), v("x")))) == "lam x y. x");
  CHECK(print(Subst::cons(Subst::id(), v("y"), Var("x"))) == "<id, y/x>");
  CHECK(print(parse_term("(lam x. x) (y z)")) == "(lam x. x) (y z)");
  CHECK(print(parse_term("x y z")) == "x y z");
}

TEST_CASE("a composed substitution under a closure keeps its parentheses") {
  Term t = Term::clos(Subst::comp(Subst::pi(Var("x")), Subst::pi(Var("y"))), v("z"));
  CHECK(print(t) == "(pi_x * pi_y) * z");
  CHECK(parse_term("(pi_x * pi_y) * z") == t);
  CHECK(!(parse_term("pi_x * pi_y * z") == t));
}

TEST_CASE("judgements and contexts") {
  Judgement j = parse_judgement("x, x, y |- pi_y * x");
  REQUIRE(std::holds_alternative<TermJ>(j));
  CHECK(std::get<TermJ>(j).ctx == Context{Var("x"), Var("x"), Var("y")});
  CHECK(print(j) == "x, x, y |- pi_y * x");
  Judgement s = parse_judgement("x |- <id, x/y> |> x, y");
  REQUIRE(std::holds_alternative<SubstJ>(s));
  CHECK(std::get<SubstJ>(s).cod == Context{Var("x"), Var("y")});
  CHECK(print(parse_judgement("|- lam x. x")) == "|- lam x. x");
  CHECK(parse_context("").empty());
  CHECK(print(parse_context("x,x,y")) == "x, x, y");
}

TEST_CASE("redundant parentheses are accepted and dropped") {
  CHECK(print(parse_term("((x))")) == "x");
  CHECK(print(parse_term("(lam x. (x))")) == "lam x. x");
  CHECK(print(parse_subst("((id))")) == "id");
}

TEST_CASE("parse errors report an offset and what was expected") {
  try {
    parse_term("lam . x");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
    CHECK(!e.expected().empty());
  }
  CHECK_THROWS_AS(parse_term("x y )"), ParseError);
  CHECK_THROWS_AS(parse_term("lam id. x"), ParseError);
  CHECK_THROWS_AS(parse_judgement("x |- "), ParseError);
}

TEST_CASE("category mismatches are parse errors") {
  CHECK_THROWS_AS(parse_subst("x"), ParseError);
  CHECK_THROWS_AS(parse_term("pi_x"), ParseError);
  CHECK_THROWS_AS(parse_term("pi_x * id"), ParseError);
  CHECK_NOTHROW(parse_subst("pi_x * id"));
}

TEST_CASE("term classes follow the root constructor") {
  CHECK(term_class(parse_term("x")) == TermClass::Var);
  CHECK(term_class(parse_term("x y")) == TermClass::App);
  CHECK(term_class(parse_term("lam x. x")) == TermClass::Abs);
  CHECK(term_class(parse_term("id * x")) == TermClass::Clos);
}

TEST_CASE("budget 1 yields a variable at the end of its context") {
  TermJ j = generate(0, 1, {Var("x")});
  CHECK(j.term == v("x"));
  REQUIRE(!j.ctx.empty());
  CHECK(j.ctx.back() == Var("x"));
}

TEST_CASE("generated judgements are derivable, bounded and deterministic") {
  std::vector<Var> vocab = {Var("x"), Var("y")};
  for (std::uint64_t k = 0; k < 1000; ++k) {
    TermJ j = generate(k, 7, vocab);
    REQUIRE_MESSAGE(is_derivable(Judgement{j}), print(Judgement{j}));
    CHECK(j.term.size() <= 7);
    CHECK(generate(k, 7, vocab) == j);
    SubstJ s = generate_subst(k, 7, vocab);
    REQUIRE_MESSAGE(is_derivable(Judgement{s}), print(Judgement{s}));
  }
}

TEST_CASE("generated values round-trip through the printer") {
  for (std::uint64_t k = 0; k < 500; ++k) {
    Judgement j = generate(k, 12, default_vocabulary());
    CHECK(parse_judgement(print(j)) == j);
    const Term& t = std::get<TermJ>(j).term;
    CHECK(parse_term(print(t)) == t);
    SubstJ s = generate_subst(k, 12, default_vocabulary());
    CHECK(parse_subst(print(s.sub)) == s.sub);
    CHECK(parse_judgement(print(Judgement{s})) == Judgement{s});
  }
}

TEST_CASE("variable names") {
  CHECK(is_valid_var_name("x"));
  CHECK(is_valid_var_name("x_1y"));
  CHECK(!is_valid_var_name("lam"));
  CHECK(!is_valid_var_name("id"));
  CHECK(!is_valid_var_name("X"));
  CHECK(!is_valid_var_name("1x"));
  CHECK(!is_valid_var_name(""));
}
