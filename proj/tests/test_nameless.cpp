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

#include <random>
#include <string>
#include <vector>

#include "lampi/corpus.hpp"
#include "lampi/nameless.hpp"
#include "lampi/rewrite.hpp"
#include "lampi/syntax.hpp"
#include "oracles.hpp"

using namespace lampi;

namespace {

using NT = NamelessTerm;
using NS = NamelessSubst;

Judgement J(const char* text) { return parse_judgement(text); }

std::string tr(const char* text) { return print(translate(J(text))); }
std::string tr_ext(const char* text) { return print(translate_ext(J(text))); }

const NT& as_term(const NamelessExpr& e) { return std::get<NT>(e); }

NS random_ns(std::mt19937_64& rng, int depth);

NT random_nt(std::mt19937_64& rng, int depth) {
  switch (depth <= 0 ? 0 : rng() % 4) {
    case 0:
      return rng() % 3 ? NT::one() : numeral(2 + rng() % 2);
    case 1:
      return NT::app(random_nt(rng, depth - 1), random_nt(rng, depth - 1));
    case 2:
      return NT::lam(random_nt(rng, depth - 1));
    default:
      return NT::clos(random_ns(rng, depth - 1), random_nt(rng, depth - 1));
  }
}

NS random_ns(std::mt19937_64& rng, int depth) {
  switch (depth <= 0 ? rng() % 2 : rng() % 4) {
    case 0:
      return NS::id();
    case 1:
      return NS::pi();
    case 2:
      return NS::cons(random_ns(rng, depth - 1), random_nt(rng, depth - 1));
    default:
      return NS::comp(random_ns(rng, depth - 1), random_ns(rng, depth - 1));
  }
}

// <p, 1>
NS shift_cons() { return NS::cons(NS::pi(), NT::one()); }

std::vector<Term> ski_terms(std::size_t want, std::uint64_t seed) {
  const std::vector<Term> base = {parse_term("lam x y z. x z (y z)"), parse_term("lam x y. x"),
                                  parse_term("lam x. x")};
  std::mt19937_64 rng(seed);
  std::vector<Term> out;
  while (out.size() < want) {
    Term m = base[rng() % 3];
    int leaves = 2 + static_cast<int>(rng() % 4);
    for (int i = 1; i < leaves; ++i) {
      Term leaf = base[rng() % 3];
      m = rng() % 2 ? Term::app(m, leaf) : Term::app(leaf, m);
    }
    if (oracle::simply_typable(oracle::db_from_named(m, {}))) out.push_back(m);
  }
  return out;
}

}  // namespace

TEST_CASE("numerals") {
  CHECK(numeral(1) == NT::one());
  CHECK(numeral(2) == NT::clos(NS::pi(), NT::one()));
  CHECK(numeral(3) == NT::clos(NS::comp(NS::pi(), NS::pi()), NT::one()));
  CHECK_THROWS_AS(numeral(0), std::invalid_argument);
  CHECK(numeral_value(numeral(4)) == 4u);
  CHECK(!numeral_value(NT::lam(NT::one())));
  CHECK(!numeral_value(NT::clos(NS::pi(), numeral(2))));
  CHECK(print(numeral(1)) == "1");
  CHECK(print(numeral(3)) == "#3");
  CHECK(print(NT::num(1)) == "#1");
}

TEST_CASE("translations of variables and projections") {
  CHECK(tr("x |- x") == "1");
  CHECK(tr("x, y |- x") == "#2");
  CHECK(tr("x, y |- pi_y * x") == "#2");
  CHECK(tr_ext("x, y |- x") == "2 |- #2");
  CHECK(tr_ext("x, y |- pi_y * x") == "2 |- p * #1");
  CHECK(tr("x |- lam y. x") == "\\ #2");
  CHECK(tr("|- lam x y. x") == "\\ \\ #2");
  CHECK(tr("x |- (lam y. y) x") == "(\\ 1) 1");
  CHECK(tr("x, y |- <pi_y, y/z> * z") == "<p, 1> * 1");
  CHECK(tr("x, y |- <id, x/z> |> x, y, z") == "<id, #2>");
}

TEST_CASE("translating a non-derivable judgement throws") {
  CHECK_THROWS_AS(translate(J("x |- y")), NotDerivableError);
  CHECK_THROWS_AS(simeq(J("x |- y"), J("x |- x")), NotDerivableError);
  CHECK_THROWS_AS(alpha_eq(J("x |- x"), J("y |- pi_x * y")), NotDerivableError);
}

TEST_CASE("equal translations") {
  CHECK(simeq(J("x, y |- x"), J("x, y |- pi_y * x")));
  CHECK(simeq(J("x |- lam y. x"), J("x |- lam y. x")));
  CHECK(!simeq(J("x |- x"), J("x, y |- x")));
}

TEST_CASE("alpha equality") {
  CHECK(alpha_eq(J("x, y |- pi_y * x"), J("x, x |- pi_x * x")));
  CHECK(alpha_eq(J("x |- lam y. pi_y * x"), J("x |- lam x. pi_x * x")));
  CHECK(alpha_eq(J("|- lam x. lam y. pi_y * x"), J("|- lam x. lam x. pi_x * x")));
  CHECK(!alpha_eq(J("x, y |- x"), J("x, y |- pi_y * x")));
  CHECK(alpha_eq(J("x, y |- pi_y |> x"), J("x, x |- pi_x |> x")));
  CHECK(!alpha_eq(J("x |- x"), J("y, x |- x")));
  CHECK(!alpha_eq(J("x |- x"), J("x |- id |> x")));
}

TEST_CASE("atoms expand to the numerals they stand for") {
  for (const Judgement& j : random_judgements(31, 2000, 8, default_vocabulary())) {
    CHECK_MESSAGE(expand_numerals(translate_ext(j).body) == translate(j), print(j));
    CHECK(translate_ext(j).len == std::visit([](const auto& x) { return x.ctx.size(); }, j));
  }
}

TEST_CASE("lifting a name-free substitution") {
  NS s = NS::cons(NS::id(), NT::one());
  CHECK(nameless_lift(0, s) == s);
  CHECK(nameless_lift(1, NS::id()) == NS::cons(NS::comp(NS::pi(), NS::id()), NT::one()));
  CHECK(nameless_lift(2, s) ==
        NS::cons(NS::comp(NS::pi(), NS::cons(NS::comp(NS::pi(), s), NT::one())), NT::one()));
}

TEST_CASE("sigma normal forms") {
  // <p, 1> * 1 -> 1
  CHECK(sigma_normalize(NT::clos(shift_cons(), NT::one())) == NT::one());
  // <id, 1> * \ #2 -> \ #2
  NT lam2 = NT::lam(numeral(2));
  CHECK(sigma_normalize(NT::clos(NS::cons(NS::id(), NT::one()), lam2)) == lam2);
  CHECK(sigma_normalize(NT::clos(NS::id(), numeral(3))) == numeral(3));
  CHECK(sigma_normalize(NT::clos(NS::comp(NS::pi(), NS::pi()), NT::one())) == numeral(3));
  CHECK(is_sigma_normal(NamelessExpr{numeral(5)}));
  CHECK(!is_sigma_normal(NamelessExpr{NT::clos(NS::id(), NT::one())}));
}

TEST_CASE("sigma normal forms do not depend on the strategy") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10000; ++i) {
    NT u = random_nt(rng, 4);
    NT a = sigma_normalize(u, SigmaStrategy::LeftmostOutermost);
    NT b = sigma_normalize(u, SigmaStrategy::RightmostInnermost);
    CHECK_MESSAGE(a == b, print(u));
    CHECK(is_sigma_normal(NamelessExpr{a}));
  }
}

TEST_CASE("composing with the shifted identity is invisible on terms") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 3000; ++i) {
    NT u = random_nt(rng, 4);
    NT expected = sigma_normalize(u);
    CHECK_MESSAGE(sigma_normalize(NT::clos(shift_cons(), u)) == expected, print(u));
    std::size_t n = 1 + i % 3;
    CHECK_MESSAGE(sigma_normalize(NT::clos(nameless_lift(n, shift_cons()), u)) == expected, print(u));
  }
}

TEST_CASE("the same fails for substitutions") {
  // sigma(<p, 1> * id) is <p, 1>, which has no rule back to id.
  NS s = NS::id();
  CHECK(sigma_normalize(NS::comp(shift_cons(), s)) == shift_cons());
  CHECK(sigma_normalize(s) == NS::id());
  CHECK(sigma_normalize(NS::comp(shift_cons(), s)) != sigma_normalize(s));
}

TEST_CASE("pure judgements translate to pure sigma normal terms") {
  for (const Judgement& j : random_judgements(47, 3000, 8, default_vocabulary())) {
    const auto* tj = std::get_if<TermJ>(&j);
    if (!tj || !is_pure(tj->term)) continue;
    NT u = as_term(translate(j));
    CHECK(is_pure(u));
    CHECK(is_sigma_normal(NamelessExpr{u}));
  }
}

TEST_CASE("translation commutes with substitution normalization") {
  NormalizeOptions opt;
  opt.rewrite.beta = false;
  std::size_t checked = 0;
  for (const Judgement& j : random_judgements(53, 600, 8, default_vocabulary())) {
    if (!std::holds_alternative<TermJ>(j)) continue;
    Judgement nf = normalize_spa(j, opt).final();
    NamelessExpr v = translate(nf);
    CHECK(is_sigma_normal(v));
    CHECK_MESSAGE(sigma_normalize(as_term(translate(j))) == as_term(v), print(j));
    ++checked;
  }
  CHECK(checked > 400);
}

TEST_CASE("substitution normal forms may keep a shadowed context") {
  // No renaming step applies to the context of a substitution judgement, so
  // x stays behind a chain of two projections and its image is not a
  // sigma normal form.
  Judgement j = J("x, z, x |- pi_x * pi_z * <pi_x, lam y. x/z> |> z");
  NormalizeOptions opt;
  opt.rewrite.beta = false;
  Judgement nf = normalize_spa(j, opt).final();
  CHECK(print(nf) == "x, z, x |- <(pi_x * pi_z) * pi_x, lam y. (pi_y * pi_x) * x/z> |> z");
  NamelessExpr v = translate(nf);
  CHECK(!is_sigma_normal(v));
  CHECK(sigma_normalize(std::get<NS>(v)) == sigma_normalize(std::get<NS>(translate(j))));
}

TEST_CASE("alpha equality refines equal translations") {
  std::vector<TermJ> js = enumerate_term_judgements(4, {Var("x"), Var("y")}, 2);
  REQUIRE(js.size() > 100);
  std::vector<NamelessExpr> plain;
  std::vector<NamelessJudgement> ext;
  for (const TermJ& j : js) {
    plain.push_back(translate(Judgement{j}));
    ext.push_back(translate_ext(Judgement{j}));
  }
  std::size_t alpha_pairs = 0;
  std::size_t pure_pairs = 0;
  for (std::size_t a = 0; a < js.size(); ++a) {
    for (std::size_t b = a + 1; b < js.size(); ++b) {
      bool al = ext[a] == ext[b];
      bool sim = plain[a] == plain[b];
      if (al) {
        ++alpha_pairs;
        CHECK(sim);
      }
      if (sim && js[a].ctx.size() == js[b].ctx.size() && is_pure(js[a].term) && is_pure(js[b].term)) {
        ++pure_pairs;
        CHECK(al);
      }
    }
  }
  CHECK(alpha_pairs > 0);
  CHECK(pure_pairs > 0);
  // Spot-check the direct entry points against the cached translations.
  for (std::size_t a = 0; a + 1 < js.size(); a += 37) {
    CHECK(alpha_eq(Judgement{js[a]}, Judgement{js[a + 1]}) == (ext[a] == ext[a + 1]));
    CHECK(simeq(Judgement{js[a]}, Judgement{js[a + 1]}) == (plain[a] == plain[a + 1]));
  }
}

TEST_CASE("beta on pure name-free terms") {
  NT id = NT::lam(NT::one());
  CHECK(beta_step_pure(NT::app(id, NT::one()), {}) == NT::one());
  CHECK(beta_step_pure(NT::app(id, id), {}) == id);
  CHECK(beta_step_pure(NT::app(NT::lam(NT::lam(numeral(2))), NT::one()), {}) == NT::lam(numeral(2)));
  CHECK(beta_redex_paths(NT::app(id, NT::app(id, id))) ==
        std::vector<Path>{{}, {Selector::AppArg}});
  CHECK_THROWS_AS(beta_step_pure(NT::one(), {}), NamelessStepError);
  CHECK_THROWS_AS(beta_step_pure(NT::app(id, NT::clos(NS::id(), NT::one())), {}), NamelessStepError);
}

TEST_CASE("the de Bruijn oracle rejects self-application") {
  CHECK(!oracle::simply_typable(oracle::db_from_named(parse_term("lam x. x x"), {})));
  CHECK(oracle::simply_typable(oracle::db_from_named(parse_term("lam x y z. x z (y z)"), {})));
}

TEST_CASE("normal forms of combinator terms agree with de Bruijn normal order") {
  for (const Term& m : ski_terms(100, 59)) {
    auto expected = oracle::db_normalize(oracle::db_from_named(m, {}), 100000);
    REQUIRE(expected);
    NormalizeOptions opt;
    opt.max_steps = 200000;
    Trace t = normalize_lpi(Judgement{TermJ{Context{}, m}}, opt);
    REQUIRE(t.status == Trace::Status::NormalForm);
    NT v = as_term(translate(t.final()));
    CHECK_MESSAGE(oracle::db_equal(oracle::db_from_nameless(v), *expected), print(m));
    NT u = as_term(translate(Judgement{TermJ{Context{}, m}}));
    auto w = beta_normalize_pure(u, 100000);
    REQUIRE(w);
    CHECK(*w == v);
  }
}

TEST_CASE("name-free beta steps lift to named reductions") {
  // Each beta step on the translation is matched by Beta at the same path
  // followed by substitution normalization.
  NormalizeOptions spa;
  spa.rewrite.beta = false;
  for (const Term& m : ski_terms(40, 61)) {
    Judgement j{TermJ{Context{}, m}};
    NT u = as_term(translate(j));
    for (int depth = 0; depth < 3; ++depth) {
      std::vector<Path> paths = beta_redex_paths(u);
      if (paths.empty()) break;
      const Path& p = paths[depth % paths.size()];
      NT v = beta_step_pure(u, p);
      Judgement k = step(j, Redex{Position{p, std::nullopt}, RuleName::Beta, std::nullopt});
      Judgement l = normalize_spa(k, spa).final();
      REQUIRE(is_pure(std::get<TermJ>(l).term));
      CHECK_MESSAGE(as_term(translate(l)) == v, print(j));
      j = l;
      u = v;
    }
  }
}
