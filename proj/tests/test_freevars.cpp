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

#include "lampi/freevars.hpp"
#include "lampi/syntax.hpp"
#include "oracles.hpp"

using namespace lampi;

namespace {

std::string fv(const char* term) { return print(fv_term(parse_term(term))); }

FVSeq seq(std::vector<FVSeq::Level> levels) { return FVSeq(std::move(levels)); }

FVSeq::Level set(std::initializer_list<const char*> names) {
  FVSeq::Level out;
  for (const char* n : names) out.insert(Var(n));
  return out;
}

// Random terms with closures over a tiny vocabulary, derivable or not.
Term random_term(std::mt19937_64& rng, int depth);

Subst random_subst(std::mt19937_64& rng, int depth) {
  static const char* kNames[] = {"x", "y", "z"};
  auto name = [&] { return Var(kNames[rng() % 3]); };
  switch (depth <= 0 ? rng() % 2 : rng() % 4) {
    case 0:
      return Subst::id();
    case 1:
      return Subst::pi(name());
    case 2:
      return Subst::cons(random_subst(rng, depth - 1), random_term(rng, depth - 1), name());
    default:
      return Subst::comp(random_subst(rng, depth - 1), random_subst(rng, depth - 1));
  }
}

Term random_term(std::mt19937_64& rng, int depth) {
  static const char* kNames[] = {"x", "y", "z"};
  auto name = [&] { return Var(kNames[rng() % 3]); };
  switch (depth <= 0 ? 0 : rng() % 4) {
    case 0:
      return Term::var(name());
    case 1:
      return Term::app(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 2:
      return Term::lam(name(), random_term(rng, depth - 1));
    default:
      return Term::clos(random_subst(rng, depth - 1), random_term(rng, depth - 1));
  }
}

FVSeq random_seq(std::mt19937_64& rng) { return fv_term(random_term(rng, 3)); }

}  // namespace

TEST_CASE("levels of projections and abstractions") {
  CHECK(fv("x") == "[{x}]");
  CHECK(fv("pi_y * x") == "[{}, {x}]");
  CHECK(fv("pi_z * pi_y * x") == "[{}, {}, {x}]");
  CHECK(fv("lam z. pi_z * pi_y * x") == "[{}, {x}]");
  CHECK(fv("lam y z. pi_z * pi_y * x") == "[{x}]");
  CHECK(fv("lam x y z. pi_z * pi_y * x") == "[]");
  CHECK(fv("x (pi_z * pi_y * x)") == "[{x}, {}, {x}]");
  CHECK(fv("lam z. x (pi_z * pi_y * x)") == "[{x}, {x}]");
  CHECK(fv("lam y z. x (pi_z * pi_y * x)") == "[{x}]");
  CHECK(fv("lam x y z. x (pi_z * pi_y * x)") == "[]");
}

TEST_CASE("a binder can occur free in its own abstraction") {
  CHECK(fv("pi_x * x") == "[{}, {x}]");
  CHECK(fv("lam x. pi_x * x") == "[{x}]");
}

TEST_CASE("the O operators") {
  FVSeq a = seq({set({"x"}), set({"y"})});
  CHECK(apply_O(Subst::id(), a) == a);
  CHECK(apply_O(Subst::pi(Var("x")), seq({set({"y"})})) == seq({{}, set({"y"})}));
  CHECK(apply_O(parse_subst("<id, z/x>"), seq({set({"x"})})) == seq({set({"z"})}));
}

TEST_CASE("free variables of substitutions") {
  CHECK(fv_subst(Subst::id()).empty());
  CHECK(fv_subst(parse_subst("<id, x/y>")) == seq({set({"x"})}));
  CHECK(fv_subst(parse_subst("pi_x * <id, y/z>")) == seq({{}, set({"y"})}));
}

TEST_CASE("free variables of judgements close over the context") {
  auto j = [](const char* t) { return print(fv_judgement(std::get<TermJ>(parse_judgement(t)))); };
  CHECK(j("x |- pi_x * x") == "[{x}]");
  CHECK(j("x, z |- pi_z * pi_x * x") == "[{x}]");
  CHECK(j("|- lam x. x") == "[]");
  CHECK(j("x |- pi_x * x") == print(fv_term(parse_term("lam x. pi_x * x"))));
}

TEST_CASE("inclusions") {
  CHECK(seq_subseteq(seq({set({"x"})}), seq({set({"x"}), set({"y"})})));
  CHECK(!seq_subseteq(seq({set({"x"}), set({"y"})}), seq({set({"x"})})));
  CHECK(seq_subseteq(FVSeq(), seq({set({"x"})})));
  CHECK(seq_sqsubseteq(seq({set({"y"})}), seq({{}, set({"y"})})));
  CHECK(!seq_sqsubseteq(seq({{}, set({"y"})}), seq({set({"y"})})));
  FVSeq a = seq({set({"x"}), {}, set({"x", "y"})});
  CHECK(seq_sqsubseteq(a, a));
  CHECK(seq_subseteq(a, a));
}

TEST_CASE("support") {
  CHECK(support(seq({{}, set({"x"})})) == std::set<Var>{Var("x")});
  CHECK(support(seq({set({"x"}), {}, set({"x"})})) == std::set<Var>{Var("x")});
  CHECK(support(FVSeq()).empty());
}

TEST_CASE("canonical form drops trailing empty levels") {
  FVSeq a = seq({set({"x"}), {}, {}});
  CHECK(a.length() == 1);
  CHECK(seq({{}, {}}).empty());
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    FVSeq s = random_seq(rng);
    CHECK((s.empty() || !s.levels().back().empty()));
  }
}

TEST_CASE("the level computation matches a direct transcription") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5000; ++i) {
    Term t = random_term(rng, 5);
    CHECK_MESSAGE(print(fv_term(t)) == oracle::levels_print(oracle::levels_of(t)), print(t));
  }
}

TEST_CASE("associating a composition keeps free variables") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 3000; ++i) {
    Subst s = random_subst(rng, 2);
    Subst q = random_subst(rng, 2);
    Term m = random_term(rng, 3);
    CHECK(fv_term(Term::clos(Subst::comp(s, q), m)) == fv_term(Term::clos(s, Term::clos(q, m))));
  }
}

TEST_CASE("a cons is an applied abstraction") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 3000; ++i) {
    Subst s = random_subst(rng, 2);
    Term n = random_term(rng, 2);
    Term m = random_term(rng, 3);
    Var a(i % 2 ? "x" : "y");
    CHECK(fv_term(Term::clos(Subst::cons(s, n, a), m)) ==
          fv_term(Term::app(Term::clos(s, Term::lam(a, m)), n)));
  }
}

TEST_CASE("the O operators are monotone") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 3000; ++i) {
    FVSeq a = random_seq(rng);
    FVSeq b = a.unite(random_seq(rng));
    Subst s = random_subst(rng, 2);
    REQUIRE(seq_subseteq(a, b));
    CHECK(seq_subseteq(apply_O(s, a), apply_O(s, b)));
    FVSeq c = random_seq(rng);
    if (seq_sqsubseteq(a, c)) CHECK(seq_sqsubseteq(apply_O(s, a), apply_O(s, c)));
    CHECK(seq_sqsubseteq(a, b));
    FVSeq d = random_seq(rng);
    CHECK(seq_subseteq(a.unite(d), b.unite(d)));
  }
}
