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

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = lampi::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string line(std::vector<std::string> args) {
  Outcome o = run(std::move(args));
  REQUIRE(o.code == 0);
  return o.out;
}

}  // namespace

TEST_CASE("parse prints the canonical form") {
  CHECK(line({"parse", "x |- lam x y. x"}) == "x |- lam x y. x\n");
  CHECK(line({"parse", "x |- ((lam y. (y)))"}) == "x |- lam y. y\n");
  Outcome bad = run({"parse", "lam x ."});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("syntax error at offset 7") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"step", "x |- id * x", "--index", "3"}).code == 2);
  CHECK(run({"termination", "--label-bound", "0"}).code == 2);
  Outcome unknown = run({"corpus", "nosuch"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("known: golden") != std::string::npos);
}

TEST_CASE("check reports derivations and failures") {
  Outcome ok = run({"check", "x |- lam y. x"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "derivable\n  (iv)  x |- lam y. x\n    (ii)  x, y |- x\n      (i)  x |- x\n");
  Outcome no = run({"check", "x |- y"});
  CHECK(no.code == 1);
  Outcome js = run({"check", "x |- y", "--json"});
  CHECK(js.code == 1);
  nlohmann::json j = nlohmann::json::parse(js.out);
  CHECK(j["derivable"] == false);
  CHECK(j["reason"].get<std::string>().find("variable y") != std::string::npos);
}

TEST_CASE("typing and arrows") {
  CHECK(run({"typecheck", "x:A, x:B |- x : B"}).code == 0);
  CHECK(run({"typecheck", "x:A, x:B |- x : A"}).code == 1);
  CHECK(line({"ccc", "x:A |- x : A"}) == "pr2 : 1 x A -> A\n");
  CHECK(line({"ccc", "|- lam x:A. lam y:B. x : A -> B -> A"}) == "cur(cur(pr1 ; pr2)) : 1 -> (A -> B -> A)\n");
  CHECK(line({"ccc", "f:A->B, a:A |- f a : B"}) == "<pr1 ; pr2, pr2> ; ev : (1 x (A -> B)) x A -> B\n");
}

TEST_CASE("free variables") {
  CHECK(line({"fv", "lam x. pi_x * x"}) == "[{x}]\n");
  CHECK(line({"fv", "x (pi_z * pi_y * x)"}) == "[{x}, {}, {x}]\n");
}

TEST_CASE("redexes, steps and normalization") {
  CHECK(line({"redexes", "x, y |- <pi_y * id, x/z> * lam x. z"}) ==
        "0  Abs @ root\n1  IdR @ clos-sub.cons-sub\n");
  CHECK(line({"step", "x |- id * x"}) == "x |- x\n");
  CHECK(run({"step", "x |- x"}).code == 2);
  CHECK(line({"normalize", "--infer-context", "(lam x. x) y"}) ==
        "   y |- (lam x. x) y\n"
        "-> y |- <id, y/x> * x    [Beta @ root]\n"
        "-> y |- y    [ConsVar @ root]\n"
        "normal form after 2 steps\n");
  nlohmann::json j = nlohmann::json::parse(line({"normalize", "--calculus", "spa", "--json", "x |- id * x"}));
  CHECK(j["status"] == "normal_form");
  CHECK(j["steps"][0]["rule"] == "IdVar");
  Outcome omega = run({"normalize", "--max-steps", "5", "|- (lam x. x x)(lam x. x x)"});
  CHECK(omega.code == 0);
  CHECK(omega.out.find("budget exhausted") != std::string::npos);
}

TEST_CASE("translations and equivalences") {
  CHECK(line({"translate", "x, y |- pi_y * x"}) == "#2\n");
  CHECK(line({"translate", "--ext", "x, y |- pi_y * x"}) == "2 |- p * #1\n");
  CHECK(line({"translate", "--sigma", "x, y |- <pi_y, y/z> * z"}) == "1\n");
  CHECK(run({"translate", "x |- y"}).code == 1);
  Outcome t = run({"alpha-eq", "x,y |- pi_y * x", "x,x |- pi_x * x"});
  CHECK(t.code == 0);
  CHECK(t.out == "true\n");
  Outcome f = run({"alpha-eq", "x,y |- x", "x,y |- pi_y * x"});
  CHECK(f.code == 1);
  CHECK(f.out == "false\n");
  CHECK(run({"simeq", "x,y |- x", "x,y |- pi_y * x"}).code == 0);
}

TEST_CASE("generation is reproducible") {
  std::string a = line({"gen", "--seed", "3", "--count", "2"});
  CHECK(a == line({"gen", "--seed", "3", "--count", "2"}));
  CHECK(a == "x, y |- lam y z z. x\ny, y, x |- y (y x y)\n");
}

TEST_CASE("termination and corpus reports") {
  nlohmann::json t = nlohmann::json::parse(line({"termination", "--label-bound", "2"}));
  CHECK(t["rules_checked"] == 21);
  CHECK(t["failures"].empty());
  nlohmann::json g = nlohmann::json::parse(line({"corpus", "golden"}));
  CHECK(g["passed"] == true);
  CHECK(g["cases"] == 4);
}
