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

#include <benchmark/benchmark.h>

#include <vector>

#include "lampi/corpus.hpp"
#include "lampi/freevars.hpp"
#include "lampi/rewrite.hpp"
#include "lampi/syntax.hpp"
#include "lampi/wellformed.hpp"

namespace {

using namespace lampi;

const std::vector<Judgement>& corpus(std::size_t budget) {
  static std::vector<std::vector<Judgement>> cache(32);
  if (cache[budget].empty()) cache[budget] = random_judgements(1, 200, budget, default_vocabulary());
  return cache[budget];
}

void BM_Parse(benchmark::State& state) {
  std::vector<std::string> texts;
  for (const Judgement& j : corpus(12)) texts.push_back(print(j));
  for (auto _ : state) {
    for (const std::string& t : texts) benchmark::DoNotOptimize(parse_judgement(t));
  }
  state.SetItemsProcessed(state.iterations() * texts.size());
}
BENCHMARK(BM_Parse);

void BM_Derive(benchmark::State& state) {
  const auto& js = corpus(12);
  for (auto _ : state) {
    for (const Judgement& j : js) benchmark::DoNotOptimize(derive(j));
  }
  state.SetItemsProcessed(state.iterations() * js.size());
}
BENCHMARK(BM_Derive);

void BM_FreeVariables(benchmark::State& state) {
  std::vector<Term> terms;
  for (const Judgement& j : corpus(12))
    if (const auto* t = std::get_if<TermJ>(&j)) terms.push_back(t->term);
  for (auto _ : state) {
    for (const Term& m : terms) benchmark::DoNotOptimize(fv_term(m));
  }
  state.SetItemsProcessed(state.iterations() * terms.size());
}
BENCHMARK(BM_FreeVariables);

void BM_NormalizeSpa(benchmark::State& state) {
  const auto& js = corpus(static_cast<std::size_t>(state.range(0)));
  NormalizeOptions opt;
  opt.rewrite.beta = false;
  for (auto _ : state) {
    for (const Judgement& j : js) benchmark::DoNotOptimize(normalize_spa(j, opt));
  }
  state.SetItemsProcessed(state.iterations() * js.size());
}
BENCHMARK(BM_NormalizeSpa)->Arg(6)->Arg(10)->Arg(14);

void BM_NormalizeLpiCombinators(benchmark::State& state) {
  // S K K applied to S K I, and two Church-style compositions.
  const std::vector<Judgement> js = {
      parse_judgement("|- (lam x y z. x z (y z)) (lam x y. x) (lam x y. x) ((lam x y z. x z (y z)) (lam x y. x) (lam x. x))"),
      parse_judgement("|- (lam f x. f (f x)) (lam f x. f (f x))"),
      parse_judgement("|- (lam f x. f (f (f x))) (lam f x. f (f x)) (lam y. y)"),
  };
  for (auto _ : state) {
    for (const Judgement& j : js) benchmark::DoNotOptimize(normalize_lpi(j));
  }
  state.SetItemsProcessed(state.iterations() * js.size());
}
BENCHMARK(BM_NormalizeLpiCombinators);

void BM_Redexes(benchmark::State& state) {
  const auto& js = corpus(14);
  for (auto _ : state) {
    for (const Judgement& j : js) benchmark::DoNotOptimize(redexes(j));
  }
  state.SetItemsProcessed(state.iterations() * js.size());
}
BENCHMARK(BM_Redexes);

}  // namespace

BENCHMARK_MAIN();
