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
#include "lampi/nameless.hpp"
#include "lampi/syntax.hpp"

namespace {

using namespace lampi;

const std::vector<Judgement>& corpus() {
  static const std::vector<Judgement> js = random_judgements(2, 200, 12, default_vocabulary());
  return js;
}

void BM_Translate(benchmark::State& state) {
  for (auto _ : state) {
    for (const Judgement& j : corpus()) benchmark::DoNotOptimize(translate(j));
  }
  state.SetItemsProcessed(state.iterations() * corpus().size());
}
BENCHMARK(BM_Translate);

void BM_SigmaNormalize(benchmark::State& state) {
  std::vector<NamelessExpr> us;
  for (const Judgement& j : corpus()) us.push_back(translate(j));
  auto strategy = state.range(0) == 0 ? SigmaStrategy::LeftmostOutermost : SigmaStrategy::RightmostInnermost;
  for (auto _ : state) {
    for (const NamelessExpr& u : us) {
      if (const auto* t = std::get_if<NamelessTerm>(&u)) {
        benchmark::DoNotOptimize(sigma_normalize(*t, strategy));
      } else {
        benchmark::DoNotOptimize(sigma_normalize(std::get<NamelessSubst>(u), strategy));
      }
    }
  }
  state.SetItemsProcessed(state.iterations() * us.size());
}
BENCHMARK(BM_SigmaNormalize)->Arg(0)->Arg(1);

void BM_AlphaEq(benchmark::State& state) {
  const auto& js = corpus();
  for (auto _ : state) {
    for (std::size_t i = 0; i + 1 < js.size(); ++i) benchmark::DoNotOptimize(alpha_eq(js[i], js[i]));
  }
  state.SetItemsProcessed(state.iterations() * (js.size() - 1));
}
BENCHMARK(BM_AlphaEq);

void BM_BetaNormalizePure(benchmark::State& state) {
  NamelessTerm u = std::get<NamelessTerm>(
      translate(parse_judgement("|- (lam f x. f (f (f x))) (lam f x. f (f x)) (lam y. y)")));
  for (auto _ : state) benchmark::DoNotOptimize(beta_normalize_pure(u, 10000));
}
BENCHMARK(BM_BetaNormalizePure);

}  // namespace

BENCHMARK_MAIN();
