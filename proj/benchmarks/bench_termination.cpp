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

#include "lampi/rewrite.hpp"
#include "lampi/syntax.hpp"
#include "lampi/termination.hpp"
#include "lampi/wellformed.hpp"

namespace {

using namespace lampi;

void BM_CheckQDecrease(benchmark::State& state) {
  auto bound = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_q_decrease(bound));
}
BENCHMARK(BM_CheckQDecrease)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_EmbedStep(benchmark::State& state) {
  // One random walk of substitution steps, replayed as labelled derivations.
  RewriteOptions ro;
  ro.beta = false;
  std::vector<std::pair<Term, Redex>> steps;
  for (std::uint64_t seed = 0; steps.size() < 200; ++seed) {
    TermJ j = generate(seed, 10, default_vocabulary());
    Term m = lambda_closure(j.ctx, j.term);
    for (int k = 0; k < 20; ++k) {
      std::vector<Redex> rs = redexes(Expr{m}, ro);
      if (rs.empty()) break;
      const Redex& r = rs[seed % rs.size()];
      steps.emplace_back(m, r);
      m = std::get<Term>(step(Expr{m}, r, ro));
    }
  }
  for (auto _ : state) {
    for (const auto& [m, r] : steps) benchmark::DoNotOptimize(embed_step(m, r));
  }
  state.SetItemsProcessed(state.iterations() * steps.size());
}
BENCHMARK(BM_EmbedStep);

}  // namespace

BENCHMARK_MAIN();
