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

// Judgement corpora and the property suites run over them.

#ifndef LAMPI_CORPUS_HPP_
#define LAMPI_CORPUS_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lampi/ast.hpp"
#include "lampi/rewrite.hpp"

namespace lampi {

/// Every derivable `ctx |- M` with `ctx` a sequence over `vocab` of length
/// at most `max_ctx` and M of at most `max_size` nodes, binders and cons
/// targets drawn from `vocab`.
std::vector<TermJ> enumerate_term_judgements(std::size_t max_size, const std::vector<Var>& vocab,
                                             std::size_t max_ctx);
/// The same for `ctx |- s |> cod`.
std::vector<SubstJ> enumerate_subst_judgements(std::size_t max_size, const std::vector<Var>& vocab,
                                               std::size_t max_ctx);

/// `count` generated judgements, seeds seed, seed+1, ...; every fourth is a
/// substitution judgement.
std::vector<Judgement> random_judgements(std::uint64_t seed, std::size_t count, std::size_t budget,
                                         const std::vector<Var>& vocab);

/// The free-variable sequence does not grow: FV(lam G. M) for term
/// judgements (and FV(M) when the context is unchanged), O_s on a fixed
/// sample of sequences for substitution judgements.
bool fv_step_ok(const Judgement& before, const Judgement& after);

struct GraphReport {
  std::size_t roots = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  /// Roots whose whole graph was explored.
  std::size_t roots_done = 0;
  bool finite = true;
  bool acyclic = true;
  /// Stopped by the time limit; finite and acyclic then say nothing.
  bool timed_out = false;
  std::size_t fv_steps = 0;
  std::size_t fv_failures = 0;
  /// A judgement on a cycle, or where exploration stopped.
  std::optional<std::string> witness;
};

/// Explores every reduction without Beta from each root: all redexes, with
/// the default fresh binder for renaming steps. Nodes are shared between
/// roots. Exploration stops (finite = false) past `node_cap` nodes, or
/// (timed_out) after `time_limit` if it is nonzero.
GraphReport explore_spa_graph(const std::vector<Judgement>& roots, const RewriteOptions& opt,
                              std::size_t node_cap,
                              std::chrono::milliseconds time_limit = std::chrono::milliseconds(0));

struct SuiteOptions {
  bool extra_rules = false;
  std::uint64_t seed = 0;
  /// Number of cases; 0 selects the suite default.
  std::size_t count = 0;
  /// Generator size budget or enumeration bound; 0 selects the default.
  std::size_t budget = 0;
  /// Longest context in enumerations; 0 selects the default.
  std::size_t context_bound = 0;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::size_t fv_steps = 0;
  std::size_t fv_failures = 0;
  /// The first few failures, and summary facts.
  std::vector<std::string> notes;

  bool passed() const { return failures == 0 && fv_failures == 0; }
};

/// golden, sn, subject-reduction, nf-shape, commuting, confluence,
/// lpi-beta, embedding, q-decrease, roundtrip.
std::vector<std::string_view> suite_names();
/// Nothing if `name` is unknown.
std::optional<SuiteResult> run_suite(std::string_view name, const SuiteOptions& opt = {});
std::string suite_to_json(const SuiteResult& r);

/// Input and expected final judgement of the reference normalizations.
struct GoldenTrace {
  std::string input;
  std::string expected;
};
const std::vector<GoldenTrace>& golden_traces();

}  // namespace lampi

#endif  // LAMPI_CORPUS_HPP_
