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

// Free variables by level.
//
// A free occurrence of a sits at level i when i-1 shifts pi separate it
// from the binder that would capture it. FV(M) is the sequence
// <FV_1(M), FV_2(M), ...>, almost everywhere empty:
//
//   FV(a)        = <{a}>
//   FV(M N)      = FV(M) u FV(N)
//   FV(lam a. M) = O_lam_a(FV(M))      O_lam_a<A1, A2, ...> = <(A1 \ {a}) u A2, A3, ...>
//   FV(s * M)    = O_s(FV(M))
//
//   O_id = identity, O_pi<A1, ...> = <{}, A1, ...>, O_(s*q) = O_s . O_q,
//   O_<s, N/a>(A) = O_s(O_lam_a(A)) u FV(N)

#ifndef LAMPI_FREEVARS_HPP_
#define LAMPI_FREEVARS_HPP_

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "lampi/ast.hpp"

namespace lampi {

class FVSeq {
 public:
  using Level = std::set<Var>;

  FVSeq() = default;
  /// Levels in order, level 1 first. Trailing empty levels are dropped.
  explicit FVSeq(std::vector<Level> levels);
  static FVSeq single(const Var& v);

  const std::vector<Level>& levels() const { return levels_; }
  /// 1-based; levels past the stored prefix are empty.
  const Level& level(std::size_t i) const;
  /// Number of stored levels; the last stored level is never empty.
  std::size_t length() const { return levels_.size(); }
  bool empty() const { return levels_.empty(); }

  FVSeq unite(const FVSeq& other) const;
  /// O_pi.
  FVSeq shifted() const;
  /// O_lam_a.
  FVSeq bound(const Var& a) const;

  friend bool operator==(const FVSeq&, const FVSeq&) = default;

 private:
  void trim();
  std::vector<Level> levels_;
};

FVSeq fv_term(const Term& m);
FVSeq apply_O(const Subst& s, const FVSeq& a);
/// O_s applied to the everywhere-empty sequence.
FVSeq fv_subst(const Subst& s);
/// FV(lam G. M).
FVSeq fv_judgement(const TermJ& j);

/// A_i is a subset of B_i for every level i.
bool seq_subseteq(const FVSeq& a, const FVSeq& b);
/// A_i is a subset of the union of B_j over j >= i, for every level i.
bool seq_sqsubseteq(const FVSeq& a, const FVSeq& b);
/// Union of all levels.
std::set<Var> support(const FVSeq& a);

/// `[{x}, {}, {x, y}]`, level 1 first.
std::string print(const FVSeq& a);

}  // namespace lampi

#endif  // LAMPI_FREEVARS_HPP_
