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

#include "lampi/freevars.hpp"

#include <algorithm>
#include <utility>

#include "lampi/wellformed.hpp"

namespace lampi {

FVSeq::FVSeq(std::vector<Level> levels) : levels_(std::move(levels)) { trim(); }

FVSeq FVSeq::single(const Var& v) { return FVSeq({Level{v}}); }

void FVSeq::trim() {
  while (!levels_.empty() && levels_.back().empty()) levels_.pop_back();
}

const FVSeq::Level& FVSeq::level(std::size_t i) const {
  static const Level kEmpty;
  if (i == 0 || i > levels_.size()) return kEmpty;
  return levels_[i - 1];
}

FVSeq FVSeq::unite(const FVSeq& other) const {
  std::vector<Level> out = levels_;
  if (out.size() < other.levels_.size()) out.resize(other.levels_.size());
  for (std::size_t i = 0; i < other.levels_.size(); ++i) {
    out[i].insert(other.levels_[i].begin(), other.levels_[i].end());
  }
  return FVSeq(std::move(out));
}

FVSeq FVSeq::shifted() const {
  if (levels_.empty()) return {};
  std::vector<Level> out;
  out.reserve(levels_.size() + 1);
  out.emplace_back();
  out.insert(out.end(), levels_.begin(), levels_.end());
  return FVSeq(std::move(out));
}

FVSeq FVSeq::bound(const Var& a) const {
  if (levels_.empty()) return {};
  std::vector<Level> out(levels_.begin() + 1, levels_.end());
  Level first = levels_[0];
  first.erase(a);
  if (out.empty()) {
    out.push_back(std::move(first));
  } else {
    out[0].insert(first.begin(), first.end());
  }
  return FVSeq(std::move(out));
}

FVSeq fv_term(const Term& m) {
  switch (m.kind()) {
    case Term::Kind::Var:
      return FVSeq::single(m.name());
    case Term::Kind::App:
      return fv_term(m.fun()).unite(fv_term(m.arg()));
    case Term::Kind::Lam:
      return fv_term(m.body()).bound(m.name());
    case Term::Kind::Clos:
      return apply_O(m.sub(), fv_term(m.body()));
  }
  return {};
}

FVSeq apply_O(const Subst& s, const FVSeq& a) {
  switch (s.kind()) {
    case Subst::Kind::Id:
      return a;
    case Subst::Kind::Pi:
      return a.shifted();
    case Subst::Kind::Cons:
      return apply_O(s.rest(), a.bound(s.name())).unite(fv_term(s.term()));
    case Subst::Kind::Comp:
      return apply_O(s.left(), apply_O(s.right(), a));
  }
  return a;
}

FVSeq fv_subst(const Subst& s) { return apply_O(s, FVSeq{}); }

FVSeq fv_judgement(const TermJ& j) { return fv_term(lambda_closure(j.ctx, j.term)); }

bool seq_subseteq(const FVSeq& a, const FVSeq& b) {
  if (a.length() > b.length()) return false;
  for (std::size_t i = 1; i <= a.length(); ++i) {
    const auto& ai = a.level(i);
    const auto& bi = b.level(i);
    if (!std::includes(bi.begin(), bi.end(), ai.begin(), ai.end())) return false;
  }
  return true;
}

bool seq_sqsubseteq(const FVSeq& a, const FVSeq& b) {
  // Suffix unions of b, computed from the top level down.
  std::set<Var> suffix;
  for (std::size_t i = std::max(a.length(), b.length()); i >= 1; --i) {
    const auto& bi = b.level(i);
    suffix.insert(bi.begin(), bi.end());
    const auto& ai = a.level(i);
    if (!std::includes(suffix.begin(), suffix.end(), ai.begin(), ai.end())) return false;
  }
  return true;
}

std::set<Var> support(const FVSeq& a) {
  std::set<Var> out;
  for (const auto& l : a.levels()) out.insert(l.begin(), l.end());
  return out;
}

std::string print(const FVSeq& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.levels().size(); ++i) {
    if (i) out += ", ";
    out += '{';
    bool first = true;
    for (const Var& v : a.levels()[i]) {
      if (!first) out += ", ";
      out += v.name();
      first = false;
    }
    out += '}';
  }
  return out + "]";
}

}  // namespace lampi
