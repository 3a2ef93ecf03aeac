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

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <functional>
#include <json.hpp>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lampi/corpus.hpp"
#include "lampi/freevars.hpp"
#include "lampi/nameless.hpp"
#include "lampi/rewrite.hpp"
#include "lampi/syntax.hpp"
#include "lampi/termination.hpp"
#include "lampi/typing.hpp"
#include "lampi/wellformed.hpp"

namespace lampi::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;

// Reported with exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reported with exit status 1.
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  bool extra_rules = false;
  std::size_t max_steps = 10000;
  std::string strategy = "leftmost";
  std::uint64_t seed = 0;
  std::string vocab = "x,y,z";
  bool json = false;
  bool infer_context = false;
};

std::vector<Var> parse_vocab(const std::string& text) {
  std::vector<Var> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    if (!is_valid_var_name(item)) throw UsageError("invalid vocabulary entry '" + item + "'");
    out.emplace_back(item);
  }
  if (out.empty()) throw UsageError("the vocabulary is empty");
  return out;
}

Parsed parse_any(const std::string& text) {
  if (text.find("|-") != std::string::npos) return parse(text, Category::Judgement);
  try {
    return parse(text, Category::Term);
  } catch (const ParseError&) {
    try {
      return parse(text, Category::Subst);
    } catch (const ParseError&) {
    }
    throw;
  }
}

void collect_vars(const Term& m, std::vector<Var>& out);

void collect_vars(const Subst& s, std::vector<Var>& out) {
  switch (s.kind()) {
    case Subst::Kind::Cons:
      collect_vars(s.rest(), out);
      collect_vars(s.term(), out);
      break;
    case Subst::Kind::Comp:
      collect_vars(s.left(), out);
      collect_vars(s.right(), out);
      break;
    default:
      break;
  }
}

void collect_vars(const Term& m, std::vector<Var>& out) {
  switch (m.kind()) {
    case Term::Kind::Var:
      out.push_back(m.name());
      break;
    case Term::Kind::App:
      collect_vars(m.fun(), out);
      collect_vars(m.arg(), out);
      break;
    case Term::Kind::Lam:
      collect_vars(m.body(), out);
      break;
    case Term::Kind::Clos:
      collect_vars(m.sub(), out);
      collect_vars(m.body(), out);
      break;
  }
}

// The free variables of `m`, each once, ordered by first occurrence.
Judgement with_inferred_context(const Term& m) {
  std::set<Var> free = support(fv_term(m));
  std::vector<Var> order;
  std::vector<Var> seen;
  collect_vars(m, seen);
  for (const Var& v : seen) {
    if (free.count(v) && std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  }
  Judgement j = TermJ{Context(order), m};
  if (!is_derivable(j)) {
    throw Refusal("cannot infer a context for " + print(m) +
                  ": some variable occurs free at a level above 1");
  }
  return j;
}

Judgement read_judgement(const std::string& text, const Config& cfg) {
  Parsed p = parse_any(text);
  if (auto* j = std::get_if<Judgement>(&p)) return *j;
  if (auto* t = std::get_if<Term>(&p); t && cfg.infer_context) return with_inferred_context(*t);
  throw UsageError("expected a judgement `ctx |- ...`" +
                   std::string(std::holds_alternative<Term>(p) ? " (or pass --infer-context)" : ""));
}

Judgement derivable_judgement(const std::string& text, const Config& cfg) {
  Judgement j = read_judgement(text, cfg);
  Checked<Derivation> d = derive(j);
  if (auto* nd = std::get_if<NotDerivable>(&d)) throw Refusal(nd->message());
  return j;
}

RewriteOptions rewrite_options(const Config& cfg, bool beta) {
  RewriteOptions o;
  o.beta = beta;
  o.extra_rules = cfg.extra_rules;
  o.vocabulary = parse_vocab(cfg.vocab);
  return o;
}

std::string category_name(const Parsed& p) {
  switch (p.index()) {
    case 0: return "term";
    case 1: return "substitution";
    case 2: return "context";
    default: return "judgement";
  }
}

std::string print_parsed(const Parsed& p) {
  return std::visit([](const auto& v) { return print(v); }, p);
}

void print_derivation(std::ostream& out, const Derivation& d, int depth) {
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << wf_rule_name(d.rule) << "  "
      << print(d.root) << "\n";
  for (const Derivation& p : d.premises) print_derivation(out, p, depth + 1);
}

json derivation_json(const Derivation& d) {
  json j;
  j["judgement"] = print(d.root);
  j["rule"] = std::string(wf_rule_name(d.rule));
  json ps = json::array();
  for (const Derivation& p : d.premises) ps.push_back(derivation_json(p));
  j["premises"] = std::move(ps);
  return j;
}

void print_typed(std::ostream& out, const TypedDerivation& d, int depth) {
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << wf_rule_name(d.rule) << "  "
      << print(d.root) << "\n";
  for (const TypedDerivation& p : d.premises) print_typed(out, p, depth + 1);
}

json path_json(const Position& p) {
  json a = json::array();
  if (p.ctx_index) {
    a.push_back("ctx-index(" + std::to_string(*p.ctx_index) + ")");
  } else {
    for (Selector s : p.path) a.push_back(std::string(selector_name(s)));
  }
  return a;
}

json redex_json(const Redex& r) {
  json j;
  j["rule"] = std::string(rule_name(r.rule));
  j["position"] = path_json(r.position);
  if (r.fresh) j["fresh"] = r.fresh->name();
  return j;
}

std::string redex_text(const Redex& r) {
  std::string s = std::string(rule_name(r.rule)) + " @ " + position_to_string(r.position);
  if (r.fresh) s += " fresh " + r.fresh->name();
  return s;
}

Strategy read_strategy(const std::string& s) {
  std::optional<Strategy> st = strategy_from_name(s);
  if (!st) throw UsageError("unknown strategy '" + s + "'");
  return *st;
}

NamelessExpr sigma_nf(const NamelessExpr& e) {
  if (auto* t = std::get_if<NamelessTerm>(&e)) return sigma_normalize(*t);
  return sigma_normalize(std::get<NamelessSubst>(e));
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LAMPI_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("LAMPI_SEED is not a number: ") + env);
    }
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit substitutions with named variables"};
  app.name("lampi");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Config cfg;
  std::function<int()> action;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", cfg.json, "Machine-readable output");
    sub->add_flag("--infer-context", cfg.infer_context,
                  "Accept a bare term; the context is its free variables in order of occurrence");
  };
  auto add_rewrite = [&](CLI::App* sub) {
    sub->add_flag("--extra-rules", cfg.extra_rules, "Enable StrongAbs, IdTerm and IdSubst");
    sub->add_option("--vocab", cfg.vocab, "Preferred fresh names, comma separated")
        ->capture_default_str();
  };

  std::string text;
  std::string text2;
  std::string category = "auto";

  // parse
  CLI::App* c_parse = app.add_subcommand("parse", "Parse and print in canonical form");
  c_parse->add_option("text", text, "Input")->required();
  c_parse->add_option("--category", category, "term, subst, context, judgement or auto")
      ->check(CLI::IsMember({"auto", "term", "subst", "context", "judgement"}));
  c_parse->add_flag("--json", cfg.json, "Machine-readable output");
  c_parse->callback([&] {
    action = [&] {
      Parsed p;
      if (category == "auto") {
        p = parse_any(text);
      } else {
        static const std::map<std::string, Category> kCats = {{"term", Category::Term},
                                                             {"subst", Category::Subst},
                                                             {"context", Category::Context},
                                                             {"judgement", Category::Judgement}};
        p = parse(text, kCats.at(category));
      }
      if (cfg.json) {
        out << json{{"category", category_name(p)}, {"text", print_parsed(p)}}.dump(2) << "\n";
      } else {
        out << print_parsed(p) << "\n";
      }
      return kOk;
    };
  });

  // check
  CLI::App* c_check = app.add_subcommand("check", "Derive a judgement");
  c_check->add_option("judgement", text, "Judgement")->required();
  add_common(c_check);
  c_check->callback([&] {
    action = [&] {
      Judgement j = read_judgement(text, cfg);
      Checked<Derivation> d = derive(j);
      if (auto* nd = std::get_if<NotDerivable>(&d)) {
        if (cfg.json) {
          out << json{{"derivable", false}, {"reason", nd->message()}}.dump(2) << "\n";
        } else {
          out << nd->message() << "\n";
        }
        return kFalse;
      }
      const Derivation& der = std::get<Derivation>(d);
      if (cfg.json) {
        out << json{{"derivable", true}, {"derivation", derivation_json(der)}}.dump(2) << "\n";
      } else {
        out << "derivable\n";
        print_derivation(out, der, 1);
      }
      return kOk;
    };
  });

  // typecheck
  CLI::App* c_type = app.add_subcommand("typecheck", "Type-check a typed judgement");
  c_type->add_option("judgement", text, "Typed judgement, e.g. 'x:A |- x : A'")->required();
  c_type->callback([&] {
    action = [&] {
      Checked<TypedDerivation> d = typecheck(parse_typed_judgement(text));
      if (auto* nd = std::get_if<NotDerivable>(&d)) {
        out << nd->message() << "\n";
        return kFalse;
      }
      out << "derivable\n";
      print_typed(out, std::get<TypedDerivation>(d), 1);
      return kOk;
    };
  });

  // ccc
  CLI::App* c_ccc = app.add_subcommand("ccc", "Arrow of a typed judgement in a cartesian closed category");
  c_ccc->add_option("judgement", text, "Typed judgement")->required();
  c_ccc->add_flag("--json", cfg.json, "Machine-readable output");
  c_ccc->callback([&] {
    action = [&] {
      TypedJudgement tj = parse_typed_judgement(text);
      Checked<TypedDerivation> d = typecheck(tj);
      if (auto* nd = std::get_if<NotDerivable>(&d)) {
        out << nd->message() << "\n";
        return kFalse;
      }
      std::string arrow = print(ccc_arrow(std::get<TypedDerivation>(d)));
      std::string dom;
      std::string cod;
      if (const auto* t = std::get_if<TTermJ>(&tj)) {
        dom = print(context_object(t->ctx));
        cod = t->type.kind() == Type::Kind::Arrow ? "(" + print(t->type) + ")" : print(t->type);
      } else {
        const auto& s = std::get<TSubstJ>(tj);
        dom = print(context_object(s.ctx));
        cod = print(context_object(s.cod));
      }
      if (cfg.json) {
        out << json{{"arrow", arrow}, {"domain", dom}, {"codomain", cod}}.dump(2) << "\n";
      } else {
        out << arrow << " : " << dom << " -> " << cod << "\n";
      }
      return kOk;
    };
  });

  // fv
  CLI::App* c_fv = app.add_subcommand("fv", "Free-variable levels of a term, substitution or judgement");
  c_fv->add_option("input", text, "Term, substitution or term judgement")->required();
  c_fv->add_flag("--json", cfg.json, "Machine-readable output");
  c_fv->callback([&] {
    action = [&] {
      Parsed p = parse_any(text);
      FVSeq fv;
      if (auto* t = std::get_if<Term>(&p)) {
        fv = fv_term(*t);
      } else if (auto* s = std::get_if<Subst>(&p)) {
        fv = fv_subst(*s);
      } else if (auto* j = std::get_if<Judgement>(&p); j && std::holds_alternative<TermJ>(*j)) {
        fv = fv_judgement(std::get<TermJ>(*j));
      } else {
        throw UsageError("fv takes a term, a substitution or a term judgement");
      }
      if (cfg.json) {
        json levels = json::array();
        for (const auto& level : fv.levels()) {
          json l = json::array();
          for (const Var& v : level) l.push_back(v.name());
          levels.push_back(std::move(l));
        }
        out << levels.dump() << "\n";
      } else {
        out << print(fv) << "\n";
      }
      return kOk;
    };
  });

  // redexes
  CLI::App* c_red = app.add_subcommand("redexes", "List redexes in the order strategies see them");
  c_red->add_option("judgement", text, "Judgement")->required();
  bool no_beta = false;
  c_red->add_flag("--no-beta", no_beta, "Leave out Beta redexes");
  add_common(c_red);
  add_rewrite(c_red);
  c_red->callback([&] {
    action = [&] {
      Judgement j = derivable_judgement(text, cfg);
      std::vector<Redex> rs = redexes(j, rewrite_options(cfg, !no_beta));
      if (cfg.json) {
        json a = json::array();
        for (const Redex& r : rs) a.push_back(redex_json(r));
        out << a.dump(2) << "\n";
      } else {
        for (std::size_t i = 0; i < rs.size(); ++i) out << i << "  " << redex_text(rs[i]) << "\n";
      }
      return kOk;
    };
  });

  // step
  CLI::App* c_step = app.add_subcommand("step", "Contract one redex");
  c_step->add_option("judgement", text, "Judgement")->required();
  std::size_t index = 0;
  c_step->add_option("--index", index, "Position in the redex list")->capture_default_str();
  c_step->add_flag("--no-beta", no_beta, "Leave out Beta redexes");
  add_common(c_step);
  add_rewrite(c_step);
  c_step->callback([&] {
    action = [&] {
      Judgement j = derivable_judgement(text, cfg);
      RewriteOptions ro = rewrite_options(cfg, !no_beta);
      std::vector<Redex> rs = redexes(j, ro);
      if (index >= rs.size()) {
        throw UsageError("redex index " + std::to_string(index) + " out of range (" +
                         std::to_string(rs.size()) + " redexes)");
      }
      Judgement next = step(j, rs[index], ro);
      if (cfg.json) {
        json s = redex_json(rs[index]);
        s["result"] = print(next);
        out << s.dump(2) << "\n";
      } else {
        out << print(next) << "\n";
      }
      return kOk;
    };
  });

  // normalize
  CLI::App* c_norm = app.add_subcommand("normalize", "Reduce to normal form and print the trace");
  c_norm->add_option("judgement", text, "Judgement")->required();
  std::string calculus = "lpi";
  c_norm->add_option("--calculus", calculus, "spa (no Beta) or lpi")
      ->check(CLI::IsMember({"spa", "lpi"}))
      ->capture_default_str();
  c_norm->add_option("--strategy", cfg.strategy, "leftmost, rightmost or random")->capture_default_str();
  c_norm->add_option("--max-steps", cfg.max_steps, "Step budget for lpi")->capture_default_str();
  CLI::Option* seed_opt = c_norm->add_option("--seed", cfg.seed, "Seed for the random strategy");
  add_common(c_norm);
  add_rewrite(c_norm);
  c_norm->callback([&] {
    action = [&] {
      if (!seed_opt->count()) cfg.seed = default_seed();
      Judgement j = derivable_judgement(text, cfg);
      NormalizeOptions no;
      no.rewrite = rewrite_options(cfg, calculus == "lpi");
      no.strategy = read_strategy(cfg.strategy);
      no.seed = cfg.seed;
      no.max_steps = cfg.max_steps;
      Trace t = calculus == "lpi" ? normalize_lpi(j, no) : normalize_spa(j, no);
      if (cfg.json) {
        out << trace_to_json(t) << "\n";
      } else {
        out << "   " << print(t.start) << "\n";
        for (const TraceStep& s : t.steps) {
          out << "-> " << print(s.result) << "    [" << redex_text(s.redex) << "]\n";
        }
        out << (t.status == Trace::Status::NormalForm ? "normal form" : "step budget exhausted")
            << " after " << t.steps.size() << " steps\n";
      }
      return kOk;
    };
  });

  // translate
  CLI::App* c_tr = app.add_subcommand("translate", "Name-free translation of a derivable judgement");
  c_tr->add_option("judgement", text, "Judgement")->required();
  bool ext = false;
  bool sigma = false;
  c_tr->add_flag("--ext", ext, "Context length and variables as atoms, as compared by alpha-eq");
  c_tr->add_flag("--sigma", sigma, "Normalize the substitutions of the result");
  add_common(c_tr);
  c_tr->callback([&] {
    action = [&] {
      Judgement j = derivable_judgement(text, cfg);
      NamelessJudgement nj = ext ? translate_ext(j) : NamelessJudgement{0, translate(j)};
      if (sigma) nj.body = sigma_nf(nj.body);
      std::string s = ext ? print(nj) : print(nj.body);
      if (cfg.json) {
        json o;
        o["translation"] = s;
        if (ext) o["length"] = nj.len;
        out << o.dump(2) << "\n";
      } else {
        out << s << "\n";
      }
      return kOk;
    };
  });

  // alpha-eq, simeq
  auto add_pair = [&](const char* name, const char* help, bool (*rel)(const Judgement&, const Judgement&)) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("first", text, "Judgement")->required();
    c->add_option("second", text2, "Judgement")->required();
    add_common(c);
    c->callback([&, rel] {
      action = [&, rel] {
        Judgement a = derivable_judgement(text, cfg);
        Judgement b = derivable_judgement(text2, cfg);
        bool r = rel(a, b);
        out << (r ? "true" : "false") << "\n";
        return r ? kOk : kFalse;
      };
    });
  };
  add_pair("alpha-eq", "Equal translations and context lengths", alpha_eq);
  add_pair("simeq", "Equal translations", simeq);

  // gen
  CLI::App* c_gen = app.add_subcommand("gen", "Generate random derivable judgements");
  std::size_t size = 7;
  std::size_t count = 1;
  bool gen_subst = false;
  CLI::Option* gen_seed = c_gen->add_option("--seed", cfg.seed, "First seed");
  c_gen->add_option("--size", size, "Node budget")->capture_default_str()->check(CLI::Range(1, 1000));
  c_gen->add_option("--count", count, "Number of judgements")->capture_default_str();
  c_gen->add_option("--vocab", cfg.vocab, "Variable names, comma separated")->capture_default_str();
  c_gen->add_flag("--subst", gen_subst, "Substitution judgements");
  c_gen->add_flag("--json", cfg.json, "Machine-readable output");
  c_gen->callback([&] {
    action = [&] {
      if (!gen_seed->count()) cfg.seed = default_seed();
      std::vector<Var> vocab = parse_vocab(cfg.vocab);
      json a = json::array();
      for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t seed = cfg.seed + i;
        Judgement j = gen_subst ? Judgement{generate_subst(seed, size, vocab)}
                                : Judgement{generate(seed, size, vocab)};
        if (cfg.json) {
          a.push_back(json{{"seed", seed}, {"judgement", print(j)}});
        } else {
          out << print(j) << "\n";
        }
      }
      if (cfg.json) out << a.dump(2) << "\n";
      return kOk;
    };
  });

  // termination
  CLI::App* c_term = app.add_subcommand("termination", "Check that every labelled rule decreases");
  std::size_t label_bound = 3;
  c_term->add_option("--label-bound", label_bound, "Largest label variable value")
      ->capture_default_str()
      ->check(CLI::Range(1, 16));
  c_term->callback([&] {
    action = [&] {
      QReport r = check_q_decrease(label_bound);
      out << report_to_json(r) << "\n";
      return r.failures.empty() ? kOk : kFalse;
    };
  });

  // corpus
  CLI::App* c_corpus = app.add_subcommand("corpus", "Run a named property suite");
  std::string suite;
  std::string names;
  for (std::string_view n : suite_names()) names += (names.empty() ? "" : ", ") + std::string(n);
  c_corpus->add_option("suite", suite, "One of: " + names)->required();
  std::size_t c_count = 0;
  std::size_t c_size = 0;
  CLI::Option* c_seed = c_corpus->add_option("--seed", cfg.seed, "First seed");
  c_corpus->add_option("--count", c_count, "Number of cases (0: suite default)");
  c_corpus->add_option("--size", c_size, "Size budget (0: suite default)");
  std::size_t c_ctx = 0;
  c_corpus->add_option("--context", c_ctx, "Longest enumerated context (0: suite default)");
  c_corpus->add_flag("--extra-rules", cfg.extra_rules, "Enable StrongAbs, IdTerm and IdSubst");
  c_corpus->callback([&] {
    action = [&] {
      if (!c_seed->count()) cfg.seed = default_seed();
      SuiteOptions so;
      so.extra_rules = cfg.extra_rules;
      so.seed = cfg.seed;
      so.count = c_count;
      so.budget = c_size;
      so.context_bound = c_ctx;
      std::optional<SuiteResult> r = run_suite(suite, so);
      if (!r) throw UsageError("unknown suite '" + suite + "'; known: " + names);
      out << suite_to_json(*r) << "\n";
      return r->passed() ? kOk : kFalse;
    };
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) {
      err << app.get_subcommands().front()->help();
    } else {
      err << app.help();
    }
    return kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Refusal& e) {
    err << e.what() << "\n";
    return kFalse;
  } catch (const NotDerivableError& e) {
    err << e.what() << "\n";
    return kFalse;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace lampi::cli
