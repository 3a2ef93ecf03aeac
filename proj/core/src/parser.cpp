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

#include "parser.hpp"

#include <cctype>
#include <utility>

#include "lampi/syntax.hpp"

namespace lampi::detail {
namespace {

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (true) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i == s.size()) break;
    std::size_t start = i;
    char c = s[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && word_char(s[i])) ++i;
      std::string w(s.substr(start, i - start));
      if (std::isupper(static_cast<unsigned char>(w[0]))) {
        out.push_back({Tok::Upper, w, start});
      } else if (w == "lam") {
        out.push_back({Tok::Lam, w, start});
      } else if (w == "id") {
        out.push_back({Tok::Id, w, start});
      } else if (w.rfind("pi_", 0) == 0) {
        out.push_back({Tok::Pi, w.substr(3), start});
      } else {
        out.push_back({Tok::Ident, w, start});
      }
      continue;
    }
    auto two = [&](char next) { return i + 1 < s.size() && s[i + 1] == next; };
    Tok k;
    std::size_t len = 1;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '<': k = Tok::LAngle; break;
      case '>': k = Tok::RAngle; break;
      case ',': k = Tok::Comma; break;
      case '/': k = Tok::Slash; break;
      case '.': k = Tok::Dot; break;
      case '*': k = Tok::Star; break;
      case ':': k = Tok::Colon; break;
      case '-':
        if (!two('>')) throw ParseError(start, {"'->'"}, std::string(1, c));
        k = Tok::Arrow;
        len = 2;
        break;
      case '|':
        if (two('-')) {
          k = Tok::Turnstile;
        } else if (two('>')) {
          k = Tok::Triangle;
        } else {
          throw ParseError(start, {"'|-'", "'|>'"}, std::string(1, c));
        }
        len = 2;
        break;
      default:
        throw ParseError(start, {"token"}, std::string(1, c));
    }
    out.push_back({k, std::string(s.substr(start, len)), start});
    i += len;
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

}  // namespace

std::string token_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "variable";
    case Tok::Upper: return "type name";
    case Tok::Lam: return "'lam'";
    case Tok::Id: return "'id'";
    case Tok::Pi: return "'pi_<var>'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LAngle: return "'<'";
    case Tok::RAngle: return "'>'";
    case Tok::Comma: return "','";
    case Tok::Slash: return "'/'";
    case Tok::Dot: return "'.'";
    case Tok::Star: return "'*'";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'->'";
    case Tok::Turnstile: return "'|-'";
    case Tok::Triangle: return "'|>'";
    case Tok::End: return "end of input";
  }
  return "?";
}

Parser::Parser(std::string_view text) : tokens_(lex(text)) {}

void Parser::fail(std::vector<std::string> expected) const {
  const Token& t = peek();
  throw ParseError(t.offset, std::move(expected), t.kind == Tok::End ? "end of input" : t.text);
}

void Parser::expect(Tok k) {
  if (!at(k)) fail({token_name(k)});
  advance();
}

void Parser::finish() {
  if (!at(Tok::End)) fail({"end of input"});
}

Var Parser::var() {
  if (!at(Tok::Ident) || !is_valid_var_name(peek().text)) fail({"variable"});
  Var v(peek().text);
  advance();
  return v;
}

Type Parser::type() {
  Type dom;
  if (at(Tok::Upper)) {
    dom = Type::base(peek().text);
    advance();
  } else if (at(Tok::LParen)) {
    advance();
    dom = type();
    expect(Tok::RParen);
  } else {
    fail({"type name", "'('"});
  }
  if (at(Tok::Arrow)) {
    advance();
    return Type::arrow(dom, type());
  }
  return dom;
}

bool Parser::at_term_atom() const { return at(Tok::Ident) || at(Tok::LParen); }

Expr Parser::primary() {
  const Token& t = peek();
  switch (t.kind) {
    case Tok::Ident:
      return Term::var(var());
    case Tok::Id:
      advance();
      return Subst::id();
    case Tok::Pi: {
      if (!is_valid_var_name(t.text)) fail({"'pi_<var>'"});
      Var v(t.text);
      advance();
      return Subst::pi(std::move(v));
    }
    case Tok::LAngle: {
      advance();
      Subst s = subst();
      if (!at(Tok::Comma)) fail({"','"});
      while (at(Tok::Comma)) {
        advance();
        Term n = term();
        expect(Tok::Slash);
        Var a = var();
        s = Subst::cons(std::move(s), std::move(n), std::move(a));
      }
      expect(Tok::RAngle);
      return s;
    }
    case Tok::LParen: {
      advance();
      Expr e = expr();
      expect(Tok::RParen);
      return e;
    }
    default:
      fail({"variable", "'id'", "'pi_<var>'", "'<'", "'('", "'lam'"});
  }
}

Expr Parser::element() {
  Expr head = primary();
  if (auto* t = std::get_if<Term>(&head)) {
    Term acc = *t;
    while (at_term_atom()) {
      std::size_t where = peek().offset;
      Expr arg = primary();
      if (!std::holds_alternative<Term>(arg)) {
        throw ParseError(where, {"term"}, "substitution");
      }
      acc = Term::app(std::move(acc), std::get<Term>(std::move(arg)));
    }
    return acc;
  }
  return head;
}

Expr Parser::expr() {
  if (at(Tok::Lam)) {
    advance();
    std::vector<std::pair<Var, std::optional<Type>>> binders;
    do {
      Var v = var();
      std::optional<Type> ty;
      if (at(Tok::Colon)) {
        advance();
        ty = type();
      }
      binders.emplace_back(std::move(v), std::move(ty));
    } while (at(Tok::Ident));
    expect(Tok::Dot);
    Term body = term();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      body = Term::lam(it->first, std::move(body), it->second);
    }
    return body;
  }
  std::size_t where = peek().offset;
  Expr el = element();
  if (!at(Tok::Star)) return el;
  if (!std::holds_alternative<Subst>(el)) {
    throw ParseError(where, {"substitution before '*'"}, "term");
  }
  advance();
  Expr rest = expr();
  Subst s = std::get<Subst>(std::move(el));
  if (auto* t = std::get_if<Term>(&rest)) return Term::clos(std::move(s), *t);
  return Subst::comp(std::move(s), std::get<Subst>(std::move(rest)));
}

Term Parser::term() {
  std::size_t where = peek().offset;
  Expr e = expr();
  if (auto* t = std::get_if<Term>(&e)) return *t;
  throw ParseError(where, {"term"}, "substitution");
}

Subst Parser::subst() {
  std::size_t where = peek().offset;
  Expr e = expr();
  if (auto* s = std::get_if<Subst>(&e)) return *s;
  throw ParseError(where, {"substitution"}, "term");
}

std::vector<CtxEntry> Parser::context() {
  std::vector<CtxEntry> out;
  if (!at(Tok::Ident)) return out;
  while (true) {
    Var v = var();
    std::optional<Type> ty;
    if (at(Tok::Colon)) {
      advance();
      ty = type();
    }
    out.push_back({std::move(v), std::move(ty)});
    if (!at(Tok::Comma)) break;
    advance();
  }
  return out;
}

}  // namespace lampi::detail
