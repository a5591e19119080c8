#include "pqml/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pqml/errors.hpp"

namespace pqml {
namespace {

enum class Tok { Not, And, Or, Imp, Iff, Dia, Box, LParen, RParen, Dot, Ident, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto two = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t at = i;
    if (two("<->")) {
      out.push_back({Tok::Iff, "<->", at});
      i += 3;
    } else if (two("->")) {
      out.push_back({Tok::Imp, "->", at});
      i += 2;
    } else if (two("<>")) {
      out.push_back({Tok::Dia, "<>", at});
      i += 2;
    } else if (two("[]")) {
      out.push_back({Tok::Box, "[]", at});
      i += 2;
    } else if (c == '~' || c == '!') {
      out.push_back({Tok::Not, "~", at});
      ++i;
    } else if (c == '&') {
      out.push_back({Tok::And, "&", at});
      ++i;
    } else if (c == '|') {
      out.push_back({Tok::Or, "|", at});
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", at});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", at});
      ++i;
    } else if (c == '.') {
      out.push_back({Tok::Dot, ".", at});
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), at});
      i = j;
    } else {
      throw SyntaxError(std::string("unknown token '") + c + "'", at);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

std::optional<std::uint32_t> explicit_index(const std::string& id) {
  if (id.size() < 2 || id[0] != 'p') return std::nullopt;
  std::uint64_t v = 0;
  for (std::size_t i = 1; i < id.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(id[i]))) return std::nullopt;
    v = v * 10 + static_cast<std::uint64_t>(id[i] - '0');
    if (v > 0xFFFFFFFFull) return std::nullopt;
  }
  return static_cast<std::uint32_t>(v);
}

bool is_keyword(const std::string& id) {
  return id == "E" || id == "A" || id == "true" || id == "false";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {
    std::set<std::uint32_t> taken;
    for (const auto& t : toks_)
      if (t.kind == Tok::Ident)
        if (auto ix = explicit_index(t.text)) taken.insert(*ix);
    std::uint32_t next = 0;
    for (const auto& t : toks_) {
      if (t.kind != Tok::Ident || is_keyword(t.text) || explicit_index(t.text) || names_.count(t.text))
        continue;
      while (taken.count(next)) ++next;
      names_[t.text] = next;
      taken.insert(next);
    }
  }

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().pos); }

  Formula formula() { return iff(); }

  Formula iff() {
    Formula f = imp();
    while (accept(Tok::Iff)) f = Formula::iff(f, imp());
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (accept(Tok::Imp)) return Formula::implies(f, imp());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (accept(Tok::Or)) f = Formula::disj(f, conj());
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (accept(Tok::And)) f = Formula::conj(f, unary());
    return f;
  }

  Var variable() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_keyword(t.text)) fail("expected a variable");
    ++pos_;
    if (auto ix = explicit_index(t.text)) return Var{*ix};
    return Var{names_.at(t.text)};
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        ++pos_;
        return Formula::negate(unary());
      case Tok::Dia:
        ++pos_;
        return Formula::dia(unary());
      case Tok::Box:
        ++pos_;
        return Formula::box(unary());
      case Tok::Ident:
        if (t.text == "E" || t.text == "A") {
          const bool universal = t.text == "A";
          ++pos_;
          Var v = variable();
          if (!accept(Tok::Dot)) fail("expected '.' after quantified variable");
          Formula body = formula();
          return universal ? Formula::forall(v, body) : Formula::exists(v, body);
        }
        return atom();
      default:
        return atom();
    }
  }

  Formula atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      ++pos_;
      Formula f = formula();
      if (!accept(Tok::RParen)) fail("expected ')'");
      return f;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "true") {
        ++pos_;
        return Formula::top();
      }
      if (t.text == "false") {
        ++pos_;
        return Formula::bottom();
      }
      return Formula::atom(variable());
    }
    if (t.kind == Tok::End) fail("unexpected end of input");
    fail("unexpected '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, std::uint32_t> names_;
};

// Precedence levels; a larger number binds tighter.
constexpr int kTop = 0, kIff = 1, kImp = 2, kOr = 3, kAnd = 4, kUnary = 5;

// Sugar recognizers over the primitive AST.
bool match_box(const Formula& f, Formula& body) {
  if (f.op() == Op::Not && f.child().op() == Op::Dia && f.child().child().op() == Op::Not) {
    body = f.child().child().child();
    return true;
  }
  return false;
}

bool match_forall(const Formula& f, Var& v, Formula& body) {
  if (f.op() == Op::Not && f.child().op() == Op::Exists && f.child().child().op() == Op::Not) {
    v = f.child().var();
    body = f.child().child().child();
    return true;
  }
  return false;
}

bool match_and(const Formula& f, Formula& a, Formula& b) {
  if (f.op() == Op::Not && f.child().op() == Op::Or && f.child().lhs().op() == Op::Not &&
      f.child().rhs().op() == Op::Not) {
    a = f.child().lhs().child();
    b = f.child().rhs().child();
    return true;
  }
  return false;
}

bool prints_as_sugar(const Formula& f) {
  Formula a, b;
  Var v;
  return match_box(f, a) || match_forall(f, v, a) || match_and(f, a, b);
}

bool match_implies(const Formula& f, Formula& a, Formula& b) {
  if (f.op() == Op::Or && f.lhs().op() == Op::Not && !prints_as_sugar(f.lhs())) {
    a = f.lhs().child();
    b = f.rhs();
    return true;
  }
  return false;
}

bool match_iff(const Formula& f, Formula& a, Formula& b) {
  Formula l, r, a1, b1, a2, b2;
  if (!match_and(f, l, r)) return false;
  if (!match_implies(l, a1, b1) || !match_implies(r, a2, b2)) return false;
  if (!(a1 == b2 && b1 == a2)) return false;
  a = a1;
  b = b1;
  return true;
}

void emit(const Formula& f, int ctx, std::string& out);

void emit_binary(const Formula& a, const Formula& b, const char* op, int prec, int lctx, int rctx,
                 int ctx, std::string& out) {
  const bool paren = prec < ctx;
  if (paren) out += '(';
  emit(a, lctx, out);
  out += ' ';
  out += op;
  out += ' ';
  emit(b, rctx, out);
  if (paren) out += ')';
}

void emit_quantifier(const char* q, Var v, const Formula& body, int ctx, std::string& out) {
  const bool paren = ctx > kTop;
  if (paren) out += '(';
  out += q;
  out += ' ';
  out += v.name();
  out += ". ";
  emit(body, kTop, out);
  if (paren) out += ')';
}

void emit(const Formula& f, int ctx, std::string& out) {
  Formula a, b;
  Var v;
  if (match_iff(f, a, b)) return emit_binary(a, b, "<->", kIff, kIff, kImp, ctx, out);
  if (match_and(f, a, b)) return emit_binary(a, b, "&", kAnd, kAnd, kUnary, ctx, out);
  if (match_box(f, a)) {
    out += "[]";
    return emit(a, kUnary, out);
  }
  if (match_forall(f, v, a)) return emit_quantifier("A", v, a, ctx, out);
  if (match_implies(f, a, b)) return emit_binary(a, b, "->", kImp, kOr, kImp, ctx, out);
  switch (f.op()) {
    case Op::Top:
      out += "true";
      return;
    case Op::Bottom:
      out += "false";
      return;
    case Op::Atom:
      out += f.var().name();
      return;
    case Op::Not:
      out += '~';
      return emit(f.child(), kUnary, out);
    case Op::Dia:
      out += "<>";
      return emit(f.child(), kUnary, out);
    case Op::Or:
      return emit_binary(f.lhs(), f.rhs(), "|", kOr, kOr, kAnd, ctx, out);
    case Op::Exists:
      return emit_quantifier("E", f.var(), f.child(), ctx, out);
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

std::string print(const Formula& f) {
  std::string out;
  emit(f, kTop, out);
  return out;
}

}  // namespace pqml
