#include "prefrev/parser.hpp"

#include <cctype>
#include <charconv>
#include <vector>

namespace prefrev {

namespace {

enum class Tok {
  kIdent,
  kInt,
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kComma,
  kDot,
  kColon,
  kEq,
  kNeq,
  kLess,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kIff,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  SourceLocation where;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '\''; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const SourceLocation where{line, col};
    auto emit = [&](Tok kind, std::size_t len) {
      out.push_back({kind, std::string(text.substr(i, len)), where});
      advance(len);
    };
    const bool digit_next = i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]));
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && digit_next)) {
      std::size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      emit(Tok::kInt, j - i);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (true) {
        while (j < text.size() && ident_char(text[j])) ++j;
        // more-rel style identifiers: a hyphen followed by an identifier character, never "->".
        if (j + 1 < text.size() && text[j] == '-' && std::isalnum(static_cast<unsigned char>(text[j + 1]))) {
          ++j;
          continue;
        }
        break;
      }
      emit(Tok::kIdent, j - i);
      continue;
    }
    if (text.substr(i, 3) == "<->") {
      emit(Tok::kIff, 3);
      continue;
    }
    if (text.substr(i, 2) == "->") {
      emit(Tok::kImplies, 2);
      continue;
    }
    if (text.substr(i, 2) == "!=") {
      emit(Tok::kNeq, 2);
      continue;
    }
    switch (c) {
      case '(': emit(Tok::kLParen, 1); continue;
      case ')': emit(Tok::kRParen, 1); continue;
      case '{': emit(Tok::kLBrace, 1); continue;
      case '}': emit(Tok::kRBrace, 1); continue;
      case ',': emit(Tok::kComma, 1); continue;
      case '.': emit(Tok::kDot, 1); continue;
      case ':': emit(Tok::kColon, 1); continue;
      case '=': emit(Tok::kEq, 1); continue;
      case '<': emit(Tok::kLess, 1); continue;
      case '~': emit(Tok::kNot, 1); continue;
      case '&': emit(Tok::kAnd, 1); continue;
      case '|': emit(Tok::kOr, 1); continue;
      default: break;
    }
    throw Error(ErrorCode::kSyntax, std::string("unexpected character '") + c + "'", where);
  }
  out.push_back({Tok::kEnd, "", {line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  TheorySpec source() {
    TheorySpec spec;
    while (peek().kind != Tok::kEnd) statement(spec);
    return spec;
  }

  Formula whole_formula() {
    Formula f = formula();
    expect(Tok::kEnd, "end of input");
    return f;
  }

  Term whole_term() {
    Term t = term();
    expect(Tok::kEnd, "end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  bool at_keyword(std::string_view word) const { return peek().kind == Tok::kIdent && peek().text == word; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorCode::kSyntax, "expected " + expected + ", found " + found, t.where);
  }

  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail(what);
    return next();
  }

  std::string ident(const std::string& what) { return expect(Tok::kIdent, what).text; }

  void statement(TheorySpec& spec) {
    const SourceLocation where = peek().where;
    if (at_keyword("sort")) {
      next();
      SortDecl decl;
      decl.where = where;
      decl.id = ident("sort identifier");
      expect(Tok::kEq, "'='");
      expect(Tok::kLBrace, "'{'");
      if (peek().kind != Tok::kRBrace) {
        do {
          decl.members.push_back(term());
        } while (accept(Tok::kComma));
      }
      expect(Tok::kRBrace, "'}'");
      expect(Tok::kDot, "'.'");
      spec.sorts.push_back(std::move(decl));
      return;
    }
    if (at_keyword("distinct")) {
      next();
      DistinctDecl decl;
      decl.where = where;
      do {
        decl.terms.push_back(term());
      } while (accept(Tok::kComma));
      expect(Tok::kDot, "'.'");
      spec.distinct.push_back(std::move(decl));
      return;
    }
    if (at_keyword("premise") || at_keyword("constraint")) {
      TheoryItem item;
      item.kind = next().text == "premise" ? TheoryItem::Kind::kPremise : TheoryItem::Kind::kConstraint;
      item.where = where;
      item.name = term();
      if (!item.name.is_apply()) {
        throw Error(ErrorCode::kSyntax, "a formula name must be a symbol or a compound term", where);
      }
      expect(Tok::kColon, "':'");
      item.body = formula();
      expect(Tok::kDot, "'.' after formula");
      spec.items.push_back(std::move(item));
      return;
    }
    if (at_keyword("schema")) {
      next();
      TheoryItem item;
      item.kind = TheoryItem::Kind::kSchema;
      item.where = where;
      item.name = Term::constant(ident("schema name"));
      expect(Tok::kLParen, "'('");
      do {
        SchemaParam p;
        p.var = ident("parameter variable");
        expect(Tok::kColon, "':'");
        p.sort = ident("parameter sort");
        item.params.push_back(std::move(p));
      } while (accept(Tok::kComma));
      expect(Tok::kRParen, "')'");
      expect(Tok::kColon, "':'");
      for (const auto& p : item.params) scope_.push_back(p.var);
      item.body = formula();
      scope_.resize(scope_.size() - item.params.size());
      expect(Tok::kDot, "'.' after formula");
      spec.items.push_back(std::move(item));
      return;
    }
    fail("'sort', 'distinct', 'premise', 'constraint' or 'schema'");
  }

  Formula formula() {
    if (at_keyword("forall") || at_keyword("exists")) return quantified();
    return iff();
  }

  Formula quantified() {
    const bool universal = next().text == "forall";
    std::vector<std::pair<std::string, std::string>> binders;
    do {
      std::string var = ident("variable");
      expect(Tok::kColon, "':' and a sort after the variable");
      std::string sort = ident("sort");
      binders.emplace_back(std::move(var), std::move(sort));
    } while (accept(Tok::kComma));
    expect(Tok::kDot, "'.' after the binder");
    for (const auto& b : binders) scope_.push_back(b.first);
    Formula body = formula();
    scope_.resize(scope_.size() - binders.size());
    for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
      body = universal ? Formula::forall(it->first, it->second, std::move(body))
                       : Formula::exists(it->first, it->second, std::move(body));
    }
    return body;
  }

  Formula iff() {
    Formula lhs = implication();
    while (accept(Tok::kIff)) lhs = Formula::equivalence(std::move(lhs), implication());
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::kImplies)) {
      Formula rhs = at_keyword("forall") || at_keyword("exists") ? quantified() : implication();
      return Formula::implication(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (accept(Tok::kOr)) parts.push_back(conjunction());
    return Formula::disjunction(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (accept(Tok::kAnd)) parts.push_back(unary());
    return Formula::conjunction(std::move(parts));
  }

  Formula unary() {
    if (accept(Tok::kNot)) return Formula::negation(unary());
    return primary();
  }

  Formula primary() {
    if (accept(Tok::kLParen)) {
      Formula f = formula();
      expect(Tok::kRParen, "')'");
      return f;
    }
    if (at_keyword("forall") || at_keyword("exists")) return quantified();
    if (at_keyword("true")) {
      next();
      return Formula::top();
    }
    if (at_keyword("false")) {
      next();
      return Formula::bottom();
    }
    if (peek().kind != Tok::kIdent && peek().kind != Tok::kInt) fail("a formula");
    const SourceLocation where = peek().where;
    Term lhs = term();
    if (accept(Tok::kEq)) return Formula::equal(std::move(lhs), term());
    if (accept(Tok::kNeq)) return Formula::negation(Formula::equal(std::move(lhs), term()));
    if (accept(Tok::kLess)) return Formula::less(std::move(lhs), term());
    if (!lhs.is_apply()) throw Error(ErrorCode::kSyntax, "expected an atom, found the term " + lhs.to_string(), where);
    return Formula::predicate(lhs.symbol(), {lhs.args().begin(), lhs.args().end()});
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::kInt) {
      next();
      std::int64_t value = 0;
      const char* first = t.text.data();
      const auto [ptr, ec] = std::from_chars(first, first + t.text.size(), value);
      if (ec != std::errc() || ptr != first + t.text.size()) {
        throw Error(ErrorCode::kSyntax, "integer literal out of range: " + t.text, t.where);
      }
      return Term::integer(value);
    }
    if (t.kind != Tok::kIdent) fail("a term");
    if (t.text == "forall" || t.text == "exists" || t.text == "true" || t.text == "false") fail("a term");
    std::string head = next().text;
    if (accept(Tok::kLParen)) {
      std::vector<Term> args;
      do {
        args.push_back(term());
      } while (accept(Tok::kComma));
      expect(Tok::kRParen, "')'");
      return Term::apply(std::move(head), std::move(args));
    }
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (*it == head) return Term::variable(std::move(head));
    }
    return Term::constant(std::move(head));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

}  // namespace

TheorySpec parse_source(std::string_view text) { return Parser(text).source(); }

Formula parse_formula(std::string_view text) { return Parser(text).whole_formula(); }

Term parse_term(std::string_view text) { return Parser(text).whole_term(); }

std::string serialize(const TheoryItem& item) {
  std::string out;
  switch (item.kind) {
    case TheoryItem::Kind::kPremise: out = "premise " + item.name.to_string(); break;
    case TheoryItem::Kind::kConstraint: out = "constraint " + item.name.to_string(); break;
    case TheoryItem::Kind::kSchema: {
      out = "schema " + item.name.symbol() + "(";
      for (std::size_t i = 0; i < item.params.size(); ++i) {
        if (i > 0) out += ", ";
        out += item.params[i].var + ":" + item.params[i].sort;
      }
      out += ")";
      break;
    }
  }
  out += ": " + item.body.to_string() + ".";
  return out;
}

std::string serialize(const TheorySpec& spec) {
  std::string out;
  auto join = [](const std::vector<Term>& terms) {
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i > 0) s += ", ";
      s += terms[i].to_string();
    }
    return s;
  };
  for (const auto& s : spec.sorts) out += "sort " + s.id + " = {" + join(s.members) + "}.\n";
  for (const auto& d : spec.distinct) out += "distinct " + join(d.terms) + ".\n";
  for (const auto& item : spec.items) out += serialize(item) + "\n";
  return out;
}

}  // namespace prefrev
