#include "sparqlkit/sparql/parser.hpp"

#include <cctype>

#include <charconv>
#include <set>
#include <stdexcept>

#include "sparqlkit/error.hpp"
#include "sparqlkit/util/strings.hpp"

namespace sparqlkit::sparql {

namespace {

// Offset just past the quoted part of a string literal surface.
std::size_t quoted_length(const std::string& text) {
  const char quote = text[0];
  const bool long_form = text.size() >= 3 && text[1] == quote && text[2] == quote;
  std::size_t i = long_form ? 3 : 1;
  while (i < text.size()) {
    if (text[i] == '\\') {
      i += 2;
      continue;
    }
    if (text[i] == quote) {
      if (!long_form) return i + 1;
      if (i + 2 < text.size() && text[i + 1] == quote && text[i + 2] == quote) {
        return i + 3;
      }
    }
    ++i;
  }
  return text.size();
}

}  // namespace

Term Term::from_token(const Token& token) {
  switch (token.kind) {
    case TokenKind::Variable:
      return Term(Variable{token.text.substr(1), token.text[0]});
    case TokenKind::PrefixedName: {
      const auto colon = token.text.find(':');
      return Term(PrefixedIri{token.text.substr(0, colon),
                              token.text.substr(colon + 1)});
    }
    case TokenKind::IriRef:
      return Term(FullIri{token.text.substr(1, token.text.size() - 2)});
    case TokenKind::Literal: {
      if (token.text[0] != '"' && token.text[0] != '\'') {
        return Term(Literal{token.text, ""});
      }
      const auto end = quoted_length(token.text);
      return Term(Literal{token.text.substr(0, end), token.text.substr(end)});
    }
    case TokenKind::Keyword:
      if (token.text == "a") return Term(FullIri{kRdfType});
      break;
    case TokenKind::Punctuation:
      break;
  }
  throw std::invalid_argument("token '" + token.text + "' is not a term");
}

Term Term::parse(const std::string& text) {
  const auto tokens = tokenize(text);
  if (tokens.size() != 1) {
    throw std::invalid_argument("'" + text + "' is not a single term");
  }
  return from_token(tokens.front());
}

std::string Term::to_string(bool canonical, bool predicate) const {
  struct Visitor {
    bool canonical;
    bool predicate;
    std::string operator()(const Variable& v) const {
      return (canonical ? '?' : v.sigil) + v.name;
    }
    std::string operator()(const PrefixedIri& p) const { return p.text(); }
    std::string operator()(const FullIri& f) const {
      if (predicate && f.iri == kRdfType) return "a";
      return "<" + f.iri + ">";
    }
    std::string operator()(const Literal& l) const {
      return l.lexical + l.annotation;
    }
  };
  return std::visit(Visitor{canonical, predicate}, value_);
}

namespace {

const std::set<std::string> kOtherAggregates = {
    "sum", "min", "max", "avg", "sample", "group_concat"};
const std::set<std::string> kUnsupportedGroupKeywords = {
    "minus", "bind", "values", "service", "graph", "select"};

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

  QueryAst run() {
    skip_prologue();
    QueryAst ast;
    if (is_keyword("select")) {
      parse_select(ast);
    } else if (is_keyword("ask")) {
      advance();
      ast.form = QueryForm::Ask;
      if (is_keyword("from")) unsupported("FROM dataset clause");
      if (is_keyword("where")) advance();
      ast.where = parse_group();
    } else if (is_keyword("construct") || is_keyword("describe")) {
      unsupported(util::to_lower(peek().text) + " query form");
    } else {
      fail("SELECT or ASK");
    }
    parse_modifiers(ast.modifiers);
    if (!at_end()) {
      if (is_keyword("group") || is_keyword("having") || is_keyword("values")) {
        unsupported(util::to_lower(peek().text) + " clause");
      }
      fail("end of query");
    }
    check_bound_variables(ast);
    return ast;
  }

 private:
  bool at_end() const { return pos_ >= tokens_.size(); }

  const Token& peek(std::size_t ahead = 0) const {
    static const Token kEnd{TokenKind::Punctuation, "", 0};
    return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : kEnd;
  }

  const Token& advance() { return tokens_[pos_++]; }

  bool is_keyword(std::string_view word, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return pos_ + ahead < tokens_.size() && t.kind == TokenKind::Keyword &&
           util::iequals(t.text, word);
  }

  bool is_punct(std::string_view p, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return pos_ + ahead < tokens_.size() && t.kind == TokenKind::Punctuation &&
           t.text == p;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const std::string found =
        at_end() ? "end of input" : "'" + peek().text + "'";
    throw SyntaxError(pos_, expected, found);
  }

  [[noreturn]] void unsupported(const std::string& feature) const {
    throw UnsupportedFeature(pos_, feature);
  }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("'" + std::string(p) + "'");
    advance();
  }

  void skip_prologue() {
    for (;;) {
      if (is_keyword("prefix")) {
        advance();
        if (peek().kind != TokenKind::PrefixedName || peek().text.back() != ':') {
          fail("prefix name");
        }
        advance();
        if (peek().kind != TokenKind::IriRef) fail("IRI");
        advance();
      } else if (is_keyword("base")) {
        advance();
        if (peek().kind != TokenKind::IriRef) fail("IRI");
        advance();
      } else {
        return;
      }
    }
  }

  Variable take_variable() {
    if (peek().kind != TokenKind::Variable) fail("variable");
    const Token& t = advance();
    projection_refs_.push_back({t.text.substr(1), pos_ - 1});
    return Variable{t.text.substr(1), t.text[0]};
  }

  void parse_select(QueryAst& ast) {
    advance();
    ast.form = QueryForm::Select;
    if (is_keyword("distinct")) {
      advance();
      ast.distinct = true;
    } else if (is_keyword("reduced")) {
      unsupported("REDUCED");
    }
    if (is_punct("*")) {
      advance();
      ast.select_all = true;
    } else {
      for (;;) {
        if (peek().kind == TokenKind::Variable) {
          ast.projection.emplace_back(take_variable());
        } else if (is_keyword("count")) {
          auto count = parse_count();
          if (is_keyword("as")) {
            advance();
            count.alias = alias_variable();
          }
          ast.projection.emplace_back(std::move(count));
        } else if (is_punct("(")) {
          advance();
          if (!is_keyword("count")) {
            if (peek().kind == TokenKind::Keyword &&
                kOtherAggregates.count(util::to_lower(peek().text))) {
              unsupported(util::to_lower(peek().text) + " aggregate");
            }
            unsupported("expression in projection");
          }
          auto count = parse_count();
          if (is_keyword("as")) {
            advance();
            count.alias = alias_variable();
          }
          expect_punct(")");
          ast.projection.emplace_back(std::move(count));
        } else if (peek().kind == TokenKind::Keyword &&
                   kOtherAggregates.count(util::to_lower(peek().text))) {
          unsupported(util::to_lower(peek().text) + " aggregate");
        } else {
          break;
        }
      }
      if (ast.projection.empty()) fail("projection variable or '*'");
    }
    if (is_keyword("from")) unsupported("FROM dataset clause");
    if (is_keyword("where")) advance();
    ast.where = parse_group();
  }

  Variable alias_variable() {
    if (peek().kind != TokenKind::Variable) fail("alias variable");
    const Token& t = advance();
    aliases_.insert(t.text.substr(1));
    return Variable{t.text.substr(1), t.text[0]};
  }

  CountAggregate parse_count() {
    advance();  // count
    expect_punct("(");
    CountAggregate count;
    if (is_keyword("distinct")) {
      advance();
      count.distinct = true;
    }
    if (is_punct("*")) {
      advance();
    } else {
      count.argument = take_variable();
    }
    expect_punct(")");
    return count;
  }

  PatternGroup parse_group() {
    expect_punct("{");
    PatternGroup group;
    for (;;) {
      if (at_end()) fail("'}'");
      if (is_punct("}")) {
        advance();
        return group;
      }
      if (is_punct("{")) {
        std::vector<PatternGroup> branches;
        branches.push_back(parse_group());
        while (is_keyword("union")) {
          advance();
          branches.push_back(parse_group());
        }
        if (branches.size() == 1) {
          group.items.emplace_back(SubgroupClause{std::move(branches.front())});
        } else {
          group.items.emplace_back(UnionClause{std::move(branches)});
        }
        skip_dot();
      } else if (is_keyword("optional")) {
        advance();
        group.items.emplace_back(OptionalClause{parse_group()});
        skip_dot();
      } else if (is_keyword("filter")) {
        advance();
        group.items.emplace_back(FilterClause{parse_constraint()});
        skip_dot();
      } else if (peek().kind == TokenKind::Keyword &&
                 kUnsupportedGroupKeywords.count(util::to_lower(peek().text))) {
        if (is_keyword("select")) unsupported("subquery");
        unsupported(util::to_lower(peek().text) + " pattern");
      } else if (starts_term()) {
        group.items.emplace_back(parse_triples_block());
      } else {
        fail("triple pattern, FILTER, OPTIONAL, group or '}'");
      }
    }
  }

  void skip_dot() {
    if (is_punct(".")) advance();
  }

  bool starts_term() const {
    if (at_end()) return false;
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Variable:
      case TokenKind::PrefixedName:
      case TokenKind::IriRef:
      case TokenKind::Literal:
        return true;
      case TokenKind::Keyword:
        return t.text == "a";
      case TokenKind::Punctuation:
        return t.text == "[" || t.text == "(" || signed_number_ahead();
    }
    return false;
  }

  // `-4` lexes as two tokens; in term position the sign belongs to the number.
  bool signed_number_ahead() const {
    if (pos_ + 1 >= tokens_.size()) return false;
    const Token& sign = tokens_[pos_];
    const Token& number = tokens_[pos_ + 1];
    return (sign.text == "-" || sign.text == "+") && number.kind == TokenKind::Literal &&
           number.offset == sign.offset + 1 && !number.text.empty() &&
           (std::isdigit(static_cast<unsigned char>(number.text[0])) || number.text[0] == '.');
  }

  Term parse_term() {
    const Token& t = peek();
    if (t.kind == TokenKind::Punctuation) {
      if (t.text == "[") unsupported("blank node");
      if (t.text == "(") unsupported("RDF collection");
    }
    if (t.kind == TokenKind::PrefixedName && t.text.rfind("_:", 0) == 0) {
      unsupported("blank node");
    }
    if (!starts_term()) fail("RDF term");
    if (signed_number_ahead()) {
      const std::string sign = advance().text;
      Token number = advance();
      number.text = sign + number.text;
      return Term::from_token(number);
    }
    return Term::from_token(advance());
  }

  Term parse_verb() {
    if (is_punct("^") || is_punct("!") || is_punct("(")) unsupported("property path");
    Term verb = parse_term();
    if (is_punct("/") || is_punct("*") || is_punct("|") ||
        (is_punct("+") && !signed_number_ahead())) {
      unsupported("property path");
    }
    return verb;
  }

  TripleBlock parse_triples_block() {
    TripleBlock block;
    for (;;) {
      parse_same_subject(block);
      if (!is_punct(".")) break;
      advance();
      if (!starts_term()) break;
    }
    return block;
  }

  void parse_same_subject(TripleBlock& block) {
    const Term subject = parse_term();
    Abbreviation first = Abbreviation::None;
    for (;;) {
      const Term predicate = parse_verb();
      block.push({subject, predicate, parse_term()}, first);
      while (is_punct(",")) {
        advance();
        block.push({subject, predicate, parse_term()},
                   Abbreviation::SharedPredicate);
      }
      if (!is_punct(";")) return;
      while (is_punct(";")) advance();
      if (!starts_term()) return;
      first = Abbreviation::SharedSubject;
    }
  }

  // Expression tokens are stored with lowercased keywords and `?` sigils.
  static Token span_token(const Token& t) {
    if (t.kind == TokenKind::Variable) {
      return Token{t.kind, "?" + t.text.substr(1), 0};
    }
    return Token{t.kind, t.normalized(), 0};
  }

  // Balanced parenthesized span starting at the current '('.
  std::vector<Token> balanced_span() {
    std::vector<Token> span;
    int depth = 0;
    do {
      if (at_end()) fail("')'");
      const Token& t = advance();
      if (t.kind == TokenKind::Punctuation) {
        if (t.text == "(") ++depth;
        if (t.text == ")") --depth;
        if (t.text == "{" || t.text == "}") {
          --pos_;
          unsupported("graph pattern inside expression");
        }
      }
      if (t.kind == TokenKind::Keyword && util::iequals(t.text, "exists")) {
        --pos_;
        unsupported("EXISTS");
      }
      span.push_back(span_token(t));
    } while (depth > 0);
    return span;
  }

  static bool wrapped(const std::vector<Token>& span) {
    if (span.size() < 2 || span.front().text != "(" || span.back().text != ")" ||
        span.front().kind != TokenKind::Punctuation) {
      return false;
    }
    int depth = 0;
    for (std::size_t i = 0; i < span.size(); ++i) {
      if (span[i].kind != TokenKind::Punctuation) continue;
      if (span[i].text == "(") ++depth;
      if (span[i].text == ")") --depth;
      if (depth == 0 && i + 1 < span.size()) return false;
    }
    return true;
  }

  static std::vector<Token> strip_parens(std::vector<Token> span) {
    while (wrapped(span)) {
      span.erase(span.begin());
      span.pop_back();
    }
    return span;
  }

  static std::vector<Token> wrap(std::vector<Token> inner) {
    inner.insert(inner.begin(), Token{TokenKind::Punctuation, "(", 0});
    inner.push_back(Token{TokenKind::Punctuation, ")", 0});
    return inner;
  }

  // Bracketed expression or function call; returned unwrapped.
  std::vector<Token> parse_expression_core(const std::string& what) {
    std::vector<Token> expr;
    if (is_punct("(")) {
      expr = strip_parens(balanced_span());
    } else if ((peek().kind == TokenKind::Keyword ||
                peek().kind == TokenKind::PrefixedName ||
                peek().kind == TokenKind::IriRef) &&
               is_punct("(", 1)) {
      if (is_keyword("exists") || is_keyword("not")) unsupported("EXISTS");
      expr.push_back(span_token(advance()));
      auto args = balanced_span();
      expr.insert(expr.end(), args.begin(), args.end());
    } else {
      if (is_keyword("exists") || is_keyword("not")) unsupported("EXISTS");
      fail(what);
    }
    if (expr.empty()) fail("expression");
    return expr;
  }

  std::vector<Token> parse_constraint() {
    return wrap(parse_expression_core("'(' or function call after FILTER"));
  }

  void parse_modifiers(SolutionModifiers& mods) {
    for (;;) {
      if (is_keyword("order") && mods.order_by.empty()) {
        advance();
        if (!is_keyword("by")) fail("BY");
        advance();
        while (auto key = parse_order_key()) mods.order_by.push_back(*key);
        if (mods.order_by.empty()) fail("ORDER BY key");
      } else if (is_keyword("limit") && !mods.limit) {
        advance();
        mods.limit = parse_count_literal();
      } else if (is_keyword("offset") && !mods.offset) {
        advance();
        mods.offset = parse_count_literal();
      } else {
        return;
      }
    }
  }

  std::optional<OrderKey> parse_order_key() {
    if (at_end()) return std::nullopt;
    OrderKey key;
    if (is_keyword("asc") || is_keyword("desc")) {
      key.direction = is_keyword("asc") ? OrderDirection::Asc : OrderDirection::Desc;
      advance();
      if (!is_punct("(")) fail("'('");
      key.expression = strip_parens(balanced_span());
      if (key.expression.empty()) fail("expression");
      return key;
    }
    if (peek().kind == TokenKind::Variable) {
      key.expression.push_back(span_token(advance()));
      return key;
    }
    if (is_punct("(") ) {
      key.expression = wrap(parse_expression_core("ORDER BY key"));
      return key;
    }
    if ((peek().kind == TokenKind::Keyword || peek().kind == TokenKind::PrefixedName) &&
        is_punct("(", 1) && !is_keyword("limit") && !is_keyword("offset")) {
      key.expression = parse_expression_core("ORDER BY key");
      return key;
    }
    return std::nullopt;
  }

  std::uint64_t parse_count_literal() {
    const Token& t = peek();
    std::uint64_t value = 0;
    if (t.kind == TokenKind::Literal && !t.text.empty()) {
      const char* first = t.text.data();
      const char* last = first + t.text.size();
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec == std::errc() && ptr == last) {
        advance();
        return value;
      }
    }
    fail("non-negative integer");
  }

  static void collect(const PatternGroup& group, std::set<std::string>& out) {
    for (const auto& item : group.items) {
      std::visit(
          [&](const auto& clause) {
            using T = std::decay_t<decltype(clause)>;
            if constexpr (std::is_same_v<T, TripleBlock>) {
              for (const auto& t : clause.triples) {
                for (const Term* term : {&t.subject, &t.predicate, &t.object}) {
                  if (auto v = term->as_variable()) out.insert(v->name);
                }
              }
            } else if constexpr (std::is_same_v<T, FilterClause>) {
              for (const auto& tok : clause.expression) {
                if (tok.kind == TokenKind::Variable) out.insert(tok.text.substr(1));
              }
            } else if constexpr (std::is_same_v<T, UnionClause>) {
              for (const auto& b : clause.branches) collect(b, out);
            } else {
              collect(*clause.group, out);
            }
          },
          item);
    }
  }

  void check_bound_variables(const QueryAst& ast) const {
    std::set<std::string> bound;
    collect(ast.where, bound);
    for (const auto& [name, index] : projection_refs_) {
      if (!bound.count(name) && !aliases_.count(name)) {
        throw SyntaxError(index, "variable bound in WHERE", "?" + name);
      }
    }
    for (const auto& key : ast.modifiers.order_by) {
      for (const auto& tok : key.expression) {
        if (tok.kind != TokenKind::Variable) continue;
        const auto name = tok.text.substr(1);
        if (!bound.count(name) && !aliases_.count(name)) {
          throw SyntaxError(tokens_.size(), "variable bound in WHERE", tok.text);
        }
      }
    }
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
  std::vector<std::pair<std::string, std::size_t>> projection_refs_;
  std::set<std::string> aliases_;
};

}  // namespace

QueryAst parse_tokens(const std::vector<Token>& tokens) {
  return Parser(tokens).run();
}

QueryAst parse(std::string_view query_text) {
  return parse_tokens(tokenize(query_text));
}

}  // namespace sparqlkit::sparql
