#include "sparqlkit/sparql/lexer.hpp"

#include <cctype>

#include "sparqlkit/error.hpp"
#include "sparqlkit/util/strings.hpp"

namespace sparqlkit::sparql {

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Variable: return "variable";
    case TokenKind::PrefixedName: return "prefixed-name";
    case TokenKind::IriRef: return "iri";
    case TokenKind::Literal: return "literal";
    case TokenKind::Punctuation: return "punctuation";
  }
  return "?";
}

bool Token::same_as(const Token& other) const {
  if (kind != other.kind) return false;
  if (kind == TokenKind::Keyword) return util::iequals(text, other.text);
  return text == other.text;
}

std::string Token::normalized() const {
  return kind == TokenKind::Keyword ? util::to_lower(text) : text;
}

bool is_local_name_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) || c == '_' || c == '-';
}

namespace {

bool is_high(char c) { return static_cast<unsigned char>(c) >= 0x80; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }
bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}
bool is_word_char(char c) {
  return is_high(c) || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_prefix_char(char c) { return is_word_char(c) || c == '-' || c == '.'; }

// Characters that may not appear inside an IRIREF.
bool is_iri_stop(char c) {
  switch (c) {
    case '<': case '>': case '"': case '{': case '}': case '|': case '^':
    case '`': case '\\':
      return true;
    default:
      return static_cast<unsigned char>(c) <= 0x20;
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    for (;;) {
      skip_blanks();
      if (pos_ >= text_.size()) break;
      tokens.push_back(next());
    }
    if (tokens.empty()) {
      throw LexError(LexError::Kind::Empty, 0, "empty query text");
    }
    return tokens;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  bool at_end(std::size_t ahead = 0) const {
    return pos_ + ahead >= text_.size();
  }

  void skip_blanks() {
    while (!at_end()) {
      if (is_space(peek())) {
        ++pos_;
      } else if (peek() == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  Token make(TokenKind kind, std::size_t start) const {
    return Token{kind, std::string(text_.substr(start, pos_ - start)), start};
  }

  [[noreturn]] void illegal(std::size_t at) const {
    std::string shown(1, text_[at]);
    throw LexError(LexError::Kind::IllegalCharacter, at,
                   "illegal character '" + shown + "'");
  }

  Token next() {
    const std::size_t start = pos_;
    const char c = peek();

    if (c == '?' || c == '$') {
      ++pos_;
      while (!at_end() && is_word_char(peek())) ++pos_;
      if (pos_ == start + 1) illegal(start);
      return make(TokenKind::Variable, start);
    }
    if (c == '<') {
      std::size_t j = pos_ + 1;
      while (j < text_.size() && !is_iri_stop(text_[j])) ++j;
      if (j < text_.size() && text_[j] == '>') {
        pos_ = j + 1;
        return make(TokenKind::IriRef, start);
      }
      pos_ += peek(1) == '=' ? 2 : 1;
      return make(TokenKind::Punctuation, start);
    }
    if (c == '"' || c == '\'') {
      lex_string(c);
      lex_literal_suffix();
      return make(TokenKind::Literal, start);
    }
    if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
      lex_number();
      return make(TokenKind::Literal, start);
    }
    if (is_word_char(c) || c == ':') {
      return lex_name(start);
    }
    return lex_punctuation(start);
  }

  void lex_string(char quote) {
    const std::size_t start = pos_;
    const bool long_form = peek(1) == quote && peek(2) == quote;
    pos_ += long_form ? 3 : 1;
    while (!at_end()) {
      const char c = peek();
      if (c == '\\') {
        if (at_end(1)) break;
        pos_ += 2;
        continue;
      }
      if (long_form) {
        if (c == quote && peek(1) == quote && peek(2) == quote) {
          pos_ += 3;
          return;
        }
      } else {
        if (c == quote) {
          ++pos_;
          return;
        }
        if (c == '\n' || c == '\r') break;
      }
      ++pos_;
    }
    throw LexError(LexError::Kind::UnterminatedLiteral, start,
                   "unterminated string literal");
  }

  void lex_literal_suffix() {
    if (peek() == '@' && is_alpha(peek(1))) {
      ++pos_;
      while (!at_end() && (is_alpha(peek()) || is_digit(peek()) ||
                           (peek() == '-' && (is_alpha(peek(1)) ||
                                              is_digit(peek(1)))))) {
        ++pos_;
      }
    } else if (peek() == '^' && peek(1) == '^') {
      const std::size_t marker = pos_;
      pos_ += 2;
      if (peek() == '<') {
        std::size_t j = pos_ + 1;
        while (j < text_.size() && !is_iri_stop(text_[j])) ++j;
        if (j >= text_.size() || text_[j] != '>') illegal(marker);
        pos_ = j + 1;
      } else {
        const std::size_t name_start = pos_;
        if (!(is_word_char(peek()) || peek() == ':')) illegal(marker);
        Token name = lex_name(name_start);
        if (name.kind != TokenKind::PrefixedName) illegal(marker);
      }
    }
  }

  void lex_number() {
    while (is_digit(peek())) ++pos_;
    if (peek() == '.' && is_digit(peek(1))) {
      ++pos_;
      while (is_digit(peek())) ++pos_;
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (is_digit(peek(1)) ||
         ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
      pos_ += 2;
      while (is_digit(peek())) ++pos_;
    }
  }

  // Bare word or prefixed name. A prefix may contain '-' and inner '.', a
  // bare word may not; without a following ':' we back off to the word.
  Token lex_name(std::size_t start) {
    std::size_t j = pos_;
    while (j < text_.size() && is_prefix_char(text_[j])) ++j;
    while (j > pos_ && text_[j - 1] == '.') --j;
    if (j < text_.size() && text_[j] == ':') {
      pos_ = j + 1;
      lex_local_part();
      return make(TokenKind::PrefixedName, start);
    }
    while (!at_end() && is_word_char(peek())) ++pos_;
    if (pos_ == start) illegal(start);
    Token word = make(TokenKind::Keyword, start);
    if (word.text == "true" || word.text == "false") {
      word.kind = TokenKind::Literal;
    }
    return word;
  }

  bool local_char_at(std::size_t i) const {
    if (i >= text_.size()) return false;
    const char c = text_[i];
    if (is_local_name_char(c) || c == ':') return true;
    if (c == '%') {
      return i + 2 < text_.size() &&
             std::isxdigit(static_cast<unsigned char>(text_[i + 1])) &&
             std::isxdigit(static_cast<unsigned char>(text_[i + 2]));
    }
    if (c == '\\') {
      return i + 1 < text_.size() &&
             static_cast<unsigned char>(text_[i + 1]) > 0x20 &&
             static_cast<unsigned char>(text_[i + 1]) < 0x7f;
    }
    return false;
  }

  void lex_local_part() {
    for (;;) {
      if (local_char_at(pos_)) {
        const char c = peek();
        pos_ += c == '\\' ? 2 : c == '%' ? 3 : 1;
      } else if (peek() == '.' && pos_ > 0 && local_char_at(pos_ + 1) &&
                 text_[pos_ - 1] != ':') {
        ++pos_;
      } else {
        return;
      }
    }
  }

  Token lex_punctuation(std::size_t start) {
    const char c = peek();
    const char n = peek(1);
    switch (c) {
      case '{': case '}': case '(': case ')': case '[': case ']': case '.':
      case ';': case ',': case '*': case '=': case '+': case '-': case '/':
      case '^':
        ++pos_;
        break;
      case '>':
        pos_ += n == '=' ? 2 : 1;
        break;
      case '!':
        pos_ += n == '=' ? 2 : 1;
        break;
      case '&':
        if (n != '&') illegal(start);
        pos_ += 2;
        break;
      case '|':
        pos_ += n == '|' ? 2 : 1;  // a single '|' only occurs in property paths
        break;
      default:
        illegal(start);
    }
    return make(TokenKind::Punctuation, start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  return Lexer(text).run();
}

std::string join_tokens(const std::vector<Token>& tokens) {
  std::string out;
  for (const auto& token : tokens) {
    if (!out.empty()) out += ' ';
    out += token.text;
  }
  return out;
}

}  // namespace sparqlkit::sparql
