#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sparqlkit::sparql {

enum class TokenKind {
  Keyword,       // bare words: select, where, a, regex, true, ...
  Variable,      // ?x or $x
  PrefixedName,  // wd:Q25356, :local, rdfs:label
  IriRef,        // <http://...>
  Literal,       // "text"@en, 'x'^^xsd:int, 42, 3.5e2
  Punctuation,   // { } ( ) . ; , * = != < <= > >= && || ! + - /
};

const char* to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;         // surface form exactly as written
  std::size_t offset = 0;   // byte offset of the first character

  /// Keywords compare case-insensitively; everything else by exact text.
  bool same_as(const Token& other) const;
  /// Surface with keywords lowercased.
  std::string normalized() const;
};

inline bool operator==(const Token& a, const Token& b) {
  return a.kind == b.kind && a.text == b.text;
}

/// Splits query text into tokens. `#` comments and whitespace are dropped.
/// Throws LexError on empty input, unterminated literals and characters that
/// start no token.
std::vector<Token> tokenize(std::string_view text);

/// Joins token surfaces with single spaces.
std::string join_tokens(const std::vector<Token>& tokens);

/// True for characters that may appear unescaped inside the local part of
/// a prefixed name (ASCII subset; bytes >= 0x80 are always allowed).
bool is_local_name_char(char c);

}  // namespace sparqlkit::sparql
