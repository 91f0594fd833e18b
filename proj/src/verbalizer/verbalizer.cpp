#include "sparqlkit/verbalizer/verbalizer.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "sparqlkit/sparql/lexer.hpp"

namespace sparqlkit::verbalizer {

using sparql::Token;
using sparql::TokenKind;

namespace {
const char kHex[] = "0123456789ABCDEF";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}
}  // namespace

std::string escape_local(std::string_view label) {
  std::string out;
  for (std::size_t i = 0; i < label.size(); ++i) {
    const char c = label[i];
    const auto u = static_cast<unsigned char>(c);
    const bool edge = i == 0 || i + 1 == label.size();
    if (sparql::is_local_name_char(c) || c == ':' || (c == '.' && !edge)) {
      out += c;
    } else if (u > 0x20 && u < 0x7f) {
      out += '\\';
      out += c;
    } else {
      out += '%';
      out += kHex[u >> 4];
      out += kHex[u & 0xf];
    }
  }
  return out;
}

std::string unescape_local(std::string_view local) {
  std::string out;
  for (std::size_t i = 0; i < local.size(); ++i) {
    const char c = local[i];
    if (c == '\\' && i + 1 < local.size()) {
      out += local[++i];
    } else if (c == '%' && i + 2 < local.size() && hex_value(local[i + 1]) >= 0 &&
               hex_value(local[i + 2]) >= 0) {
      out += static_cast<char>(hex_value(local[i + 1]) * 16 + hex_value(local[i + 2]));
      i += 2;
    } else {
      out += c;
    }
  }
  return out;
}

namespace {

// Rebuilds `text` with some tokens replaced, keeping everything between
// tokens untouched.
template <typename Replace>
std::string splice(std::string_view text, const std::vector<Token>& tokens,
                   Replace&& replace) {
  std::string out;
  std::size_t pos = 0;
  for (const auto& token : tokens) {
    out.append(text.substr(pos, token.offset - pos));
    if (auto repl = replace(token)) {
      out += *repl;
    } else {
      out += token.text;
    }
    pos = token.offset + token.text.size();
  }
  out.append(text.substr(pos));
  return out;
}

}  // namespace

VerbalizeResult verbalize(std::string_view query_text, const LabelMap& labels) {
  VerbalizeResult result;
  const auto tokens = sparql::tokenize(query_text);
  result.text = splice(query_text, tokens, [&](const Token& t) -> std::optional<std::string> {
    if (t.kind != TokenKind::PrefixedName || t.text.back() == ':') return std::nullopt;
    const auto* label = labels.label_for(t.text);
    if (!label) {
      ++result.unmapped;
      return std::nullopt;
    }
    ++result.substituted;
    return t.text.substr(0, t.text.find(':') + 1) + escape_local(*label);
  });
  return result;
}

DeverbalizeResult deverbalize(std::string_view query_text, const LabelMap& labels) {
  DeverbalizeResult result;
  const auto tokens = sparql::tokenize(query_text);
  result.text = splice(query_text, tokens, [&](const Token& t) -> std::optional<std::string> {
    if (t.kind != TokenKind::PrefixedName || t.text.back() == ':') return std::nullopt;
    const auto colon = t.text.find(':');
    const auto prefix = std::string_view(t.text).substr(0, colon);
    const auto label = unescape_local(std::string_view(t.text).substr(colon + 1));
    const auto* iri = labels.iri_for(prefix, label);
    if (!iri) {
      ++result.unresolved;
      return std::nullopt;
    }
    ++result.resolved;
    if (labels.collides(prefix, label)) ++result.collided;
    return *iri;
  });
  return result;
}

}  // namespace sparqlkit::verbalizer
