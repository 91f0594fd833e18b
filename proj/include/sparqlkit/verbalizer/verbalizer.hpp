#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "sparqlkit/verbalizer/label_map.hpp"

namespace sparqlkit::verbalizer {

struct VerbalizeResult {
  std::string text;
  std::size_t substituted = 0;
  std::size_t unmapped = 0;  // prefixed names with no entry in the map
};

struct DeverbalizeResult {
  std::string text;
  std::size_t resolved = 0;
  std::size_t collided = 0;    // resolved through a collision (first-seen IRI)
  std::size_t unresolved = 0;  // label with no reverse entry
};

/// Escapes a normalized label so that `prefix:<result>` lexes as a single
/// prefixed name. Characters outside the local-name set get a backslash;
/// control bytes are written as %XX.
std::string escape_local(std::string_view label);
std::string unescape_local(std::string_view local);

/// Replaces every prefixed name found in `labels` by `prefix:label`. Works
/// on the token stream, so whitespace, comments and every other token are
/// kept byte for byte and the text need not parse. Throws LexError.
VerbalizeResult verbalize(std::string_view query_text, const LabelMap& labels);

/// Maps `prefix:label` tokens back to their IRIs.
DeverbalizeResult deverbalize(std::string_view query_text, const LabelMap& labels);

}  // namespace sparqlkit::verbalizer
