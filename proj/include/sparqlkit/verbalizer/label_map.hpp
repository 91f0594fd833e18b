#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sparqlkit::verbalizer {

/// Strips surrounding whitespace and joins interior whitespace runs with
/// `_`, preserving case. Throws EmptyLabel.
std::string normalize_label(std::string_view raw_label);

/// Two or more IRIs sharing one (prefix, normalized label) key.
struct Collision {
  std::string prefix;
  std::string label;
  std::vector<std::string> iris;  // first-seen order; iris[0] wins

  friend bool operator==(const Collision&, const Collision&) = default;
};

struct LoadStats {
  std::size_t entries = 0;
  std::size_t comments = 0;
  std::size_t duplicate_iris = 0;
  std::size_t collisions = 0;
};

/// Bidirectional prefixed-IRI <-> normalized label dictionary. Immutable
/// once built, so sharing across threads needs no locking.
class LabelMap {
 public:
  /// Adds `iri` (a prefixed name such as `wd:Q25356`) with its raw label.
  /// A repeated IRI keeps its first label and returns false.
  bool add(const std::string& iri, std::string_view raw_label);

  const std::string* label_for(std::string_view iri) const;
  const std::string* iri_for(std::string_view prefix, std::string_view label) const;
  bool collides(std::string_view prefix, std::string_view label) const;

  std::size_t size() const { return forward_.size(); }
  bool empty() const { return forward_.empty(); }
  const std::vector<Collision>& collisions() const { return collisions_; }
  std::size_t duplicate_iris() const { return duplicate_iris_; }
  const std::map<std::string, std::string, std::less<>>& forward() const {
    return forward_;
  }

  /// Reads `<prefixed-iri> TAB <raw label>` lines; `#` lines and blank lines
  /// are skipped. Throws MalformedLine.
  static LabelMap read(std::istream& in, LoadStats* stats = nullptr);
  static LabelMap load(const std::filesystem::path& path, LoadStats* stats = nullptr);

  /// Writes entries in IRI order using the same TSV layout.
  void write(std::ostream& out) const;

 private:
  using Key = std::pair<std::string, std::string>;

  std::map<std::string, std::string, std::less<>> forward_;
  std::map<Key, std::string, std::less<>> reverse_;
  std::map<Key, std::size_t, std::less<>> collision_index_;
  std::vector<Collision> collisions_;
  std::size_t duplicate_iris_ = 0;
};

}  // namespace sparqlkit::verbalizer
