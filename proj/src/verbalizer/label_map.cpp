#include "sparqlkit/verbalizer/label_map.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "sparqlkit/error.hpp"
#include "sparqlkit/sparql/lexer.hpp"
#include "sparqlkit/util/strings.hpp"

namespace sparqlkit::verbalizer {

namespace {
bool is_ws(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
}  // namespace

std::string normalize_label(std::string_view raw_label) {
  std::string out;
  bool pending_gap = false;
  for (char c : raw_label) {
    if (is_ws(c)) {
      pending_gap = !out.empty();
      continue;
    }
    if (pending_gap) out += '_';
    pending_gap = false;
    out += c;
  }
  if (out.empty()) throw EmptyLabel();
  return out;
}

bool LabelMap::add(const std::string& iri, std::string_view raw_label) {
  const auto colon = iri.find(':');
  if (colon == std::string::npos) {
    throw std::invalid_argument("'" + iri + "' is not a prefixed IRI");
  }
  auto label = normalize_label(raw_label);
  if (forward_.count(iri)) {
    ++duplicate_iris_;
    return false;
  }
  forward_.emplace(iri, label);

  Key key{iri.substr(0, colon), label};
  auto existing = reverse_.find(key);
  if (existing == reverse_.end()) {
    reverse_.emplace(std::move(key), iri);
    return true;
  }
  auto found = collision_index_.find(key);
  if (found == collision_index_.end()) {
    collision_index_.emplace(key, collisions_.size());
    collisions_.push_back(Collision{key.first, key.second, {existing->second, iri}});
  } else {
    collisions_[found->second].iris.push_back(iri);
  }
  return true;
}

const std::string* LabelMap::label_for(std::string_view iri) const {
  auto it = forward_.find(iri);
  return it == forward_.end() ? nullptr : &it->second;
}

const std::string* LabelMap::iri_for(std::string_view prefix,
                                     std::string_view label) const {
  auto it = reverse_.find(Key{std::string(prefix), std::string(label)});
  return it == reverse_.end() ? nullptr : &it->second;
}

bool LabelMap::collides(std::string_view prefix, std::string_view label) const {
  return collision_index_.count(Key{std::string(prefix), std::string(label)}) > 0;
}

LabelMap LabelMap::read(std::istream& in, LoadStats* stats) {
  LabelMap map;
  LoadStats local;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (util::trim(line).empty()) continue;
    if (line.front() == '#') {
      ++local.comments;
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw MalformedLine(line_no, "missing TAB separator");
    const std::string iri(util::trim(std::string_view(line).substr(0, tab)));
    const auto label = std::string_view(line).substr(tab + 1);

    std::vector<sparql::Token> tokens;
    try {
      tokens = sparql::tokenize(iri);
    } catch (const LexError&) {
    }
    if (tokens.size() != 1 || tokens[0].kind != sparql::TokenKind::PrefixedName) {
      throw MalformedLine(line_no, "'" + iri + "' is not a prefixed IRI");
    }
    if (util::trim(label).empty()) throw MalformedLine(line_no, "empty label");
    if (map.add(iri, label)) ++local.entries;
  }
  local.duplicate_iris = map.duplicate_iris();
  local.collisions = map.collisions().size();
  if (stats) *stats = local;
  return map;
}

LabelMap LabelMap::load(const std::filesystem::path& path, LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open label file " + path.string());
  return read(in, stats);
}

void LabelMap::write(std::ostream& out) const {
  for (const auto& [iri, label] : forward_) out << iri << '\t' << label << '\n';
}

}  // namespace sparqlkit::verbalizer
