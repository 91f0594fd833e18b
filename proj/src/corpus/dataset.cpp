#include "sparqlkit/corpus/dataset.hpp"

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "sparqlkit/error.hpp"
#include "sparqlkit/sparql/lexer.hpp"
#include "sparqlkit/sparql/parser.hpp"
#include "sparqlkit/util/strings.hpp"

namespace sparqlkit::corpus {

using nlohmann::json;

Schema schema_from_string(std::string_view name) {
  const auto lower = util::to_lower(name);
  if (lower == "generic") return Schema::Generic;
  if (lower == "lcquad2" || lower == "lc-quad2" || lower == "lcquad") return Schema::LCQuAD2;
  if (lower == "qald") return Schema::Qald;
  throw UnknownSchema(std::string(name));
}

QueryIris collect_iris(std::string_view query_text) {
  static const std::set<std::string> kRelationPrefixes = {"wdt", "p", "ps", "pq"};
  QueryIris out;
  std::set<std::string> seen;
  for (const auto& token : sparql::tokenize(query_text)) {
    if (token.kind != sparql::TokenKind::PrefixedName) continue;
    const auto colon = token.text.find(':');
    if (colon + 1 == token.text.size()) continue;
    const auto prefix = token.text.substr(0, colon);
    if (prefix == "wd") {
      if (seen.insert(token.text).second) out.entities.push_back(token.text);
    } else if (kRelationPrefixes.count(prefix)) {
      if (seen.insert(token.text).second) out.relations.push_back(token.text);
    }
  }
  return out;
}

namespace {

std::string text_field(const json& record, const char* name) {
  auto it = record.find(name);
  if (it == record.end() || it->is_null()) return "";
  if (it->is_string()) return it->get<std::string>();
  return it->dump();
}

std::vector<LabeledIri> labeled_list(const json& items, const std::string& where) {
  std::vector<LabeledIri> out;
  if (items.is_null()) return out;
  if (!items.is_array()) throw MalformedRecord(where, "entity/relation list is not an array");
  for (const auto& item : items) {
    if (item.is_array() && item.size() == 2) {
      out.push_back({item[0].get<std::string>(), item[1].get<std::string>()});
    } else if (item.is_object()) {
      out.push_back({item.at("iri").get<std::string>(), text_field(item, "label")});
    } else {
      throw MalformedRecord(where, "entity/relation item must be {iri, label} or [iri, label]");
    }
  }
  return out;
}

class Builder {
 public:
  Builder(const DatasetOptions& options, Dataset& out) : options_(options), out_(out) {}

  // Validates and stores an example; false when it was skipped.
  bool accept(Example example) {
    ++out_.stats.records;
    if (example.gold_query.empty()) {
      ++out_.stats.missing_query;
      return false;
    }
    try {
      sparql::parse(example.gold_query);
    } catch (const Error&) {
      ++out_.stats.unparsable_query;
      return false;
    }
    out_.examples.push_back(std::move(example));
    return true;
  }

  void label_from_query(Example& example) {
    QueryIris iris;
    try {
      iris = collect_iris(example.gold_query);
    } catch (const LexError&) {
      return;  // rejected later as unparsable
    }
    example.entities = labeled(iris.entities);
    example.relations = labeled(iris.relations);
  }

 private:
  std::vector<LabeledIri> labeled(const std::vector<std::string>& iris) {
    std::vector<LabeledIri> out;
    for (const auto& iri : iris) {
      const std::string* label = options_.labels ? options_.labels->label_for(iri) : nullptr;
      if (label) {
        out.push_back({iri, *label});
      } else {
        ++out_.stats.unlabeled;
      }
    }
    return out;
  }

  const DatasetOptions& options_;
  Dataset& out_;
};

Example generic_example(const json& record, const std::string& where, std::size_t number) {
  Example ex;
  ex.id = record.contains("id") ? text_field(record, "id") : std::to_string(number);
  ex.question = text_field(record, "question");
  ex.gold_query = text_field(record, "query");
  if (record.contains("entities")) ex.entities = labeled_list(record["entities"], where);
  if (record.contains("relations")) ex.relations = labeled_list(record["relations"], where);
  if (record.contains("answers") && !record["answers"].is_null()) {
    ex.answers = evaluator::answers_from_json(record["answers"]);
  }
  return ex;
}

Example lcquad_example(const json& record, std::size_t number) {
  Example ex;
  ex.id = record.contains("uid") ? text_field(record, "uid") : std::to_string(number);
  ex.question = text_field(record, "question");
  // Some LC-QuAD 2.0 records have a null or placeholder question.
  if (ex.question.empty() || ex.question == "[]") ex.question = text_field(record, "NNQT_question");
  ex.gold_query = text_field(record, "sparql_wikidata");
  return ex;
}

Example qald_example(const json& record, const std::string& language, std::size_t number) {
  Example ex;
  ex.id = record.contains("id") ? text_field(record, "id") : std::to_string(number);
  if (auto it = record.find("question"); it != record.end() && it->is_array()) {
    for (const auto& q : *it) {
      if (q.value("language", "") == language) {
        ex.question = q.value("string", "");
        break;
      }
    }
  }
  if (auto it = record.find("query"); it != record.end() && it->is_object()) {
    ex.gold_query = text_field(*it, "sparql");
  }
  if (auto it = record.find("answers"); it != record.end() && it->is_array() && !it->empty()) {
    try {
      ex.answers = evaluator::answers_from_results((*it)[0]);
    } catch (const EndpointError& e) {
      throw MalformedRecord("question " + ex.id, std::string("answers: ") + e.what());
    }
  }
  return ex;
}

// JSON lines, or a single JSON array spanning the whole input.
std::vector<json> records_of(const std::string& content) {
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  if (content[first] == '[') {
    try {
      auto doc = json::parse(content);
      return doc.get<std::vector<json>>();
    } catch (const json::exception& e) {
      throw MalformedRecord("in JSON array", e.what());
    }
  }
  std::vector<json> out;
  std::istringstream in(content);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw MalformedRecord("at line " + std::to_string(number), e.what());
    }
  }
  return out;
}

}  // namespace

Dataset read_dataset(std::istream& in, Schema schema, const DatasetOptions& options) {
  const std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  Dataset out;
  Builder builder(options, out);

  if (schema == Schema::Qald) {
    json doc;
    try {
      doc = json::parse(content);
    } catch (const json::exception& e) {
      throw MalformedRecord("QALD document", e.what());
    }
    if (!doc.contains("questions") || !doc["questions"].is_array()) {
      throw MalformedRecord("QALD document", "missing \"questions\" array");
    }
    std::size_t number = 0;
    for (const auto& record : doc["questions"]) {
      ++number;
      try {
        auto ex = qald_example(record, options.language, number);
        builder.label_from_query(ex);
        builder.accept(std::move(ex));
      } catch (const json::exception& e) {
        throw MalformedRecord("question " + std::to_string(number), e.what());
      }
    }
    return out;
  }

  std::size_t number = 0;
  for (const auto& record : records_of(content)) {
    ++number;
    const std::string where = "record " + std::to_string(number);
    if (!record.is_object()) throw MalformedRecord(where, "not a JSON object");
    try {
      if (schema == Schema::Generic) {
        builder.accept(generic_example(record, where, number));
      } else {
        auto ex = lcquad_example(record, number);
        builder.label_from_query(ex);
        builder.accept(std::move(ex));
      }
    } catch (const json::exception& e) {
      throw MalformedRecord(where, e.what());
    }
  }
  return out;
}

Dataset read_dataset(const std::filesystem::path& path, Schema schema,
                     const DatasetOptions& options) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset " + path.string());
  return read_dataset(in, schema, options);
}

}  // namespace sparqlkit::corpus
