#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sparqlkit/corpus/example.hpp"
#include "sparqlkit/verbalizer/label_map.hpp"

namespace sparqlkit::corpus {

/// Input layouts:
///  - Generic: JSON lines `{id, question, query, entities, relations, answers}`;
///    entities/relations are arrays of `{"iri", "label"}` or `[iri, label]`.
///  - LCQuAD2: a JSON array (or JSON lines) of records with `uid`,
///    `question` (falling back to `NNQT_question`) and `sparql_wikidata`.
///  - QALD: one JSON document `{"questions": [...]}` with `id`,
///    `question[{language, string}]`, `query.sparql` and `answers[0]`.
/// LCQuAD2 and QALD carry no entity lists: wd: names in the query become
/// entities and wdt:/p:/ps:/pq: names relations, labelled from `labels`.
enum class Schema { Generic, LCQuAD2, Qald };

/// "generic", "lcquad2" or "qald". Throws UnknownSchema.
Schema schema_from_string(std::string_view name);

struct DatasetStats {
  std::size_t records = 0;
  std::size_t missing_query = 0;
  std::size_t unparsable_query = 0;
  /// Entities/relations dropped because no label was known.
  std::size_t unlabeled = 0;

  std::size_t skipped() const { return missing_query + unparsable_query; }
};

struct Dataset {
  std::vector<Example> examples;
  DatasetStats stats;
};

struct DatasetOptions {
  std::string language = "en";  // QALD question language
  const verbalizer::LabelMap* labels = nullptr;
};

/// Throws MalformedRecord for input that is not valid for the schema.
Dataset read_dataset(std::istream& in, Schema schema, const DatasetOptions& options = {});
Dataset read_dataset(const std::filesystem::path& path, Schema schema,
                     const DatasetOptions& options = {});

/// wd: names and relation-prefix names of a query, in first-seen order.
struct QueryIris {
  std::vector<std::string> entities;
  std::vector<std::string> relations;
};
QueryIris collect_iris(std::string_view query_text);

}  // namespace sparqlkit::corpus
