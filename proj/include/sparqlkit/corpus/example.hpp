#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sparqlkit/evaluator/answers.hpp"
#include "sparqlkit/verbalizer/label_map.hpp"

namespace sparqlkit::corpus {

struct LabeledIri {
  std::string iri;    // prefixed, e.g. wd:Q25356
  std::string label;  // e.g. Populus

  friend bool operator==(const LabeledIri&, const LabeledIri&) = default;
};

struct Example {
  std::string id;
  std::string question;
  std::string gold_query;
  std::vector<LabeledIri> entities;
  std::vector<LabeledIri> relations;
  std::optional<evaluator::AnswerSet> answers;
};

enum class Scenario {
  GoldBoth,          // question | entities | relations
  GoldEntitiesOnly,  // question | entities
};

/// "gold-both" or "gold-entities". Throws ConfigError.
Scenario scenario_from_string(std::string_view name);
const char* to_string(Scenario scenario);

/// Model input: `Q | E1 L1, E2 L2 | R1 L1, ...`. Whitespace runs inside
/// the question and labels collapse to single spaces, so the only `|` and
/// `, ` separators are the ones inserted here (given labels free of them).
std::string build_input(const Example& example, Scenario scenario);

struct FinetuneRecord {
  std::string id;
  std::string input;
  std::string target;
};

struct FinetuneStats {
  std::size_t substituted = 0;
  std::size_t unmapped = 0;
};

/// Input from build_input; target is the canonical gold query, verbalized
/// through `labels` when given. Throws on gold queries that do not parse.
FinetuneRecord build_finetune(const Example& example, Scenario scenario,
                              const verbalizer::LabelMap* labels,
                              FinetuneStats* stats = nullptr);

nlohmann::json to_json(const FinetuneRecord& record);
nlohmann::json to_json(const Example& example);

}  // namespace sparqlkit::corpus
