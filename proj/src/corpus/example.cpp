#include "sparqlkit/corpus/example.hpp"

#include "sparqlkit/error.hpp"
#include "sparqlkit/sparql/serializer.hpp"
#include "sparqlkit/util/strings.hpp"
#include "sparqlkit/verbalizer/verbalizer.hpp"

namespace sparqlkit::corpus {

Scenario scenario_from_string(std::string_view name) {
  const auto lower = util::to_lower(name);
  if (lower == "gold-both") return Scenario::GoldBoth;
  if (lower == "gold-entities") return Scenario::GoldEntitiesOnly;
  throw ConfigError("unknown scenario '" + std::string(name) +
                    "' (expected gold-both or gold-entities)");
}

const char* to_string(Scenario scenario) {
  return scenario == Scenario::GoldBoth ? "gold-both" : "gold-entities";
}

namespace {

std::string collapse(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

std::string segment(const std::vector<LabeledIri>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += collapse(item.iri);
    const auto label = collapse(item.label);
    if (!label.empty()) out += " " + label;
  }
  return out;
}

}  // namespace

std::string build_input(const Example& example, Scenario scenario) {
  const auto entities = segment(example.entities);
  std::string out = collapse(example.question) + " | " + entities;
  if (scenario == Scenario::GoldEntitiesOnly) return out;
  out += (entities.empty() ? "| " : " | ") + segment(example.relations);
  return out;
}

FinetuneRecord build_finetune(const Example& example, Scenario scenario,
                              const verbalizer::LabelMap* labels,
                              FinetuneStats* stats) {
  FinetuneRecord record;
  record.id = example.id;
  record.input = build_input(example, scenario);
  record.target = sparql::canonicalize(example.gold_query);
  if (labels) {
    auto result = verbalizer::verbalize(record.target, *labels);
    record.target = std::move(result.text);
    if (stats) {
      stats->substituted += result.substituted;
      stats->unmapped += result.unmapped;
    }
  }
  return record;
}

nlohmann::json to_json(const FinetuneRecord& record) {
  return {{"id", record.id}, {"input", record.input}, {"target", record.target}};
}

nlohmann::json to_json(const Example& example) {
  auto pairs = [](const std::vector<LabeledIri>& items) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& item : items) out.push_back({{"iri", item.iri}, {"label", item.label}});
    return out;
  };
  nlohmann::json j = {{"id", example.id},
                      {"question", example.question},
                      {"query", example.gold_query},
                      {"entities", pairs(example.entities)},
                      {"relations", pairs(example.relations)}};
  if (example.answers) j["answers"] = evaluator::to_json(*example.answers);
  return j;
}

}  // namespace sparqlkit::corpus
