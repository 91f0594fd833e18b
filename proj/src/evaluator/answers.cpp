#include "sparqlkit/evaluator/answers.hpp"

#include <algorithm>
#include <iterator>

#include "sparqlkit/error.hpp"

namespace sparqlkit::evaluator {

AnswerSet answers_from_results(const nlohmann::json& document) {
  if (!document.is_object()) {
    throw EndpointError(200, "results document is not a JSON object");
  }
  if (auto it = document.find("boolean"); it != document.end() && it->is_boolean()) {
    return AnswerSet::boolean(it->get<bool>());
  }
  auto results = document.find("results");
  if (results == document.end() || !results->contains("bindings")) {
    throw EndpointError(200, "results document has neither boolean nor bindings");
  }
  std::set<std::string> values;
  for (const auto& row : (*results)["bindings"]) {
    for (const auto& [name, binding] : row.items()) {
      if (binding.is_object() && binding.contains("value")) {
        values.insert(binding["value"].get<std::string>());
      }
    }
  }
  return AnswerSet::of(std::move(values));
}

AnswerSet answers_from_json(const nlohmann::json& value) {
  if (value.is_boolean()) return AnswerSet::boolean(value.get<bool>());
  if (!value.is_array()) {
    throw MalformedRecord("answers", "expected an array of strings or a boolean");
  }
  std::set<std::string> values;
  for (const auto& item : value) {
    if (item.is_string()) {
      values.insert(item.get<std::string>());
    } else {
      values.insert(item.dump());
    }
  }
  return AnswerSet::of(std::move(values));
}

nlohmann::json to_json(const AnswerSet& answers) {
  if (answers.is_boolean()) return std::get<bool>(answers.value);
  return nlohmann::json(*answers.values());
}

F1Score answer_f1(const AnswerSet& predicted, const AnswerSet& gold,
                  const F1Options& options) {
  if (predicted.is_boolean() || gold.is_boolean()) {
    const bool match = predicted.is_boolean() && gold.is_boolean() &&
                       std::get<bool>(predicted.value) == std::get<bool>(gold.value);
    return match ? F1Score{1.0, 1.0, 1.0} : F1Score{};
  }
  const auto& p = *predicted.values();
  const auto& g = *gold.values();
  if (p.empty() && g.empty()) {
    const double s = options.both_empty_score;
    return {s, s, s};
  }
  std::vector<std::string> common;
  std::set_intersection(p.begin(), p.end(), g.begin(), g.end(),
                        std::back_inserter(common));
  const double hits = static_cast<double>(common.size());
  F1Score score;
  score.precision = p.empty() ? 0.0 : hits / static_cast<double>(p.size());
  score.recall = g.empty() ? 0.0 : hits / static_cast<double>(g.size());
  const double sum = score.precision + score.recall;
  score.f1 = sum > 0.0 ? 2.0 * score.precision * score.recall / sum : 0.0;
  return score;
}

}  // namespace sparqlkit::evaluator
