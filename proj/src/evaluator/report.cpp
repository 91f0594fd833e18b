#include "sparqlkit/evaluator/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include "sparqlkit/error.hpp"
#include "sparqlkit/util/parallel.hpp"

namespace sparqlkit::evaluator {

std::vector<EvalInput> read_eval_inputs(std::istream& in) {
  std::vector<EvalInput> inputs;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "at input line " + std::to_string(number);
    try {
      const auto record = nlohmann::json::parse(line);
      EvalInput input;
      if (record.contains("id")) {
        const auto& id = record["id"];
        input.id = id.is_string() ? id.get<std::string>() : id.dump();
      } else {
        input.id = std::to_string(number);
      }
      input.predicted_query = record.at("predicted_query").get<std::string>();
      input.gold_query = record.at("gold_query").get<std::string>();
      if (record.contains("gold_answers") && !record["gold_answers"].is_null()) {
        input.gold_answers = answers_from_json(record["gold_answers"]);
      }
      inputs.push_back(std::move(input));
    } catch (const nlohmann::json::exception& e) {
      throw MalformedRecord(where, e.what());
    } catch (const MalformedRecord& e) {
      throw MalformedRecord(where, e.what());
    }
  }
  return inputs;
}

std::vector<EvalInput> pair_query_lines(std::istream& pred, std::istream& gold) {
  std::vector<EvalInput> inputs;
  std::string p;
  std::string g;
  for (;;) {
    const bool has_p = static_cast<bool>(std::getline(pred, p));
    const bool has_g = static_cast<bool>(std::getline(gold, g));
    if (!has_p && !has_g) break;
    if (has_p != has_g) {
      throw MalformedRecord("at line " + std::to_string(inputs.size() + 1),
                            "prediction and gold files differ in length");
    }
    EvalInput input;
    input.id = std::to_string(inputs.size() + 1);
    input.predicted_query = p;
    input.gold_query = g;
    inputs.push_back(std::move(input));
  }
  return inputs;
}

EvalRecord evaluate_record(const EvalInput& input, const EvalOptions& options,
                           AnswerSource* source) {
  EvalRecord record;
  record.id = input.id;
  record.error_class = classify_error(input.predicted_query, input.gold_query);
  record.qm = query_match(input.predicted_query, input.gold_query, options.mode);

  std::optional<AnswerSet> gold = input.gold_answers;
  if (!gold && source) {
    auto result = source->execute(input.gold_query);
    if (result.error) {
      record.gold_error = result.error_kind + ": " + result.message;
    } else {
      gold = std::move(result.answers);
    }
  }
  if (!gold || !source) return record;

  auto predicted = source->execute(input.predicted_query);
  if (predicted.error) {
    record.execution_error = predicted.error_kind + ": " + predicted.message;
    record.f1 = F1Score{};
  } else {
    record.f1 = answer_f1(predicted.answers, *gold, options.f1);
  }
  return record;
}

std::vector<EvalRecord> evaluate_all(const std::vector<EvalInput>& inputs,
                                     const EvalOptions& options, AnswerSource* source,
                                     std::size_t jobs) {
  std::vector<EvalRecord> records(inputs.size());
  util::parallel_for(inputs.size(), jobs, [&](std::size_t i) {
    records[i] = evaluate_record(inputs[i], options, source);
  });
  return records;
}

EvalReport aggregate_report(const std::vector<EvalRecord>& records) {
  EvalReport report;
  report.n = records.size();
  std::size_t matches = 0;
  double f1_sum = 0.0;
  for (const auto& r : records) {
    if (r.qm) ++matches;
    ++report.error_counts[static_cast<std::size_t>(r.error_class)];
    if (r.f1) {
      f1_sum += r.f1->f1;
      ++report.f1_count;
    }
    if (!r.execution_error.empty()) ++report.execution_errors;
  }
  report.empty = report.n == 0;
  if (report.n > 0) report.qm_rate = static_cast<double>(matches) / report.n;
  if (report.f1_count > 0) report.macro_f1 = f1_sum / report.f1_count;
  return report;
}

nlohmann::json to_json(const EvalRecord& record) {
  nlohmann::json j = {{"id", record.id},
                      {"qm", record.qm},
                      {"error_class", to_string(record.error_class)}};
  if (record.f1) {
    j["precision"] = record.f1->precision;
    j["recall"] = record.f1->recall;
    j["f1"] = record.f1->f1;
  } else {
    j["f1"] = nullptr;
  }
  if (!record.execution_error.empty()) j["execution_error"] = record.execution_error;
  if (!record.gold_error.empty()) j["gold_error"] = record.gold_error;
  return j;
}

nlohmann::json to_json(const EvalReport& report) {
  nlohmann::json counts = nlohmann::json::object();
  for (auto c : kAllErrorClasses) counts[to_string(c)] = report.count(c);
  return {{"n", report.n},
          {"qm_rate", report.qm_rate},
          {"macro_f1", report.macro_f1},
          {"f1_count", report.f1_count},
          {"error_counts", counts},
          {"triplet_errors", report.triplet_errors()},
          {"execution_errors", report.execution_errors},
          {"empty", report.empty}};
}

void print_report(std::ostream& out, const EvalReport& report) {
  char line[128];
  auto row = [&](const char* label, const std::string& value) {
    std::snprintf(line, sizeof line, "  %-18s %12s\n", label, value.c_str());
    out << line;
  };
  auto pct = [](double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", 100.0 * x);
    return std::string(buf);
  };
  out << "evaluation report" << (report.empty ? " (no records)" : "") << '\n';
  row("records", std::to_string(report.n));
  row("query match", pct(report.qm_rate));
  row("macro F1", report.f1_count ? pct(report.macro_f1) : std::string("n/a"));
  row("F1 scored", std::to_string(report.f1_count));
  row("execution errors", std::to_string(report.execution_errors));
  for (auto c : kAllErrorClasses) row(to_string(c), std::to_string(report.count(c)));
  row("triplet errors", std::to_string(report.triplet_errors()));
}

}  // namespace sparqlkit::evaluator
