#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sparqlkit/evaluator/answers.hpp"
#include "sparqlkit/evaluator/error_class.hpp"
#include "sparqlkit/evaluator/executor.hpp"
#include "sparqlkit/evaluator/query_match.hpp"

namespace sparqlkit::evaluator {

/// One line of evaluation input.
struct EvalInput {
  std::string id;
  std::string predicted_query;
  std::string gold_query;
  std::optional<AnswerSet> gold_answers;
};

/// Reads `{id, predicted_query, gold_query, gold_answers?}` JSON lines.
/// Blank lines are skipped. Throws MalformedRecord.
std::vector<EvalInput> read_eval_inputs(std::istream& in);

/// Pairs two files of one query per line; ids are 1-based line numbers.
/// Throws MalformedRecord when the line counts differ.
std::vector<EvalInput> pair_query_lines(std::istream& pred, std::istream& gold);

struct EvalOptions {
  QmMode mode = QmMode::Ast;
  F1Options f1;
};

struct EvalRecord {
  std::string id;
  bool qm = false;
  ErrorClass error_class = ErrorClass::Correct;
  /// Unset when no answer source was available for this record.
  std::optional<F1Score> f1;
  /// Set when the prediction could not be executed; it then scores F1 0.
  std::string execution_error;
  /// Set when gold answers were unavailable; the record has no F1.
  std::string gold_error;
};

/// Scores one input. Gold answers come from the input when present,
/// otherwise from `source`; predicted answers always from `source`. Without
/// a source no F1 is computed. Throws GoldUnparsable.
EvalRecord evaluate_record(const EvalInput& input, const EvalOptions& options,
                           AnswerSource* source);

/// evaluate_record over all inputs on up to `jobs` threads; output order
/// matches input order.
std::vector<EvalRecord> evaluate_all(const std::vector<EvalInput>& inputs,
                                     const EvalOptions& options, AnswerSource* source,
                                     std::size_t jobs = 1);

struct EvalReport {
  std::size_t n = 0;
  double qm_rate = 0.0;
  /// Mean F1 over the records that have one.
  double macro_f1 = 0.0;
  std::size_t f1_count = 0;
  std::array<std::size_t, kAllErrorClasses.size()> error_counts{};
  std::size_t execution_errors = 0;
  /// True when rates are reported as 0 only because nothing was scored.
  bool empty = true;

  std::size_t count(ErrorClass c) const {
    return error_counts[static_cast<std::size_t>(c)];
  }
  std::size_t triplet_errors() const {
    return count(ErrorClass::TripletFlip) + count(ErrorClass::TripletOther);
  }
};

EvalReport aggregate_report(const std::vector<EvalRecord>& records);

nlohmann::json to_json(const EvalRecord& record);
nlohmann::json to_json(const EvalReport& report);

/// Human-readable summary table.
void print_report(std::ostream& out, const EvalReport& report);

}  // namespace sparqlkit::evaluator
