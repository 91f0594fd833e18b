#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sparqlkit/endpoint/sparql_client.hpp"
#include "sparqlkit/evaluator/answers.hpp"

namespace sparqlkit::evaluator {

/// Outcome of running one query in batch mode. Failures do not throw; they
/// leave `answers` empty and describe the problem.
struct ExecutionResult {
  AnswerSet answers;
  bool error = false;
  std::string error_kind;  // "parse", "network", "timeout", "endpoint", "missing"
  std::string message;
  bool from_cache = false;
};

/// Something that can produce the answers of a query.
class AnswerSource {
 public:
  virtual ~AnswerSource() = default;
  /// Never throws for per-query failures. Must be safe to call concurrently.
  virtual ExecutionResult execute(const std::string& query) = 0;
};

struct ExecutorConfig {
  endpoint::EndpointConfig endpoint;
  /// Empty disables the cache.
  std::filesystem::path cache_dir;
  /// Parse queries before sending them; queries that fail are reported as
  /// "parse" errors without contacting the endpoint.
  bool strict = true;
};

/// Runs queries against a SPARQL endpoint behind a content-addressed disk
/// cache. With an empty endpoint URL only cached results are served.
class QueryExecutor : public AnswerSource {
 public:
  explicit QueryExecutor(ExecutorConfig config);

  /// Throws SyntaxError/LexError/UnsupportedFeature (strict mode),
  /// NetworkError, TimeoutError or EndpointError.
  AnswerSet run(const std::string& query);

  ExecutionResult execute(const std::string& query) override;

  /// Cache file name for a query at an endpoint: SHA-256 of both.
  static std::string cache_key(const std::string& endpoint_url, const std::string& query);
  std::filesystem::path cache_path(const std::string& query) const;

  std::size_t cache_hits() const { return cache_hits_.load(); }
  std::size_t endpoint_requests() const;

 private:
  AnswerSet run(const std::string& query, bool* from_cache);
  std::optional<nlohmann::json> read_cache(const std::string& query) const;
  void write_cache(const std::string& query, const nlohmann::json& document);

  ExecutorConfig config_;
  std::unique_ptr<endpoint::SparqlClient> client_;
  std::mutex write_mutex_;
  std::atomic<std::size_t> cache_hits_{0};
  std::atomic<std::size_t> temp_counter_{0};
};

/// Precomputed answers keyed by canonical query text (raw text for queries
/// that do not parse). Lines are JSON objects `{"query": ..., "answers": ...}`
/// where answers is an array of strings or a boolean.
class AnswerTable : public AnswerSource {
 public:
  void add(const std::string& query, AnswerSet answers);
  static AnswerTable read(std::istream& in);
  static AnswerTable load(const std::filesystem::path& path);

  ExecutionResult execute(const std::string& query) override;
  std::size_t size() const { return answers_.size(); }

 private:
  static std::string key(const std::string& query);
  std::map<std::string, AnswerSet> answers_;
};

}  // namespace sparqlkit::evaluator
