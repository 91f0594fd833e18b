#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <mutex>
#include <string>

#include "json.hpp"

namespace sparqlkit::endpoint {

struct EndpointConfig {
  std::string url;  // e.g. https://query.wikidata.org/sparql
  std::chrono::milliseconds timeout{30000};
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  /// Upper bound on requests per second across all threads; 0 = unlimited.
  double max_requests_per_second = 0.0;
  /// Queries longer than this are sent as a form POST instead of GET.
  std::size_t max_get_length = 2000;
  std::string user_agent = "sparqlkit/0.1 (batch SPARQL corpus tooling)";
};

struct ParsedUrl {
  std::string scheme_host_port;  // "http://host:port"
  std::string path;              // "/sparql"
};

/// Splits an http(s) URL. Throws ConfigError for anything else.
ParsedUrl parse_url(const std::string& url);

/// SPARQL Protocol client speaking `application/sparql-results+json`.
///
/// Transient failures (connection errors, timeouts, HTTP 5xx and 429) are
/// retried with exponential backoff up to `max_retries` times. Safe to share
/// between threads; the rate limit is global to the instance.
class SparqlClient {
 public:
  explicit SparqlClient(EndpointConfig config);

  /// Runs `query` and returns the decoded results document. Throws
  /// NetworkError, TimeoutError or EndpointError.
  nlohmann::json run(const std::string& query);

  const EndpointConfig& config() const { return config_; }
  std::size_t requests_sent() const;

 private:
  void wait_for_slot();

  EndpointConfig config_;
  ParsedUrl url_;
  mutable std::mutex mutex_;
  std::chrono::steady_clock::time_point next_slot_{};
  std::size_t requests_ = 0;
};

}  // namespace sparqlkit::endpoint
