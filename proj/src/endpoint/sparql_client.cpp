#include "sparqlkit/endpoint/sparql_client.hpp"

#include <thread>

#include "httplib.h"

#include "sparqlkit/error.hpp"

namespace sparqlkit::endpoint {

ParsedUrl parse_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("endpoint URL '" + url + "' has no scheme");
  }
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ConfigError("endpoint URL '" + url + "' is not http(s)");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  ParsedUrl parsed;
  if (path_start == std::string::npos) {
    parsed.scheme_host_port = url;
    parsed.path = "/";
  } else {
    parsed.scheme_host_port = url.substr(0, path_start);
    parsed.path = url.substr(path_start);
  }
  if (parsed.scheme_host_port.size() <= scheme_end + 3) {
    throw ConfigError("endpoint URL '" + url + "' has no host");
  }
  return parsed;
}

SparqlClient::SparqlClient(EndpointConfig config)
    : config_(std::move(config)), url_(parse_url(config_.url)) {}

std::size_t SparqlClient::requests_sent() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

void SparqlClient::wait_for_slot() {
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mutex_);
    ++requests_;
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_slot_);
    if (config_.max_requests_per_second > 0.0) {
      const auto interval = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(1.0 / config_.max_requests_per_second));
      next_slot_ = slot + interval;
    }
  }
  std::this_thread::sleep_until(slot);
}

namespace {

std::string excerpt(const std::string& body) {
  constexpr std::size_t kMax = 200;
  return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}

bool transient_status(int status) { return status >= 500 || status == 429; }

}  // namespace

nlohmann::json SparqlClient::run(const std::string& query) {
  const auto timeout_us = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout);
  auto backoff = config_.initial_backoff;

  for (int attempt = 0;; ++attempt) {
    const bool last = attempt >= config_.max_retries;
    wait_for_slot();

    httplib::Client client(url_.scheme_host_port);
    client.set_connection_timeout(timeout_us);
    client.set_read_timeout(timeout_us);
    client.set_write_timeout(timeout_us);
    client.set_follow_location(true);
    const httplib::Headers headers = {
        {"Accept", "application/sparql-results+json"},
        {"User-Agent", config_.user_agent},
    };

    const auto started = std::chrono::steady_clock::now();
    httplib::Result result;
    if (query.size() > config_.max_get_length) {
      result = client.Post(url_.path, headers, httplib::Params{{"query", query}});
    } else {
      result = client.Get(url_.path, httplib::Params{{"query", query}}, headers);
    }
    const auto elapsed = std::chrono::steady_clock::now() - started;

    if (!result) {
      const auto error = result.error();
      const bool timed_out = error == httplib::Error::ConnectionTimeout ||
                             (error == httplib::Error::Read &&
                              elapsed + std::chrono::milliseconds(20) >= config_.timeout);
      if (last) {
        if (timed_out) {
          throw TimeoutError("request to " + config_.url + " timed out after " +
                             std::to_string(config_.timeout.count()) + " ms");
        }
        throw NetworkError("request to " + config_.url +
                           " failed: " + httplib::to_string(error));
      }
    } else if (result->status >= 200 && result->status < 300) {
      try {
        return nlohmann::json::parse(result->body);
      } catch (const nlohmann::json::parse_error&) {
        throw EndpointError(result->status,
                            "invalid results document: " + excerpt(result->body));
      }
    } else if (!transient_status(result->status) || last) {
      throw EndpointError(result->status, excerpt(result->body));
    }

    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

}  // namespace sparqlkit::endpoint
