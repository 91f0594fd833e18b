#include "sparqlkit/evaluator/executor.hpp"

#include <fstream>
#include <sstream>
#include <unistd.h>

#include "sparqlkit/error.hpp"
#include "sparqlkit/sparql/parser.hpp"
#include "sparqlkit/sparql/serializer.hpp"
#include "sparqlkit/util/sha256.hpp"

namespace sparqlkit::evaluator {

namespace fs = std::filesystem;

QueryExecutor::QueryExecutor(ExecutorConfig config) : config_(std::move(config)) {
  if (!config_.endpoint.url.empty()) {
    client_ = std::make_unique<endpoint::SparqlClient>(config_.endpoint);
  }
}

std::string QueryExecutor::cache_key(const std::string& endpoint_url,
                                     const std::string& query) {
  // Length-prefixed so that no (url, query) pair can collide with another.
  return util::sha256_hex(std::to_string(endpoint_url.size()) + ":" + endpoint_url +
                          "\n" + query);
}

fs::path QueryExecutor::cache_path(const std::string& query) const {
  const auto key = cache_key(config_.endpoint.url, query);
  return config_.cache_dir / key.substr(0, 2) / (key + ".json");
}

std::size_t QueryExecutor::endpoint_requests() const {
  return client_ ? client_->requests_sent() : 0;
}

std::optional<nlohmann::json> QueryExecutor::read_cache(const std::string& query) const {
  if (config_.cache_dir.empty()) return std::nullopt;
  std::ifstream in(cache_path(query));
  if (!in) return std::nullopt;
  try {
    auto entry = nlohmann::json::parse(in);
    // Guard against hash collisions and hand-edited files.
    if (entry.value("query", "") != query ||
        entry.value("endpoint", "") != config_.endpoint.url) {
      return std::nullopt;
    }
    return entry.at("result");
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void QueryExecutor::write_cache(const std::string& query, const nlohmann::json& document) {
  if (config_.cache_dir.empty()) return;
  const auto path = cache_path(query);
  const nlohmann::json entry = {
      {"endpoint", config_.endpoint.url}, {"query", query}, {"result", document}};
  std::lock_guard lock(write_mutex_);
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid()) + "-" +
         std::to_string(temp_counter_.fetch_add(1));
  {
    std::ofstream out(tmp);
    if (!out) return;  // an unwritable cache slows reruns but is not fatal
    out << entry.dump() << '\n';
  }
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
}

AnswerSet QueryExecutor::run(const std::string& query) { return run(query, nullptr); }

AnswerSet QueryExecutor::run(const std::string& query, bool* from_cache) {
  if (config_.strict) sparql::parse(query);
  if (auto cached = read_cache(query)) {
    cache_hits_.fetch_add(1);
    if (from_cache) *from_cache = true;
    return answers_from_results(*cached);
  }
  if (!client_) throw NetworkError("no endpoint configured and query not cached");
  auto document = client_->run(query);
  auto answers = answers_from_results(document);
  write_cache(query, document);
  return answers;
}

ExecutionResult QueryExecutor::execute(const std::string& query) {
  ExecutionResult result;
  auto fail = [&](const char* kind, const std::exception& e) {
    result = ExecutionResult{};
    result.error = true;
    result.error_kind = kind;
    result.message = e.what();
  };
  try {
    result.answers = run(query, &result.from_cache);
  } catch (const LexError& e) {
    fail("parse", e);
  } catch (const SyntaxError& e) {
    fail("parse", e);
  } catch (const UnsupportedFeature& e) {
    fail("parse", e);
  } catch (const TimeoutError& e) {
    fail("timeout", e);
  } catch (const NetworkError& e) {
    fail("network", e);
  } catch (const EndpointError& e) {
    fail("endpoint", e);
  }
  return result;
}

void AnswerTable::add(const std::string& query, AnswerSet answers) {
  answers_.insert_or_assign(key(query), std::move(answers));
}

std::string AnswerTable::key(const std::string& query) {
  try {
    return sparql::canonicalize(query);
  } catch (const Error&) {
    return query;
  }
}

AnswerTable AnswerTable::read(std::istream& in) {
  AnswerTable table;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto record = nlohmann::json::parse(line);
      table.add(record.at("query").get<std::string>(),
                answers_from_json(record.at("answers")));
    } catch (const nlohmann::json::exception& e) {
      throw MalformedRecord("at answers line " + std::to_string(number), e.what());
    }
  }
  return table;
}

AnswerTable AnswerTable::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open answers file " + path.string());
  return read(in);
}

ExecutionResult AnswerTable::execute(const std::string& query) {
  ExecutionResult result;
  auto it = answers_.find(key(query));
  if (it == answers_.end()) {
    result.error = true;
    result.error_kind = "missing";
    result.message = "no answers recorded for query";
  } else {
    result.answers = it->second;
  }
  return result;
}

}  // namespace sparqlkit::evaluator
