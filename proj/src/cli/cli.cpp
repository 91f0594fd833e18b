#include "sparqlkit/cli/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sparqlkit/corpus/dataset.hpp"
#include "sparqlkit/corpus/example.hpp"
#include "sparqlkit/corpus/pretrain.hpp"
#include "sparqlkit/error.hpp"
#include "sparqlkit/evaluator/executor.hpp"
#include "sparqlkit/evaluator/report.hpp"
#include "sparqlkit/sparql/lexer.hpp"
#include "sparqlkit/sparql/parser.hpp"
#include "sparqlkit/sparql/serializer.hpp"
#include "sparqlkit/verbalizer/label_fetcher.hpp"
#include "sparqlkit/verbalizer/verbalizer.hpp"

namespace sparqlkit::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr const char* kVersion = "0.1.0";

// Round-trip precision, so that a manifest's config snapshot replays exactly.
std::string exact(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string dump(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

struct CommonOptions {
  std::string input = "-";
  std::string output = "-";
  std::string manifest;
  std::size_t jobs = 1;
};

class InputFile {
 public:
  InputFile(const std::string& path, std::istream& fallback) : stream_(&fallback) {
    if (path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw ConfigError("cannot open input file " + path);
    stream_ = &file_;
  }
  std::istream& get() { return *stream_; }

 private:
  std::ifstream file_;
  std::istream* stream_;
};

class OutputFile {
 public:
  OutputFile(const std::string& path, std::ostream& fallback) : path_(path), stream_(&fallback) {
    if (path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw ConfigError("cannot open output file " + path);
    stream_ = &file_;
  }
  std::ostream& get() { return *stream_; }
  void close() {
    stream_->flush();
    if (!*stream_) throw Error("failed writing " + (path_ == "-" ? "stdout" : path_));
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_;
};

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

struct Manifest {
  std::string command;
  json counts = json::object();
  std::optional<std::uint64_t> seed;
  json extra = json::object();
};

void write_manifest(const Manifest& manifest, const CommonOptions& common,
                    const CLI::App& sub, const std::vector<std::string>& args,
                    Clock::time_point start) {
  std::string path = common.manifest;
  if (path.empty()) {
    path = common.output != "-" ? common.output + ".manifest.json"
                                : manifest.command + ".manifest.json";
  }
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  json j = {{"command", manifest.command},
            {"version", kVersion},
            {"argv", args},
            {"config", "[" + sub.get_name() + "]\n" + sub.config_to_str(true, false)},
            {"input", common.input},
            {"output", common.output},
            {"counts", manifest.counts},
            {"wall_time_seconds", seconds}};
  j["seed"] = manifest.seed ? json(*manifest.seed) : json(nullptr);
  for (const auto& [key, value] : manifest.extra.items()) j[key] = value;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write manifest " + path);
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------- corrupt

struct CorruptOptions {
  std::string objective = "mixed";
  corruption::CorruptionConfig config;
  std::string labels;
  bool no_verbalize = false;
};

int run_corrupt(const CorruptOptions& o, const CommonOptions& common, Streams& io,
                Manifest& manifest) {
  corpus::PretrainOptions options;
  options.corruption = o.config;
  options.jobs = common.jobs;
  if (o.objective != "mixed") {
    options.objectives = {corruption::objective_from_string(o.objective)};
  }
  std::optional<verbalizer::LabelMap> labels;
  if (!o.labels.empty() && !o.no_verbalize) {
    labels = verbalizer::LabelMap::load(o.labels);
    options.labels = &*labels;
  }
  manifest.seed = o.config.rng_seed;

  InputFile input(common.input, io.in);
  const auto lines = read_lines(input.get());
  const auto result = corpus::build_pretrain_corpus(lines, options);

  OutputFile output(common.output, io.out);
  for (const auto& pair : result.pairs) output.get() << dump(corpus::to_json(pair)) << '\n';
  output.close();

  for (const auto& skip : result.skipped) {
    io.err << "line " << skip.line << " skipped: " << skip.reason << '\n';
  }
  manifest.counts = {{"processed", result.processed},
                     {"skipped", result.skipped.size()},
                     {"pairs", result.pairs.size()},
                     {"substituted", result.substituted},
                     {"unmapped", result.unmapped},
                     {"collisions", labels ? labels->collisions().size() : 0}};
  return result.skipped.empty() ? kSuccess : kPartial;
}

// ---------------------------------------------------- verbalize / deverbalize

struct VerbalizeOptions {
  std::string labels;
  std::string field;
};

int run_verbalize(bool forward, const VerbalizeOptions& o, const CommonOptions& common,
                  Streams& io, Manifest& manifest) {
  const auto labels = verbalizer::LabelMap::load(o.labels);
  InputFile input(common.input, io.in);
  OutputFile output(common.output, io.out);
  std::size_t lines = 0;
  std::size_t skipped = 0;
  std::size_t substituted = 0;
  std::size_t missing = 0;
  std::size_t collided = 0;

  auto transform = [&](const std::string& text, std::size_t number) -> std::string {
    try {
      if (forward) {
        auto r = verbalizer::verbalize(text, labels);
        substituted += r.substituted;
        missing += r.unmapped;
        return r.text;
      }
      auto r = verbalizer::deverbalize(text, labels);
      substituted += r.resolved;
      missing += r.unresolved;
      collided += r.collided;
      return r.text;
    } catch (const LexError& e) {
      ++skipped;
      io.err << "line " << number << " passed through unchanged: " << e.what() << '\n';
      return text;
    }
  };

  std::string line;
  std::size_t number = 0;
  while (std::getline(input.get(), line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++lines;
    if (is_blank(line)) {
      output.get() << line << '\n';
      continue;
    }
    if (o.field.empty()) {
      output.get() << transform(line, number) << '\n';
      continue;
    }
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      throw MalformedRecord("at line " + std::to_string(number), e.what());
    }
    auto it = record.find(o.field);
    if (it != record.end() && it->is_string()) {
      *it = transform(it->get<std::string>(), number);
    }
    output.get() << dump(record) << '\n';
  }
  output.close();

  manifest.counts = {{"lines", lines},
                     {"skipped", skipped},
                     {forward ? "substituted" : "resolved", substituted},
                     {forward ? "unmapped" : "unresolved", missing},
                     {"collisions", labels.collisions().size()}};
  if (!forward) manifest.counts["collided"] = collided;
  return skipped == 0 ? kSuccess : kPartial;
}

// ------------------------------------------------------------- fetch-labels

struct FetchOptions {
  std::string endpoint;
  std::string language = "en";
  double rate = 0.0;
  std::size_t batch_size = 50;
  int timeout_ms = 30000;
  int retries = 3;
};

endpoint::EndpointConfig endpoint_config(const std::string& url, int timeout_ms,
                                         int retries, double rate) {
  endpoint::EndpointConfig config;
  config.url = url;
  config.timeout = std::chrono::milliseconds(timeout_ms);
  config.max_retries = retries;
  config.max_requests_per_second = rate;
  return config;
}

std::string tsv_safe(std::string text) {
  for (auto& c : text) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

int run_fetch(const FetchOptions& o, const CommonOptions& common, Streams& io,
              Manifest& manifest) {
  InputFile input(common.input, io.in);
  std::vector<std::string> iris;
  std::size_t skipped = 0;
  std::size_t number = 0;
  for (const auto& line : read_lines(input.get())) {
    ++number;
    if (is_blank(line)) continue;
    try {
      auto found = corpus::collect_iris(line);
      iris.insert(iris.end(), found.entities.begin(), found.entities.end());
      iris.insert(iris.end(), found.relations.begin(), found.relations.end());
    } catch (const LexError& e) {
      ++skipped;
      io.err << "line " << number << " skipped: " << e.what() << '\n';
    }
  }

  endpoint::SparqlClient client(endpoint_config(o.endpoint, o.timeout_ms, o.retries, o.rate));
  verbalizer::LabelFetchConfig config;
  config.language = o.language;
  config.batch_size = o.batch_size;
  config.max_in_flight = common.jobs;
  const auto result = verbalizer::fetch_labels(iris, client, config);

  OutputFile output(common.output, io.out);
  output.get() << "# labels (" << o.language << ") from " << o.endpoint << '\n';
  for (const auto& entry : result.entries) {
    output.get() << entry.iri << '\t' << tsv_safe(entry.label) << '\n';
  }
  output.close();
  for (const auto& iri : result.missing) io.err << "no label: " << iri << '\n';

  manifest.counts = {{"iris", result.entries.size() + result.missing.size()},
                     {"labels", result.entries.size()},
                     {"missing", result.missing.size()},
                     {"requests", result.requests},
                     {"skipped", skipped}};
  return skipped == 0 && result.missing.empty() ? kSuccess : kPartial;
}

// ----------------------------------------------------------- build-finetune

struct FinetuneOptions {
  std::string schema = "generic";
  std::string scenario = "gold-both";
  std::string labels;
  bool no_verbalize = false;
  std::string language = "en";
};

int run_finetune(const FinetuneOptions& o, const CommonOptions& common, Streams& io,
                 Manifest& manifest) {
  const auto schema = corpus::schema_from_string(o.schema);
  const auto scenario = corpus::scenario_from_string(o.scenario);
  std::optional<verbalizer::LabelMap> labels;
  if (!o.labels.empty()) labels = verbalizer::LabelMap::load(o.labels);

  corpus::DatasetOptions options;
  options.language = o.language;
  options.labels = labels ? &*labels : nullptr;
  InputFile input(common.input, io.in);
  const auto dataset = corpus::read_dataset(input.get(), schema, options);

  const verbalizer::LabelMap* verbalize_with = o.no_verbalize ? nullptr : options.labels;
  corpus::FinetuneStats stats;
  OutputFile output(common.output, io.out);
  for (const auto& example : dataset.examples) {
    const auto record = corpus::build_finetune(example, scenario, verbalize_with, &stats);
    output.get() << dump(corpus::to_json(record)) << '\n';
  }
  output.close();

  const auto& s = dataset.stats;
  if (s.skipped() > 0) {
    io.err << "skipped " << s.missing_query << " record(s) without a query and "
           << s.unparsable_query << " with an unparsable query\n";
  }
  manifest.counts = {{"records", s.records},
                     {"processed", dataset.examples.size()},
                     {"skipped", s.skipped()},
                     {"skipped_missing_query", s.missing_query},
                     {"skipped_unparsable_query", s.unparsable_query},
                     {"unlabeled", s.unlabeled},
                     {"substituted", stats.substituted},
                     {"unmapped", stats.unmapped},
                     {"collisions", labels ? labels->collisions().size() : 0}};
  manifest.extra["scenario"] = corpus::to_string(scenario);
  return s.skipped() == 0 ? kSuccess : kPartial;
}

// ------------------------------------------------- evaluate / classify-errors

struct EvaluateOptions {
  std::string pred;
  std::string gold;
  std::string answers;
  std::string endpoint;
  std::string mode = "ast";
  std::string report;
  std::string cache_dir;
  double both_empty_score = 1.0;
  int timeout_ms = 30000;
  int retries = 3;
  double rate = 0.0;
  bool no_strict = false;
};

std::vector<evaluator::EvalInput> load_eval_inputs(const EvaluateOptions& o,
                                                   const CommonOptions& common,
                                                   Streams& io) {
  std::vector<evaluator::EvalInput> inputs;
  if (!o.pred.empty() || !o.gold.empty()) {
    if (o.pred.empty() || o.gold.empty()) {
      throw ConfigError("--pred and --gold must be given together");
    }
    InputFile pred(o.pred, io.in);
    InputFile gold(o.gold, io.in);
    inputs = evaluator::pair_query_lines(pred.get(), gold.get());
  } else {
    InputFile input(common.input, io.in);
    inputs = evaluator::read_eval_inputs(input.get());
  }
  for (const auto& in : inputs) {
    try {
      evaluator::parse_gold(in.gold_query);
    } catch (const GoldUnparsable& e) {
      throw ConfigError("record " + in.id + ": " + e.what());
    }
  }
  return inputs;
}

void write_report(const std::string& path, const json& report) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write report " + path);
  out << report.dump(2) << '\n';
}

int run_evaluate(bool classify_only, const EvaluateOptions& o, const CommonOptions& common,
                 Streams& io, Manifest& manifest) {
  const auto inputs = load_eval_inputs(o, common, io);
  evaluator::EvalOptions options;
  options.mode = evaluator::qm_mode_from_string(o.mode);
  options.f1.both_empty_score = o.both_empty_score;

  std::unique_ptr<evaluator::AnswerSource> source;
  evaluator::QueryExecutor* executor = nullptr;
  if (!classify_only) {
    if (!o.answers.empty() && !o.endpoint.empty()) {
      throw ConfigError("--answers and --endpoint are mutually exclusive");
    }
    if (!o.answers.empty()) {
      source = std::make_unique<evaluator::AnswerTable>(evaluator::AnswerTable::load(o.answers));
    } else if (!o.endpoint.empty() || !o.cache_dir.empty()) {
      evaluator::ExecutorConfig config;
      config.endpoint = endpoint_config(o.endpoint, o.timeout_ms, o.retries, o.rate);
      config.cache_dir = o.cache_dir;
      config.strict = !o.no_strict;
      auto owned = std::make_unique<evaluator::QueryExecutor>(std::move(config));
      executor = owned.get();
      source = std::move(owned);
    }
  }

  const auto records = evaluator::evaluate_all(inputs, options, source.get(), common.jobs);
  const auto report = evaluator::aggregate_report(records);

  OutputFile output(common.output, io.out);
  std::size_t gold_errors = 0;
  for (const auto& record : records) {
    if (!record.gold_error.empty()) {
      ++gold_errors;
      io.err << "record " << record.id << ": gold answers unavailable ("
             << record.gold_error << ")\n";
    }
    json j = evaluator::to_json(record);
    if (classify_only) j = {{"id", record.id}, {"error_class", j["error_class"]}};
    output.get() << dump(j) << '\n';
  }
  output.close();

  evaluator::print_report(io.err, report);
  json report_json = evaluator::to_json(report);
  report_json["mode"] = evaluator::to_string(options.mode);
  write_report(o.report, report_json);

  std::size_t qm_true = 0;
  for (const auto& r : records) qm_true += r.qm ? 1 : 0;
  manifest.counts = {{"records", records.size()},
                     {"qm_true", qm_true},
                     {"execution_errors", report.execution_errors},
                     {"gold_errors", gold_errors},
                     {"skipped", gold_errors}};
  if (executor) {
    manifest.counts["cache_hits"] = executor->cache_hits();
    manifest.counts["endpoint_requests"] = executor->endpoint_requests();
  }
  manifest.extra["report"] = report_json;
  return gold_errors == 0 ? kSuccess : kPartial;
}

// -------------------------------------------------------------- parse-check

int run_parse_check(const CommonOptions& common, Streams& io, Manifest& manifest) {
  InputFile input(common.input, io.in);
  OutputFile output(common.output, io.out);
  std::size_t ok = 0;
  std::size_t failed = 0;
  std::size_t number = 0;
  for (const auto& line : read_lines(input.get())) {
    ++number;
    if (is_blank(line)) continue;
    json j = {{"line", number}};
    try {
      j["canonical"] = sparql::canonicalize(line);
      j["ok"] = true;
      ++ok;
    } catch (const Error& e) {
      j["ok"] = false;
      j["error"] = e.what();
      ++failed;
    }
    output.get() << dump(j) << '\n';
  }
  output.close();
  manifest.counts = {{"lines", ok + failed}, {"processed", ok}, {"skipped", failed}};
  return failed == 0 ? kSuccess : kPartial;
}

void add_common(CLI::App* sub, CommonOptions& common, bool with_input = true) {
  if (with_input) {
    sub->add_option("-i,--input", common.input, "Input file, - for stdin")
        ->capture_default_str();
  }
  sub->add_option("-o,--output", common.output, "Output file, - for stdout")
      ->capture_default_str();
  sub->add_option("--manifest", common.manifest,
                  "Run manifest path (default: <output>.manifest.json, or "
                  "<command>.manifest.json when writing to stdout)");
  sub->add_option("-j,--jobs", common.jobs, "Worker threads")
      ->capture_default_str()
      ->check(CLI::Range(1, 256));
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  const auto start = Clock::now();
  Streams io{in, out, err};

  CLI::App app{"SPARQL corpus engineering and evaluation toolkit", "sparqlkit"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "TOML/INI file with option values, one section per command");
  app.require_subcommand(1);

  CommonOptions common;
  auto probability = CLI::Range(0.0, 1.0);

  CorruptOptions corrupt;
  auto* c = app.add_subcommand("corrupt", "Emit pretraining pairs from one query per line");
  add_common(c, common);
  c->add_option("--objective", corrupt.objective, "toc, mlm, tfc, soc, or mixed (toc + mlm)")
      ->capture_default_str()
      ->check(CLI::IsMember({"toc", "mlm", "tfc", "soc", "mixed"}, CLI::ignore_case));
  c->add_option("--seed", corrupt.config.rng_seed, "Random seed")->capture_default_str();
  c->add_option("--toc-identity-prob", corrupt.config.toc_identity_probability,
                "Probability a triple keeps its order")
      ->default_str(exact(corrupt.config.toc_identity_probability))
      ->check(probability);
  c->add_option("--mlm-rate", corrupt.config.mlm_corruption_rate, "Fraction of tokens masked")
      ->default_str(exact(corrupt.config.mlm_corruption_rate))
      ->check(probability);
  c->add_option("--mlm-mean-span", corrupt.config.mlm_mean_span_length, "Mean masked span length")
      ->default_str(exact(corrupt.config.mlm_mean_span_length))
      ->check(CLI::PositiveNumber);
  c->add_option("--soc-fraction", corrupt.config.soc_shuffle_fraction,
                "Fraction of tokens shuffled by soc")
      ->default_str(exact(corrupt.config.soc_shuffle_fraction))
      ->check(probability);
  c->add_option("--tfc-flip-prob", corrupt.config.tfc_flip_probability,
                "Per-triple flip probability for tfc")
      ->default_str(exact(corrupt.config.tfc_flip_probability))
      ->check(probability);
  c->add_option("--labels", corrupt.labels, "Label map (TSV); verbalizes IRIs first");
  c->add_flag("--no-verbalize", corrupt.no_verbalize, "Keep IRIs even when --labels is given");

  VerbalizeOptions verbalize_options;
  auto* v = app.add_subcommand("verbalize", "Replace IRIs by their labels");
  auto* d = app.add_subcommand("deverbalize", "Map labels back to IRIs");
  for (auto* sub : {v, d}) {
    add_common(sub, common);
    sub->add_option("--labels", verbalize_options.labels, "Label map (TSV)")->required();
    sub->add_option("--field", verbalize_options.field,
                    "Treat input as JSON lines and rewrite this string field");
  }

  FetchOptions fetch;
  auto* f = app.add_subcommand("fetch-labels", "Build a label map for the IRIs of a query file");
  add_common(f, common);
  f->add_option("--endpoint", fetch.endpoint, "SPARQL endpoint URL")->required();
  f->add_option("--lang", fetch.language, "Label language")->capture_default_str();
  f->add_option("--rate", fetch.rate, "Max requests per second, 0 for no limit")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  f->add_option("--batch-size", fetch.batch_size, "IRIs per request")
      ->capture_default_str()
      ->check(CLI::Range(1, 10000));
  f->add_option("--timeout-ms", fetch.timeout_ms, "Per-request timeout")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  f->add_option("--retries", fetch.retries, "Retries for transient failures")
      ->capture_default_str()
      ->check(CLI::Range(0, 20));

  FinetuneOptions finetune;
  auto* b = app.add_subcommand("build-finetune", "Build fine-tuning records from a dataset");
  add_common(b, common);
  b->add_option("--schema", finetune.schema, "generic, lcquad2 or qald")->capture_default_str();
  b->add_option("--scenario", finetune.scenario, "gold-both or gold-entities")
      ->capture_default_str();
  b->add_option("--labels", finetune.labels,
                "Label map (TSV); labels entities and verbalizes targets");
  b->add_flag("--no-verbalize", finetune.no_verbalize, "Keep IRIs in targets");
  b->add_option("--lang", finetune.language, "Question language (qald)")->capture_default_str();

  EvaluateOptions evaluate;
  auto* e = app.add_subcommand("evaluate", "Query match, answer F1 and error classes");
  auto* k = app.add_subcommand("classify-errors", "Error class of each prediction");
  for (auto* sub : {e, k}) {
    add_common(sub, common);
    sub->add_option("--pred", evaluate.pred, "Predicted queries, one per line");
    sub->add_option("--gold", evaluate.gold, "Gold queries, one per line");
    sub->add_option("--report", evaluate.report, "Write the aggregate report (JSON) here");
  }
  e->add_option("--mode", evaluate.mode, "Query match mode: text, ast or alpha")
      ->capture_default_str();
  e->add_option("--answers", evaluate.answers, "Precomputed answers (JSON lines)");
  e->add_option("--endpoint", evaluate.endpoint, "SPARQL endpoint URL");
  e->add_option("--cache-dir", evaluate.cache_dir, "Result cache directory")
      ->envname("SPARQLKIT_CACHE_DIR");
  e->add_option("--both-empty-score", evaluate.both_empty_score,
                "F1 when both answer sets are empty")
      ->capture_default_str()
      ->check(probability);
  e->add_option("--timeout-ms", evaluate.timeout_ms, "Per-request timeout")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  e->add_option("--retries", evaluate.retries, "Retries for transient failures")
      ->capture_default_str()
      ->check(CLI::Range(0, 20));
  e->add_option("--rate", evaluate.rate, "Max requests per second, 0 for no limit")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  e->add_flag("--no-strict", evaluate.no_strict, "Send predictions that do not parse");

  auto* p = app.add_subcommand("parse-check", "Parse each line and print its canonical form");
  add_common(p, common);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error, out, err);
    return code == 0 ? kSuccess : kFatal;
  }

  CLI::App* sub = app.get_subcommands().front();
  Manifest manifest;
  manifest.command = sub->get_name();
  try {
    int status = kSuccess;
    if (sub == c) {
      corrupt.config.validate();
      status = run_corrupt(corrupt, common, io, manifest);
    } else if (sub == v || sub == d) {
      status = run_verbalize(sub == v, verbalize_options, common, io, manifest);
    } else if (sub == f) {
      status = run_fetch(fetch, common, io, manifest);
    } else if (sub == b) {
      status = run_finetune(finetune, common, io, manifest);
    } else if (sub == e || sub == k) {
      status = run_evaluate(sub == k, evaluate, common, io, manifest);
    } else {
      status = run_parse_check(common, io, manifest);
    }
    write_manifest(manifest, common, *sub, args, start);
    return status;
  } catch (const std::exception& error) {
    err << "sparqlkit " << manifest.command << ": error: " << error.what() << '\n';
    return kFatal;
  }
}

}  // namespace sparqlkit::cli
