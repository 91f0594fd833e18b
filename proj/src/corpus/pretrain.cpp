#include "sparqlkit/corpus/pretrain.hpp"

#include "sparqlkit/error.hpp"
#include "sparqlkit/sparql/parser.hpp"
#include "sparqlkit/sparql/serializer.hpp"
#include "sparqlkit/sparql/triples.hpp"
#include "sparqlkit/util/parallel.hpp"
#include "sparqlkit/verbalizer/verbalizer.hpp"

namespace sparqlkit::corpus {

using corruption::Objective;
using corruption::PretrainPair;

namespace {

struct LineResult {
  bool blank = false;
  std::vector<PretrainPair> pairs;
  std::string error;
  std::size_t substituted = 0;
  std::size_t unmapped = 0;
};

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

void check_pair(const PretrainPair& pair, const std::string& canonical) {
  switch (pair.objective) {
    case Objective::Toc:
    case Objective::Tfc:
      if (sparql::canonicalize(pair.target) != canonical) {
        throw Error("target does not reproduce the canonical query");
      }
      break;
    case Objective::Mlm:
      if (corruption::reconstruct_mlm(pair.input, pair.target) != canonical) {
        throw Error("masked pair does not reconstruct the query");
      }
      break;
    case Objective::Soc:
      if (pair.target != canonical) throw Error("target is not the canonical query");
      break;
  }
}

LineResult process(const std::string& line, std::size_t index,
                   const PretrainOptions& options) {
  LineResult result;
  if (is_blank(line)) {
    result.blank = true;
    return result;
  }
  try {
    std::string text = line;
    if (options.labels) {
      auto v = verbalizer::verbalize(text, *options.labels);
      text = std::move(v.text);
      result.substituted = v.substituted;
      result.unmapped = v.unmapped;
    }
    // Corruptions run on the expanded canonical form, which is also what
    // every target reproduces.
    const auto canonical =
        sparql::serialize(sparql::expand_abbreviations(sparql::parse(text)));
    corruption::Rng rng(corruption::Rng::derive(options.corruption.rng_seed, index));
    for (auto objective : options.objectives) {
      auto pair = corruption::corrupt(objective, canonical, rng, options.corruption);
      check_pair(pair, canonical);
      result.pairs.push_back(std::move(pair));
    }
  } catch (const Error& e) {
    result.pairs.clear();
    result.error = e.what();
  }
  return result;
}

}  // namespace

PretrainCorpus build_pretrain_corpus(const std::vector<std::string>& lines,
                                     const PretrainOptions& options) {
  options.corruption.validate();
  std::vector<LineResult> results(lines.size());
  util::parallel_for(lines.size(), options.jobs, [&](std::size_t i) {
    results[i] = process(lines[i], i, options);
  });

  PretrainCorpus corpus;
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto& r = results[i];
    if (r.blank) continue;
    if (!r.error.empty()) {
      corpus.skipped.push_back({i + 1, std::move(r.error)});
      continue;
    }
    ++corpus.processed;
    corpus.substituted += r.substituted;
    corpus.unmapped += r.unmapped;
    for (auto& pair : r.pairs) corpus.pairs.push_back(std::move(pair));
  }
  return corpus;
}

nlohmann::json to_json(const PretrainPair& pair) {
  return {{"objective", corruption::to_string(pair.objective)},
          {"input", pair.input},
          {"target", pair.target}};
}

}  // namespace sparqlkit::corpus
