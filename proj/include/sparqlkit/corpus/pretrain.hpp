#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sparqlkit/corruption/corruption.hpp"
#include "sparqlkit/verbalizer/label_map.hpp"

namespace sparqlkit::corpus {

struct PretrainOptions {
  corruption::CorruptionConfig corruption;
  /// Objectives emitted per query, in this order. TOC then MLM by default.
  std::vector<corruption::Objective> objectives = {corruption::Objective::Toc,
                                                   corruption::Objective::Mlm};
  /// Verbalize IRIs before corruption; off when null.
  const verbalizer::LabelMap* labels = nullptr;
  std::size_t jobs = 1;
};

struct SkippedLine {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct PretrainCorpus {
  std::vector<corruption::PretrainPair> pairs;  // input order, objectives interleaved
  std::size_t processed = 0;
  std::vector<SkippedLine> skipped;
  std::size_t substituted = 0;
  std::size_t unmapped = 0;
};

/// Corrupts every query line. Line i draws from its own generator seeded
/// with Rng::derive(seed, i), so output does not depend on `jobs`. Blank
/// lines are ignored. Lines that fail to parse, or whose pairs fail the
/// emission checks (TOC target parses and equals the canonical query; MLM
/// reconstructs it), are skipped and listed.
PretrainCorpus build_pretrain_corpus(const std::vector<std::string>& lines,
                                     const PretrainOptions& options);

nlohmann::json to_json(const corruption::PretrainPair& pair);

}  // namespace sparqlkit::corpus
