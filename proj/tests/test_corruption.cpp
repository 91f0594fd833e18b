#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "sparqlkit/corruption/corruption.hpp"
#include "sparqlkit/error.hpp"
#include "sparqlkit/sparql/lexer.hpp"
#include "sparqlkit/sparql/parser.hpp"
#include "sparqlkit/sparql/serializer.hpp"
#include "sparqlkit/sparql/triples.hpp"

using namespace sparqlkit;
using namespace sparqlkit::corruption;

namespace {

std::vector<std::string> words(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& t : sparql::tokenize(text)) out.push_back(t.text);
  return out;
}

// Rearranges "s p o" words by an ordering name such as "ops".
std::string arrange(const std::string& s, const std::string& p, const std::string& o,
                    const std::string& name) {
  std::string out;
  for (char c : name) {
    if (!out.empty()) out += ' ';
    out += c == 's' ? s : c == 'p' ? p : o;
  }
  return out;
}

}  // namespace

TEST_CASE("config validation") {
  CorruptionConfig c;
  CHECK_NOTHROW(c.validate());
  c.toc_identity_probability = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.mlm_mean_span_length = 0.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.soc_shuffle_fraction = -0.1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("orderings") {
  const auto& all = Ordering::all();
  std::vector<std::string> names;
  for (const auto& o : all) names.push_back(o.name());
  CHECK(names == std::vector<std::string>{"spo", "sop", "pso", "pos", "osp", "ops"});
  CHECK(all[0].is_identity());
  const sparql::TriplePattern t{sparql::Term::variable("ans"), sparql::Term::prefixed("wdt", "P279"),
                                sparql::Term::prefixed("wd", "Q25356")};
  const auto flipped = Ordering::swap_ends().apply(t);
  CHECK(flipped.subject == t.object);
  CHECK(flipped.predicate == t.predicate);
  CHECK(flipped.object == t.subject);
}

TEST_CASE("forced identity") {
  CorruptionConfig c;
  c.toc_identity_probability = 1.0;
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) CHECK(sample_permutation(rng, c).is_identity());
  c.toc_identity_probability = 0.0;
  for (int i = 0; i < 1000; ++i) CHECK_FALSE(sample_permutation(rng, c).is_identity());
}

TEST_CASE("permutation draws are uniform under the default config") {
  Rng rng(20240601);
  CorruptionConfig c;
  std::map<std::string, int> counts;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) ++counts[sample_permutation(rng, c).name()];
  REQUIRE(counts.size() == 6);
  double chi2 = 0.0;
  for (const auto& [name, n] : counts) {
    const double d = n - draws / 6.0;
    chi2 += d * d / (draws / 6.0);
  }
  // chi-square critical value, 5 degrees of freedom, alpha 0.01
  CHECK(chi2 < 15.086);
}

TEST_CASE("Populus pair under the swap ordering") {
  // Seeds whose first draw is (o, p, s) reproduce the flipped query.
  CorruptionConfig c;
  int found = 0;
  for (std::uint64_t seed = 0; seed < 200 && found < 3; ++seed) {
    Rng rng(seed);
    std::vector<Ordering> applied;
    auto pair = corrupt_toc(fixtures::kPopulusQuery, rng, c, &applied);
    REQUIRE(applied.size() == 1);
    CHECK(pair.target == fixtures::kPopulusCanonical);
    if (applied[0] == Ordering::swap_ends()) {
      CHECK(pair.input == fixtures::kPopulusFlipped);
      ++found;
    }
  }
  CHECK(found == 3);
}

TEST_CASE("identity draws leave the query unchanged") {
  CorruptionConfig c;
  c.toc_identity_probability = 1.0;
  for (const auto& q : fixtures::corpus()) {
    Rng rng(1);
    const auto pair = corrupt_toc(q, rng, c);
    CHECK(pair.input == pair.target);
  }
}

TEST_CASE("three-triple query replays the seeded draws") {
  const std::string q = "select ?x where { ?x wdt:P31 wd:Q5 . ?x wdt:P27 ?c . ?c wdt:P36 wd:Q90 }";
  const std::vector<std::array<std::string, 3>> triples = {
      {"?x", "wdt:P31", "wd:Q5"}, {"?x", "wdt:P27", "?c"}, {"?c", "wdt:P36", "wd:Q90"}};
  CorruptionConfig c;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    std::vector<Ordering> applied;
    const auto pair = corrupt_toc(q, rng, c, &applied);
    Rng replay(seed);
    std::string expected = "select ?x where { ";
    for (std::size_t i = 0; i < 3; ++i) {
      const auto drawn = sample_permutation(replay, c);
      CHECK(applied[i] == drawn);
      if (i) expected += " . ";
      expected += arrange(triples[i][0], triples[i][1], triples[i][2], drawn.name());
    }
    expected += " }";
    CHECK(pair.input == expected);
  }
}

TEST_CASE("toc expands abbreviations and keeps term sets") {
  CorruptionConfig c;
  for (const auto& q : fixtures::corpus()) {
    INFO(q);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Rng rng(seed);
      const auto pair = corrupt_toc(q, rng, c);
      const auto original = sparql::extract_triples(sparql::parse(pair.target));
      const auto corrupted = sparql::extract_triples(sparql::parse(pair.input));
      CHECK_FALSE(sparql::has_abbreviations(sparql::parse(pair.target)));
      REQUIRE(original.size() == corrupted.size());
      for (std::size_t i = 0; i < original.size(); ++i) {
        const auto& a = original[i].triple;
        const auto& b = corrupted[i].triple;
        std::multiset<sparql::Term> sa{a.subject, a.predicate, a.object};
        std::multiset<sparql::Term> sb{b.subject, b.predicate, b.object};
        CHECK(sa == sb);
        CHECK(original[i].path == corrupted[i].path);
      }
    }
  }
}

TEST_CASE("tfc flips subject and object only") {
  CorruptionConfig c;
  c.tfc_flip_probability = 0.0;
  Rng rng(5);
  auto pair = corrupt_tfc(fixtures::kPopulusQuery, rng, c);
  CHECK(pair.input == pair.target);
  c.tfc_flip_probability = 1.0;
  pair = corrupt_tfc(fixtures::kPopulusQuery, rng, c);
  CHECK(pair.input == fixtures::kPopulusFlipped);
  CHECK(pair.objective == Objective::Tfc);
}

TEST_CASE("tfc flip counts follow the binomial law") {
  std::string q = "select * where { ";
  for (int i = 0; i < 10; ++i) {
    if (i) q += " . ";
    q += "?s" + std::to_string(i) + " wdt:P" + std::to_string(i) + " wd:Q" + std::to_string(i);
  }
  q += " }";
  CorruptionConfig c;
  std::vector<int> flips(10, 0);
  const int seeds = 10000;
  for (int seed = 0; seed < seeds; ++seed) {
    Rng rng(static_cast<std::uint64_t>(seed));
    std::vector<bool> flipped;
    const auto pair = corrupt_tfc(q, rng, c, &flipped);
    REQUIRE(flipped.size() == 10);
    const auto triples = sparql::extract_triples(sparql::parse(pair.input));
    for (int i = 0; i < 10; ++i) {
      const bool starts_with_entity = triples[i].triple.subject.is_prefixed();
      CHECK(starts_with_entity == flipped[i]);
      flips[i] += flipped[i];
    }
  }
  // mean 5000, standard deviation 50; 4.5 sigma keeps the false-alarm rate negligible
  for (int n : flips) CHECK(std::abs(n - 5000) < 225);
}

TEST_CASE("soc shuffles a fixed number of positions") {
  CorruptionConfig c;
  c.soc_shuffle_fraction = 0.0;
  Rng rng(11);
  auto pair = corrupt_soc(fixtures::kPopulusQuery, rng, c);
  CHECK(pair.input == pair.target);

  c.soc_shuffle_fraction = 0.33;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng r(seed);
    std::vector<std::size_t> positions;
    pair = corrupt_soc(fixtures::kPopulusQuery, r, c, &positions);
    CHECK(positions.size() == 3);
    CHECK(pair.target == fixtures::kPopulusCanonical);
    auto in = words(pair.input);
    auto target = words(pair.target);
    for (std::size_t i = 0; i < target.size(); ++i) {
      if (std::find(positions.begin(), positions.end(), i) == positions.end()) {
        CHECK(in[i] == target[i]);
      }
    }
    std::sort(in.begin(), in.end());
    std::sort(target.begin(), target.end());
    CHECK(in == target);
  }
}

TEST_CASE("soc with fraction 1 permutes all four tokens of an empty ask") {
  CorruptionConfig c;
  c.soc_shuffle_fraction = 1.0;
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    Rng rng(seed);
    seen.insert(corrupt_soc("ask where { }", rng, c).input);
  }
  // every one of the 4! arrangements of distinct tokens shows up
  CHECK(seen.size() == 24);
}

TEST_CASE("soc falls back to raw tokens for text that does not parse") {
  CorruptionConfig c;
  c.soc_shuffle_fraction = 1.0;
  Rng rng(2);
  const auto pair = corrupt_soc("where ?x { select", rng, c);
  CHECK(pair.target == "where ?x { select");
}

TEST_CASE("mlm hand-constructed span") {
  const auto tokens = words(fixtures::kPopulusCanonical);
  REQUIRE(tokens.size() == 9);
  const auto pair = apply_mask_spans(tokens, {{6, 2}});
  CHECK(pair.input == "select distinct ?ans where { ?ans <extra_id_0> }");
  CHECK(pair.target == "<extra_id_0> wdt:P279 wd:Q25356 <extra_id_1>");
  CHECK(reconstruct_mlm(pair.input, pair.target) == fixtures::kPopulusCanonical);
}

TEST_CASE("mlm with zero rate masks nothing") {
  CorruptionConfig c;
  c.mlm_corruption_rate = 0.0;
  Rng rng(9);
  const auto pair = corrupt_mlm(fixtures::kPopulusCanonical, rng, c);
  CHECK(pair.input == fixtures::kPopulusCanonical);
  CHECK(pair.target == "<extra_id_0>");
}

TEST_CASE("mlm on a single token") {
  Rng rng(1);
  const auto pair = corrupt_mlm("ask", rng, CorruptionConfig{});
  CHECK(pair.input == "ask");
  CHECK(pair.target == "<extra_id_0>");
}

TEST_CASE("mask spans are disjoint, non-adjacent and cover the budget") {
  CorruptionConfig c;
  for (std::size_t n : {2u, 3u, 5u, 9u, 20u, 57u, 300u}) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      Rng rng(seed * 7919 + n);
      const auto spans = sample_mask_spans(n, rng, c);
      const std::size_t budget = std::min<std::size_t>(
          n - 1, static_cast<std::size_t>(std::ceil(c.mlm_corruption_rate * n - 1e-9)));
      std::size_t covered = 0;
      for (std::size_t i = 0; i < spans.size(); ++i) {
        CHECK(spans[i].length >= 1);
        CHECK(spans[i].begin + spans[i].length <= n);
        if (i) CHECK(spans[i - 1].begin + spans[i - 1].length < spans[i].begin);
        covered += spans[i].length;
      }
      CHECK(covered == budget);
    }
  }
}

TEST_CASE("mask span lengths average near the configured mean") {
  CorruptionConfig c;
  c.mlm_corruption_rate = 0.3;
  double total = 0;
  std::size_t count = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    for (const auto& span : sample_mask_spans(2000, rng, c)) {
      total += static_cast<double>(span.length);
      ++count;
    }
  }
  // truncation at the budget and at free gaps only shortens spans
  const double mean = total / static_cast<double>(count);
  CHECK(mean > 2.6);
  CHECK(mean < 3.2);
}

TEST_CASE("mlm reconstruction and sentinel contract over the corpus") {
  CorruptionConfig c;
  for (const auto& q : fixtures::corpus()) {
    const auto canonical = sparql::canonicalize(q);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      std::vector<MaskSpan> spans;
      const auto pair = corrupt_mlm(canonical, rng, c, &spans);
      CHECK(reconstruct_mlm(pair.input, pair.target) == canonical);
      std::vector<std::size_t> in_ids;
      std::vector<std::size_t> target_ids;
      for (const auto& w : words(pair.input)) {
        if (auto k = sentinel_index(w)) in_ids.push_back(*k);
      }
      for (const auto& w : words(pair.target)) {
        if (auto k = sentinel_index(w)) target_ids.push_back(*k);
      }
      CHECK(in_ids.size() == spans.size());
      CHECK(target_ids.size() == spans.size() + 1);
      for (std::size_t k = 0; k < target_ids.size(); ++k) CHECK(target_ids[k] == k);
      target_ids.pop_back();
      CHECK(in_ids == target_ids);
    }
  }
}

TEST_CASE("reconstruction rejects inconsistent pairs") {
  CHECK_THROWS_AS(reconstruct_mlm("a <extra_id_0>", "select <extra_id_0>"), Error);
  CHECK_THROWS_AS(reconstruct_mlm("a <extra_id_1>", "<extra_id_0> b <extra_id_1>"), Error);
  CHECK_THROWS_AS(reconstruct_mlm("a", "<extra_id_0> b <extra_id_1>"), Error);
}

TEST_CASE("sentinels") {
  CHECK(sentinel(12) == "<extra_id_12>");
  CHECK(sentinel_index("<extra_id_3>") == 3u);
  CHECK_FALSE(sentinel_index("<extra_id_>"));
  CHECK_FALSE(sentinel_index("<extra_id_3x>"));
  CHECK_FALSE(sentinel_index("extra_id_3"));
}

TEST_CASE("same seed, same pair") {
  CorruptionConfig c;
  for (auto objective : {Objective::Toc, Objective::Mlm, Objective::Tfc, Objective::Soc}) {
    for (const auto& q : fixtures::corpus()) {
      Rng a(42);
      Rng b(42);
      CHECK(corrupt(objective, q, a, c) == corrupt(objective, q, b, c));
    }
  }
}

TEST_CASE("rng reference values") {
  // std::mt19937_64 is fully specified: the 10000th output for the default
  // seed 5489 is 9981545732273789042.
  std::mt19937_64 reference;
  reference.discard(9999);
  CHECK(reference() == 9981545732273789042ull);
  Rng rng(5489);
  for (int i = 0; i < 9999; ++i) rng.next();
  CHECK(rng.next() == 9981545732273789042ull);
}

TEST_CASE("rng helpers") {
  Rng rng(77);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) ++hist[rng.below(7)];
  for (int n : hist) CHECK(std::abs(n - 10000) < 500);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(Rng::derive(7, 0) != Rng::derive(7, 1));
  CHECK(Rng::derive(7, 0) != Rng::derive(8, 0));
  CHECK(Rng::derive(7, 3) == Rng::derive(7, 3));
  CHECK_FALSE(rng.bernoulli(0.0));
  CHECK(rng.bernoulli(1.0));
}

TEST_CASE("objective names") {
  CHECK(objective_from_string("TOC") == Objective::Toc);
  CHECK(std::string(to_string(Objective::Soc)) == "soc");
  CHECK_THROWS_AS(objective_from_string("mixed"), ConfigError);
}
