#include "sparqlkit/corruption/corruption.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "sparqlkit/error.hpp"
#include "sparqlkit/sparql/parser.hpp"
#include "sparqlkit/sparql/serializer.hpp"
#include "sparqlkit/sparql/triples.hpp"
#include "sparqlkit/util/strings.hpp"

namespace sparqlkit::corruption {

using sparql::QueryAst;
using sparql::TriplePattern;

const char* to_string(Objective objective) {
  switch (objective) {
    case Objective::Toc: return "toc";
    case Objective::Mlm: return "mlm";
    case Objective::Tfc: return "tfc";
    case Objective::Soc: return "soc";
  }
  return "?";
}

Objective objective_from_string(std::string_view name) {
  const auto lower = util::to_lower(name);
  if (lower == "toc") return Objective::Toc;
  if (lower == "mlm") return Objective::Mlm;
  if (lower == "tfc") return Objective::Tfc;
  if (lower == "soc") return Objective::Soc;
  throw ConfigError("unknown objective '" + std::string(name) + "'");
}

void CorruptionConfig::validate() const {
  auto check = [](double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw ConfigError(std::string(name) + " must lie in [0, 1]");
    }
  };
  check(toc_identity_probability, "toc_identity_probability");
  check(mlm_corruption_rate, "mlm_corruption_rate");
  check(soc_shuffle_fraction, "soc_shuffle_fraction");
  check(tfc_flip_probability, "tfc_flip_probability");
  if (!(mlm_mean_span_length >= 1.0) || !std::isfinite(mlm_mean_span_length)) {
    throw ConfigError("mlm_mean_span_length must be at least 1");
  }
}

bool Ordering::is_identity() const { return *this == all()[0]; }

std::string Ordering::name() const {
  std::string out;
  for (auto slot : slots) {
    out += slot == Slot::Subject ? 's' : slot == Slot::Predicate ? 'p' : 'o';
  }
  return out;
}

TriplePattern Ordering::apply(const TriplePattern& triple) const {
  auto pick = [&](Slot slot) -> const sparql::Term& {
    switch (slot) {
      case Slot::Subject: return triple.subject;
      case Slot::Predicate: return triple.predicate;
      case Slot::Object: return triple.object;
    }
    return triple.subject;
  };
  return TriplePattern{pick(slots[0]), pick(slots[1]), pick(slots[2])};
}

const std::array<Ordering, 6>& Ordering::all() {
  using enum Slot;
  static const std::array<Ordering, 6> orderings = {{
      {{Subject, Predicate, Object}},
      {{Subject, Object, Predicate}},
      {{Predicate, Subject, Object}},
      {{Predicate, Object, Subject}},
      {{Object, Subject, Predicate}},
      {{Object, Predicate, Subject}},
  }};
  return orderings;
}

Ordering sample_permutation(Rng& rng, const CorruptionConfig& config) {
  if (rng.bernoulli(config.toc_identity_probability)) return Ordering::identity();
  return Ordering::all()[1 + rng.below(5)];
}

namespace {

// Expanded AST of the query plus its canonical text.
std::pair<QueryAst, std::string> expanded(std::string_view query_text) {
  auto ast = sparql::expand_abbreviations(sparql::parse(query_text));
  auto text = sparql::serialize(ast);
  return {std::move(ast), std::move(text)};
}

// ceil(fraction * n), robust to representation error such as 0.15 * 20.
std::size_t fraction_count(double fraction, std::size_t n) {
  const double scaled = fraction * static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(scaled - 1e-9));
}

std::vector<std::string> surfaces(std::string_view text) {
  std::vector<std::string> out;
  for (auto& token : sparql::tokenize(text)) out.push_back(std::move(token.text));
  return out;
}

std::string join(const std::vector<std::string>& pieces) {
  std::string out;
  for (const auto& piece : pieces) {
    if (!out.empty()) out += ' ';
    out += piece;
  }
  return out;
}

}  // namespace

PretrainPair corrupt_toc(std::string_view query_text, Rng& rng,
                         const CorruptionConfig& config,
                         std::vector<Ordering>* applied) {
  auto [original, target] = expanded(query_text);
  QueryAst corrupted = original;
  for (const auto& located : sparql::extract_triples(original)) {
    const Ordering ordering = sample_permutation(rng, config);
    if (applied) applied->push_back(ordering);
    corrupted = sparql::rewrite_triple(std::move(corrupted), located.path,
                                       ordering.apply(located.triple));
  }
  return PretrainPair{Objective::Toc, sparql::serialize(corrupted),
                      std::move(target)};
}

PretrainPair corrupt_tfc(std::string_view query_text, Rng& rng,
                         const CorruptionConfig& config,
                         std::vector<bool>* flipped) {
  auto [original, target] = expanded(query_text);
  QueryAst corrupted = original;
  for (const auto& located : sparql::extract_triples(original)) {
    const bool flip = rng.bernoulli(config.tfc_flip_probability);
    if (flipped) flipped->push_back(flip);
    if (!flip) continue;
    corrupted = sparql::rewrite_triple(std::move(corrupted), located.path,
                                       Ordering::swap_ends().apply(located.triple));
  }
  return PretrainPair{Objective::Tfc, sparql::serialize(corrupted),
                      std::move(target)};
}

PretrainPair corrupt_soc(std::string_view query_text, Rng& rng,
                         const CorruptionConfig& config,
                         std::vector<std::size_t>* positions) {
  std::vector<std::string> tokens;
  try {
    tokens = surfaces(sparql::canonicalize(query_text));
  } catch (const SyntaxError&) {
    tokens = surfaces(query_text);
  } catch (const UnsupportedFeature&) {
    tokens = surfaces(query_text);
  }
  std::string target = join(tokens);

  const std::size_t n = tokens.size();
  const std::size_t k = std::min(n, fraction_count(config.soc_shuffle_fraction, n));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(order[i], order[i + rng.below(n - i)]);
  }
  std::vector<std::size_t> chosen(order.begin(), order.begin() + k);
  std::sort(chosen.begin(), chosen.end());

  std::vector<std::string> moved;
  for (auto pos : chosen) moved.push_back(tokens[pos]);
  for (std::size_t i = moved.size(); i > 1; --i) {
    std::swap(moved[i - 1], moved[rng.below(i)]);
  }
  for (std::size_t i = 0; i < chosen.size(); ++i) tokens[chosen[i]] = moved[i];
  if (positions) *positions = chosen;

  return PretrainPair{Objective::Soc, join(tokens), std::move(target)};
}

std::vector<MaskSpan> sample_mask_spans(std::size_t token_count, Rng& rng,
                                        const CorruptionConfig& config) {
  std::vector<MaskSpan> spans;
  if (token_count < 2) return spans;
  const std::size_t budget = std::min(
      token_count - 1, fraction_count(config.mlm_corruption_rate, token_count));
  const double stop = 1.0 / config.mlm_mean_span_length;

  std::vector<bool> masked(token_count, false);
  std::size_t covered = 0;
  while (covered < budget) {
    const std::size_t remaining = budget - covered;
    std::size_t length = 1;
    while (length < remaining && !rng.bernoulli(stop)) ++length;

    std::vector<std::size_t> starts;
    for (; length > 0; --length) {
      starts.clear();
      for (std::size_t s = 0; s + length <= token_count; ++s) {
        if (s > 0 && masked[s - 1]) continue;
        if (s + length < token_count && masked[s + length]) continue;
        bool free = true;
        for (std::size_t i = s; i < s + length && free; ++i) free = !masked[i];
        if (free) starts.push_back(s);
      }
      if (!starts.empty()) break;
    }
    if (length == 0) break;

    const std::size_t begin = starts[rng.below(starts.size())];
    for (std::size_t i = begin; i < begin + length; ++i) masked[i] = true;
    spans.push_back({begin, length});
    covered += length;
  }
  std::sort(spans.begin(), spans.end(),
            [](const MaskSpan& a, const MaskSpan& b) { return a.begin < b.begin; });
  return spans;
}

PretrainPair apply_mask_spans(const std::vector<std::string>& tokens,
                              const std::vector<MaskSpan>& spans) {
  std::vector<std::string> input;
  std::vector<std::string> target;
  std::size_t pos = 0;
  for (std::size_t k = 0; k < spans.size(); ++k) {
    const auto& span = spans[k];
    input.insert(input.end(), tokens.begin() + static_cast<std::ptrdiff_t>(pos),
                 tokens.begin() + static_cast<std::ptrdiff_t>(span.begin));
    input.push_back(sentinel(k));
    target.push_back(sentinel(k));
    target.insert(target.end(),
                  tokens.begin() + static_cast<std::ptrdiff_t>(span.begin),
                  tokens.begin() + static_cast<std::ptrdiff_t>(span.begin + span.length));
    pos = span.begin + span.length;
  }
  input.insert(input.end(), tokens.begin() + static_cast<std::ptrdiff_t>(pos),
               tokens.end());
  target.push_back(sentinel(spans.size()));
  return PretrainPair{Objective::Mlm, join(input), join(target)};
}

PretrainPair corrupt_mlm(std::string_view query_text, Rng& rng,
                         const CorruptionConfig& config,
                         std::vector<MaskSpan>* spans) {
  const auto tokens = surfaces(query_text);
  auto chosen = sample_mask_spans(tokens.size(), rng, config);
  auto pair = apply_mask_spans(tokens, chosen);
  if (spans) *spans = std::move(chosen);
  return pair;
}

PretrainPair corrupt(Objective objective, std::string_view query_text,
                     Rng& rng, const CorruptionConfig& config) {
  switch (objective) {
    case Objective::Toc: return corrupt_toc(query_text, rng, config);
    case Objective::Mlm: return corrupt_mlm(query_text, rng, config);
    case Objective::Tfc: return corrupt_tfc(query_text, rng, config);
    case Objective::Soc: return corrupt_soc(query_text, rng, config);
  }
  throw ConfigError("unknown objective");
}

std::string reconstruct_mlm(std::string_view input, std::string_view target) {
  std::vector<std::vector<std::string>> fills;
  for (auto& piece : surfaces(target)) {
    if (auto k = sentinel_index(piece)) {
      if (*k != fills.size()) throw Error("MLM target sentinels out of order");
      fills.emplace_back();
    } else if (fills.empty()) {
      throw Error("MLM target does not start with a sentinel");
    } else {
      fills.back().push_back(std::move(piece));
    }
  }
  if (fills.empty()) throw Error("MLM target is empty");
  std::vector<std::string> out;
  std::size_t next = 0;
  for (auto& piece : surfaces(input)) {
    auto k = sentinel_index(piece);
    if (!k) {
      out.push_back(std::move(piece));
      continue;
    }
    if (*k != next || *k + 1 >= fills.size()) throw Error("MLM input sentinel mismatch");
    out.insert(out.end(), fills[*k].begin(), fills[*k].end());
    ++next;
  }
  if (next + 1 != fills.size()) throw Error("MLM target has unused sentinels");
  return join(out);
}

std::string sentinel(std::size_t index) {
  return "<extra_id_" + std::to_string(index) + ">";
}

std::optional<std::size_t> sentinel_index(std::string_view token) {
  constexpr std::string_view kHead = "<extra_id_";
  if (token.size() <= kHead.size() + 1 || token.substr(0, kHead.size()) != kHead ||
      token.back() != '>') {
    return std::nullopt;
  }
  const auto digits = token.substr(kHead.size(), token.size() - kHead.size() - 1);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

}  // namespace sparqlkit::corruption
