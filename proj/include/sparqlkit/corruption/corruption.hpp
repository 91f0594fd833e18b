#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparqlkit/corruption/rng.hpp"
#include "sparqlkit/sparql/ast.hpp"

namespace sparqlkit::corruption {

enum class Objective { Toc, Mlm, Tfc, Soc };

const char* to_string(Objective objective);
/// Accepts "toc", "mlm", "tfc", "soc" (any case). Throws ConfigError.
Objective objective_from_string(std::string_view name);

struct CorruptionConfig {
  double toc_identity_probability = 1.0 / 6.0;
  double mlm_corruption_rate = 0.15;
  double mlm_mean_span_length = 3.0;
  double soc_shuffle_fraction = 0.15;
  double tfc_flip_probability = 0.5;
  std::uint64_t rng_seed = 0;

  /// Throws ConfigError when a probability leaves [0, 1] or the mean span
  /// length is below 1.
  void validate() const;
};

struct PretrainPair {
  Objective objective = Objective::Toc;
  std::string input;
  std::string target;

  friend bool operator==(const PretrainPair&, const PretrainPair&) = default;
};

enum class Slot : std::uint8_t { Subject, Predicate, Object };

/// An arrangement of the three positions of a triple. `slots[i]` names the
/// original position whose term lands in position i.
struct Ordering {
  std::array<Slot, 3> slots;

  bool is_identity() const;
  std::string name() const;  // e.g. "ops"
  sparql::TriplePattern apply(const sparql::TriplePattern& triple) const;

  /// All six orderings, identity first, then lexicographic.
  static const std::array<Ordering, 6>& all();
  static Ordering identity() { return all()[0]; }
  static Ordering swap_ends() { return all()[5]; }  // (o, p, s)

  friend bool operator==(const Ordering&, const Ordering&) = default;
};

/// Identity with probability `toc_identity_probability`, otherwise one of
/// the five other orderings uniformly.
Ordering sample_permutation(Rng& rng, const CorruptionConfig& config);

/// Triplet order corruption. Every triple of the abbreviation-expanded query
/// is rearranged independently. `input` is the canonical text of the
/// corrupted query, `target` the canonical text of the expanded original.
/// Parse errors propagate.
PretrainPair corrupt_toc(std::string_view query_text, Rng& rng,
                         const CorruptionConfig& config,
                         std::vector<Ordering>* applied = nullptr);

/// Subject/object swap of each triple with probability
/// `tfc_flip_probability`; predicates stay in place.
PretrainPair corrupt_tfc(std::string_view query_text, Rng& rng,
                         const CorruptionConfig& config,
                         std::vector<bool>* flipped = nullptr);

/// Shuffles ceil(fraction * n) token positions of the canonical query among
/// themselves. Unparsable but tokenizable text is shuffled as lexed.
PretrainPair corrupt_soc(std::string_view query_text, Rng& rng,
                         const CorruptionConfig& config,
                         std::vector<std::size_t>* positions = nullptr);

struct MaskSpan {
  std::size_t begin = 0;
  std::size_t length = 0;
  friend bool operator==(const MaskSpan&, const MaskSpan&) = default;
};

/// Span masking over the query's tokens: each span is replaced in the input
/// by `<extra_id_k>` (k counting from 0 in order), and the target lists
/// each sentinel followed by the tokens it hides, closed by one extra
/// sentinel. Queries with fewer than two tokens get no masks.
PretrainPair corrupt_mlm(std::string_view query_text, Rng& rng,
                         const CorruptionConfig& config,
                         std::vector<MaskSpan>* spans = nullptr);

/// Picks non-overlapping, non-adjacent spans over `token_count` tokens until
/// ceil(rate * n) tokens (at most n - 1) are covered. Span lengths follow a
/// geometric law with the configured mean, truncated at the remaining
/// budget. Returned sorted by position.
std::vector<MaskSpan> sample_mask_spans(std::size_t token_count, Rng& rng,
                                        const CorruptionConfig& config);

/// Masks the given spans (sorted, non-overlapping) of a token list.
PretrainPair apply_mask_spans(const std::vector<std::string>& tokens,
                              const std::vector<MaskSpan>& spans);

PretrainPair corrupt(Objective objective, std::string_view query_text,
                     Rng& rng, const CorruptionConfig& config);

/// Fills the sentinels of an MLM input from its target; the inverse of
/// apply_mask_spans up to token spacing. Throws Error on inconsistent pairs.
std::string reconstruct_mlm(std::string_view input, std::string_view target);

std::string sentinel(std::size_t index);
/// Index of a `<extra_id_k>` token.
std::optional<std::size_t> sentinel_index(std::string_view token);

}  // namespace sparqlkit::corruption
