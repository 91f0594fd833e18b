#include "sparqlkit/sparql/triples.hpp"

#include "sparqlkit/error.hpp"

namespace sparqlkit::sparql {

std::string TriplePath::to_string() const {
  std::string out;
  for (auto step : steps) {
    if (!out.empty()) out += '/';
    out += std::to_string(step);
  }
  return out;
}

namespace {

template <typename Group, typename Visit>
void visit_blocks(Group& group, const Visit& visit) {
  for (auto& item : group.items) {
    std::visit(
        [&](auto& clause) {
          using T = std::decay_t<decltype(clause)>;
          if constexpr (std::is_same_v<T, TripleBlock>) {
            visit(clause);
          } else if constexpr (std::is_same_v<T, UnionClause>) {
            for (auto& branch : clause.branches) visit_blocks(branch, visit);
          } else if constexpr (std::is_same_v<T, OptionalClause> ||
                               std::is_same_v<T, SubgroupClause>) {
            visit_blocks(*clause.group, visit);
          }
        },
        item);
  }
}

void collect(const PatternGroup& group, std::vector<std::uint32_t>& prefix,
             std::vector<LocatedTriple>& out) {
  for (std::uint32_t i = 0; i < group.items.size(); ++i) {
    prefix.push_back(i);
    std::visit(
        [&](const auto& clause) {
          using T = std::decay_t<decltype(clause)>;
          if constexpr (std::is_same_v<T, TripleBlock>) {
            for (std::uint32_t t = 0; t < clause.triples.size(); ++t) {
              auto steps = prefix;
              steps.push_back(t);
              out.push_back({TriplePath{std::move(steps)}, clause.triples[t]});
            }
          } else if constexpr (std::is_same_v<T, UnionClause>) {
            for (std::uint32_t b = 0; b < clause.branches.size(); ++b) {
              prefix.push_back(b);
              collect(clause.branches[b], prefix, out);
              prefix.pop_back();
            }
          } else if constexpr (std::is_same_v<T, OptionalClause> ||
                               std::is_same_v<T, SubgroupClause>) {
            collect(*clause.group, prefix, out);
          }
        },
        group.items[i]);
    prefix.pop_back();
  }
}

bool link_holds(const TripleBlock& block, std::size_t i) {
  if (i == 0) return block.abbreviations[0] == Abbreviation::None;
  const auto& t = block.triples[i];
  const auto& prev = block.triples[i - 1];
  switch (block.abbreviations[i]) {
    case Abbreviation::None:
      return true;
    case Abbreviation::SharedSubject:
      return t.subject == prev.subject;
    case Abbreviation::SharedPredicate:
      return t.subject == prev.subject && t.predicate == prev.predicate;
  }
  return false;
}

[[noreturn]] void invalid(const TriplePath& path) {
  throw InvalidPath("no triple at path '" + path.to_string() + "'");
}

TripleBlock& locate(PatternGroup& group, const TriplePath& path,
                    std::size_t depth, std::uint32_t& triple_index) {
  if (depth >= path.steps.size()) invalid(path);
  const auto item_index = path.steps[depth];
  if (item_index >= group.items.size()) invalid(path);
  auto& item = group.items[item_index];
  if (auto* block = std::get_if<TripleBlock>(&item)) {
    if (depth + 2 != path.steps.size()) invalid(path);
    triple_index = path.steps[depth + 1];
    if (triple_index >= block->triples.size()) invalid(path);
    return *block;
  }
  if (auto* u = std::get_if<UnionClause>(&item)) {
    if (depth + 1 >= path.steps.size()) invalid(path);
    const auto branch = path.steps[depth + 1];
    if (branch >= u->branches.size()) invalid(path);
    return locate(u->branches[branch], path, depth + 2, triple_index);
  }
  if (auto* opt = std::get_if<OptionalClause>(&item)) {
    return locate(*opt->group, path, depth + 1, triple_index);
  }
  if (auto* sub = std::get_if<SubgroupClause>(&item)) {
    return locate(*sub->group, path, depth + 1, triple_index);
  }
  invalid(path);
}

}  // namespace

void for_each_block(const PatternGroup& group,
                    const std::function<void(const TripleBlock&)>& visit) {
  visit_blocks(group, visit);
}

void for_each_block(PatternGroup& group,
                    const std::function<void(TripleBlock&)>& visit) {
  visit_blocks(group, visit);
}

QueryAst expand_abbreviations(QueryAst ast) {
  for_each_block(ast.where, [](TripleBlock& block) {
    for (auto& how : block.abbreviations) how = Abbreviation::None;
  });
  return ast;
}

bool has_abbreviations(const QueryAst& ast) {
  bool found = false;
  for_each_block(ast.where, [&](const TripleBlock& block) {
    for (auto how : block.abbreviations) found |= how != Abbreviation::None;
  });
  return found;
}

std::vector<LocatedTriple> extract_triples(const QueryAst& ast) {
  std::vector<LocatedTriple> out;
  std::vector<std::uint32_t> prefix;
  collect(ast.where, prefix, out);
  return out;
}

QueryAst rewrite_triple(QueryAst ast, const TriplePath& path,
                        const TriplePattern& replacement) {
  std::uint32_t index = 0;
  TripleBlock& block = locate(ast.where, path, 0, index);
  block.triples[index] = replacement;
  for (std::size_t i = index; i < block.triples.size() && i <= index + 1; ++i) {
    if (!link_holds(block, i)) block.abbreviations[i] = Abbreviation::None;
  }
  return ast;
}

}  // namespace sparqlkit::sparql
