#include "sparqlkit/evaluator/query_match.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sparqlkit/error.hpp"
#include "sparqlkit/sparql/lexer.hpp"
#include "sparqlkit/sparql/parser.hpp"
#include "sparqlkit/sparql/serializer.hpp"
#include "sparqlkit/sparql/triples.hpp"
#include "sparqlkit/util/strings.hpp"

namespace sparqlkit::evaluator {

using namespace sparqlkit::sparql;

const char* to_string(QmMode mode) {
  switch (mode) {
    case QmMode::TextCanonical: return "text";
    case QmMode::Ast: return "ast";
    case QmMode::AstAlphaRenamed: return "alpha";
  }
  return "?";
}

QmMode qm_mode_from_string(std::string_view name) {
  const auto lower = util::to_lower(name);
  if (lower == "text" || lower == "textcanonical") return QmMode::TextCanonical;
  if (lower == "ast") return QmMode::Ast;
  if (lower == "alpha" || lower == "astalpharenamed") return QmMode::AstAlphaRenamed;
  throw ConfigError("unknown query match mode '" + std::string(name) +
                    "' (expected text, ast or alpha)");
}

namespace {

void normalize_group(PatternGroup& group) {
  for (auto& item : group.items) {
    if (auto* block = std::get_if<TripleBlock>(&item)) {
      auto& t = block->triples;
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
      block->abbreviations.assign(t.size(), Abbreviation::None);
    } else if (auto* opt = std::get_if<OptionalClause>(&item)) {
      normalize_group(*opt->group);
    } else if (auto* uni = std::get_if<UnionClause>(&item)) {
      for (auto& branch : uni->branches) normalize_group(branch);
    } else if (auto* sub = std::get_if<SubgroupClause>(&item)) {
      normalize_group(*sub->group);
    }
  }
}

void visit_tokens(std::vector<Token>& tokens,
                  const std::function<void(std::string&)>& visit) {
  for (auto& token : tokens) {
    if (token.kind != TokenKind::Variable) continue;
    std::string name = token.text.substr(1);
    visit(name);
    token.text = token.text.substr(0, 1) + name;
  }
}

void visit_term(Term& term, const std::function<void(std::string&)>& visit) {
  if (!term.is_variable()) return;
  Variable v = *term.as_variable();
  visit(v.name);
  term = Term(v);
}

void visit_group(PatternGroup& group, const std::function<void(std::string&)>& visit) {
  for (auto& item : group.items) {
    if (auto* block = std::get_if<TripleBlock>(&item)) {
      for (auto& t : block->triples) {
        visit_term(t.subject, visit);
        visit_term(t.predicate, visit);
        visit_term(t.object, visit);
      }
    } else if (auto* filter = std::get_if<FilterClause>(&item)) {
      visit_tokens(filter->expression, visit);
    } else if (auto* opt = std::get_if<OptionalClause>(&item)) {
      visit_group(*opt->group, visit);
    } else if (auto* uni = std::get_if<UnionClause>(&item)) {
      for (auto& branch : uni->branches) visit_group(branch, visit);
    } else if (auto* sub = std::get_if<SubgroupClause>(&item)) {
      visit_group(*sub->group, visit);
    }
  }
}

std::vector<std::string> variables_of(const QueryAst& ast) {
  QueryAst copy = ast;
  std::vector<std::string> names;
  std::set<std::string> seen;
  for_each_variable(copy, [&](std::string& name) {
    if (seen.insert(name).second) names.push_back(name);
  });
  return names;
}

QueryAst renamed(QueryAst ast, const std::map<std::string, std::string>& mapping,
                 const std::string& fallback) {
  for_each_variable(ast, [&](std::string& name) {
    auto it = mapping.find(name);
    name = it != mapping.end() ? it->second : fallback;
  });
  return normalize_for_match(std::move(ast));
}

// Names outside the variable-name alphabet, so they never clash with real ones.
const std::string kSelf = "#self";
const std::string kOther = "#other";

// Shape of the query as seen from one variable: every other variable is
// anonymized. Two variables can only correspond if their signatures agree.
std::string signature(const QueryAst& ast, const std::string& var) {
  return serialize(renamed(ast, {{var, kSelf}}, kOther));
}

class BijectionSearch {
 public:
  BijectionSearch(const QueryAst& a, const QueryAst& b)
      : a_(a), target_(normalize_for_match(b)),
        vars_a_(variables_of(a)), vars_b_(variables_of(b)) {}

  bool run() {
    if (vars_a_.size() != vars_b_.size()) return false;
    if (renamed(a_, {}, kOther) != renamed(target_, {}, kOther)) return false;
    std::map<std::string, std::vector<std::string>> by_signature;
    for (const auto& v : vars_b_) by_signature[signature(target_, v)].push_back(v);
    for (const auto& v : vars_a_) {
      auto it = by_signature.find(signature(a_, v));
      if (it == by_signature.end()) return false;
      candidates_.push_back(it->second);
    }
    return extend(0);
  }

 private:
  bool extend(std::size_t index) {
    if (index == vars_a_.size()) return renamed(a_, mapping_, kOther) == target_;
    for (const auto& candidate : candidates_[index]) {
      if (used_.count(candidate)) continue;
      used_.insert(candidate);
      mapping_[vars_a_[index]] = candidate;
      if (extend(index + 1)) return true;
      mapping_.erase(vars_a_[index]);
      used_.erase(candidate);
    }
    return false;
  }

  const QueryAst& a_;
  QueryAst target_;
  std::vector<std::string> vars_a_;
  std::vector<std::string> vars_b_;
  std::vector<std::vector<std::string>> candidates_;
  std::map<std::string, std::string> mapping_;
  std::set<std::string> used_;
};

std::optional<QueryAst> try_parse(std::string_view text) {
  try {
    return parse(text);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<std::vector<std::string>> try_text_form(std::string_view text) {
  try {
    std::vector<std::string> out;
    for (const auto& token : tokenize(text)) out.push_back(token.normalized());
    return out;
  } catch (const LexError&) {
    return std::nullopt;
  }
}

}  // namespace

QueryAst normalize_for_match(QueryAst ast) {
  ast = expand_abbreviations(std::move(ast));
  normalize_group(ast.where);
  return ast;
}

void for_each_variable(QueryAst& ast, const std::function<void(std::string&)>& visit) {
  for (auto& item : ast.projection) {
    if (auto* v = std::get_if<Variable>(&item)) {
      visit(v->name);
    } else {
      auto& count = std::get<CountAggregate>(item);
      if (count.argument) visit(count.argument->name);
      if (count.alias) visit(count.alias->name);
    }
  }
  visit_group(ast.where, visit);
  for (auto& key : ast.modifiers.order_by) visit_tokens(key.expression, visit);
}

bool alpha_equivalent(const QueryAst& a, const QueryAst& b) {
  return BijectionSearch(a, b).run();
}

QueryAst parse_gold(std::string_view gold) {
  try {
    return parse(gold);
  } catch (const Error& e) {
    throw GoldUnparsable(e.what());
  }
}

bool query_match(std::string_view pred, std::string_view gold, QmMode mode) {
  auto gold_ast = parse_gold(gold);
  if (mode == QmMode::TextCanonical) {
    auto pred_text = try_text_form(pred);
    return pred_text && *pred_text == *try_text_form(gold);
  }
  auto pred_ast = try_parse(pred);
  if (!pred_ast) return false;
  if (mode == QmMode::Ast) {
    return normalize_for_match(*pred_ast) == normalize_for_match(gold_ast);
  }
  return alpha_equivalent(*pred_ast, gold_ast);
}

}  // namespace sparqlkit::evaluator
