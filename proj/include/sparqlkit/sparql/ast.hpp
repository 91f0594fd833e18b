#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sparqlkit/sparql/lexer.hpp"

namespace sparqlkit::sparql {

/// Heap-allocated value with deep-copy semantics; lets the pattern tree
/// nest groups by value.
template <typename T>
class Box {
 public:
  Box() : ptr_(std::make_unique<T>()) {}
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&& other) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&& other) noexcept = default;
  ~Box() = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::unique_ptr<T> ptr_;
};

inline constexpr const char* kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

struct Variable {
  std::string name;  // without sigil
  char sigil = '?';

  // `?x` and `$x` denote the same variable.
  friend bool operator==(const Variable& a, const Variable& b) {
    return a.name == b.name;
  }
  friend auto operator<=>(const Variable& a, const Variable& b) {
    return a.name <=> b.name;
  }
};

struct PrefixedIri {
  std::string prefix;
  std::string local;

  std::string text() const { return prefix + ":" + local; }
  friend bool operator==(const PrefixedIri&, const PrefixedIri&) = default;
  friend auto operator<=>(const PrefixedIri&, const PrefixedIri&) = default;
};

struct FullIri {
  std::string iri;  // without angle brackets

  friend bool operator==(const FullIri&, const FullIri&) = default;
  friend auto operator<=>(const FullIri&, const FullIri&) = default;
};

struct Literal {
  std::string lexical;     // quoted string or number/boolean, as written
  std::string annotation;  // "", "@lang" or "^^datatype"

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

class Term {
 public:
  using Value = std::variant<Variable, PrefixedIri, FullIri, Literal>;

  Term() = default;
  Term(Value value) : value_(std::move(value)) {}  // NOLINT

  static Term variable(std::string name) { return Term(Variable{std::move(name)}); }
  static Term prefixed(std::string prefix, std::string local) {
    return Term(PrefixedIri{std::move(prefix), std::move(local)});
  }
  /// Builds a term from a single variable / prefixed-name / IRI / literal
  /// token. The keyword `a` maps to rdf:type.
  static Term from_token(const Token& token);
  /// Parses `text` as exactly one term token.
  static Term parse(const std::string& text);

  const Value& value() const { return value_; }
  bool is_variable() const { return std::holds_alternative<Variable>(value_); }
  bool is_prefixed() const { return std::holds_alternative<PrefixedIri>(value_); }
  const Variable* as_variable() const { return std::get_if<Variable>(&value_); }
  const PrefixedIri* as_prefixed() const { return std::get_if<PrefixedIri>(&value_); }

  /// Surface text. In predicate position rdf:type is written as `a`.
  std::string to_string(bool canonical = true, bool predicate = false) const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  Value value_;
};

struct TriplePattern {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
  friend auto operator<=>(const TriplePattern&, const TriplePattern&) = default;
};

/// How a triple was written relative to the one before it in its block.
enum class Abbreviation {
  None,              // full `s p o`
  SharedSubject,     // `; p o`
  SharedPredicate,   // `, o` (shares subject and predicate)
};

struct TripleBlock {
  std::vector<TriplePattern> triples;
  std::vector<Abbreviation> abbreviations;  // parallel to triples

  void push(TriplePattern triple, Abbreviation how = Abbreviation::None) {
    triples.push_back(std::move(triple));
    abbreviations.push_back(how);
  }
  friend bool operator==(const TripleBlock&, const TripleBlock&) = default;
};

struct FilterClause {
  /// Constraint tokens wrapped in exactly one pair of parentheses, keyword
  /// text lowercased.
  std::vector<Token> expression;
  friend bool operator==(const FilterClause&, const FilterClause&) = default;
};

struct PatternGroup;

struct OptionalClause {
  Box<PatternGroup> group;
  friend bool operator==(const OptionalClause&, const OptionalClause&) = default;
};

struct UnionClause {
  std::vector<PatternGroup> branches;  // at least two
  friend bool operator==(const UnionClause&, const UnionClause&) = default;
};

struct SubgroupClause {
  Box<PatternGroup> group;
  friend bool operator==(const SubgroupClause&, const SubgroupClause&) = default;
};

using GroupItem = std::variant<TripleBlock, FilterClause, OptionalClause,
                               UnionClause, SubgroupClause>;

struct PatternGroup {
  std::vector<GroupItem> items;
  friend bool operator==(const PatternGroup&, const PatternGroup&) = default;
};

enum class QueryForm { Select, Ask };

struct CountAggregate {
  bool distinct = false;
  std::optional<Variable> argument;  // nullopt means COUNT(*)
  std::optional<Variable> alias;
  friend bool operator==(const CountAggregate&, const CountAggregate&) = default;
};

using ProjectionItem = std::variant<Variable, CountAggregate>;

enum class OrderDirection { Unspecified, Asc, Desc };

struct OrderKey {
  OrderDirection direction = OrderDirection::Unspecified;
  std::vector<Token> expression;
  friend bool operator==(const OrderKey&, const OrderKey&) = default;
};

struct SolutionModifiers {
  std::vector<OrderKey> order_by;
  std::optional<std::uint64_t> limit;
  std::optional<std::uint64_t> offset;
  friend bool operator==(const SolutionModifiers&, const SolutionModifiers&) = default;
};

struct QueryAst {
  QueryForm form = QueryForm::Select;
  bool distinct = false;
  bool select_all = false;  // SELECT *
  std::vector<ProjectionItem> projection;
  PatternGroup where;
  SolutionModifiers modifiers;

  friend bool operator==(const QueryAst&, const QueryAst&) = default;
};

}  // namespace sparqlkit::sparql
