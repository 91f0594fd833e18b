#include "doctest.h"
#include "fixtures.hpp"
#include "sparqlkit/error.hpp"
#include "sparqlkit/sparql/parser.hpp"
#include "sparqlkit/sparql/serializer.hpp"
#include "sparqlkit/sparql/triples.hpp"

using namespace sparqlkit;
using namespace sparqlkit::sparql;

namespace {

const TripleBlock& only_block(const QueryAst& ast) {
  REQUIRE(ast.where.items.size() == 1);
  return std::get<TripleBlock>(ast.where.items[0]);
}

template <typename E>
void check_throws(const std::string& text) {
  INFO(text);
  CHECK_THROWS_AS(parse(text), E);
}

}  // namespace

TEST_CASE("Populus query") {
  const auto ast = parse(fixtures::kPopulusQuery);
  CHECK(ast.form == QueryForm::Select);
  CHECK(ast.distinct);
  REQUIRE(ast.projection.size() == 1);
  CHECK(std::get<Variable>(ast.projection[0]).name == "ans");
  const auto& block = only_block(ast);
  REQUIRE(block.triples.size() == 1);
  CHECK(block.triples[0] == TriplePattern{Term::variable("ans"), Term::prefixed("wdt", "P279"),
                                          Term::prefixed("wd", "Q25356")});
}

TEST_CASE("minimal ask") {
  for (const char* text : {"ASK { }", "ask where {}"}) {
    const auto ast = parse(text);
    CHECK(ast.form == QueryForm::Ask);
    CHECK(ast.where.items.empty());
    CHECK(ast.projection.empty());
  }
}

TEST_CASE("abbreviations are flagged and expandable") {
  const auto ast = parse("select ?x where { ?x wdt:P26 ?y ; wdt:P279 ?z , ?w }");
  const auto& block = only_block(ast);
  REQUIRE(block.triples.size() == 3);
  CHECK(block.abbreviations == std::vector<Abbreviation>{Abbreviation::None,
                                                         Abbreviation::SharedSubject,
                                                         Abbreviation::SharedPredicate});
  CHECK(block.triples[1].subject == Term::variable("x"));
  CHECK(block.triples[2].predicate == Term::prefixed("wdt", "P279"));
  CHECK(block.triples[2].object == Term::variable("w"));
  CHECK(has_abbreviations(ast));
  CHECK(serialize(parse(serialize(ast))) == serialize(ast));
}

TEST_CASE("keywords are case-insensitive") {
  CHECK(parse("SeLeCt DiStInCt ?ans WhErE { ?ans wdt:P279 wd:Q25356 }") ==
        parse(fixtures::kPopulusQuery));
}

TEST_CASE("rdf:type shorthand") {
  const auto ast = parse("select ?x where { ?x a wd:Q5 }");
  CHECK(only_block(ast).triples[0].predicate == Term(FullIri{kRdfType}));
}

TEST_CASE("count forms") {
  SUBCASE("with alias") {
    const auto ast = parse("select (count(distinct ?x) as ?c) where { ?x ?p ?o }");
    const auto& count = std::get<CountAggregate>(ast.projection[0]);
    CHECK(count.distinct);
    CHECK(count.argument->name == "x");
    CHECK(count.alias->name == "c");
  }
  SUBCASE("bare") {
    const auto ast = parse("select count(?x) where { ?x ?p ?o }");
    const auto& count = std::get<CountAggregate>(ast.projection[0]);
    CHECK_FALSE(count.alias);
  }
  SUBCASE("star") {
    const auto ast = parse("select (count(*) as ?n) where { ?x ?p ?o }");
    CHECK_FALSE(std::get<CountAggregate>(ast.projection[0]).argument);
  }
}

TEST_CASE("group structure") {
  const auto ast = parse(
      "select ?x where { ?x wdt:P31 wd:Q5 . OPTIONAL { ?x wdt:P570 ?d } "
      "{ ?x ?p ?o } UNION { ?o ?p ?x } UNION { ?x ?q ?o } { ?x wdt:P1 ?o } FILTER(?o != ?x) }");
  const auto& items = ast.where.items;
  REQUIRE(items.size() == 5);
  CHECK(std::holds_alternative<TripleBlock>(items[0]));
  CHECK(std::holds_alternative<OptionalClause>(items[1]));
  CHECK(std::get<UnionClause>(items[2]).branches.size() == 3);
  CHECK(std::holds_alternative<SubgroupClause>(items[3]));
  CHECK(std::holds_alternative<FilterClause>(items[4]));
}

TEST_CASE("filter spans are normalized") {
  const auto a = parse("select ?x where { ?x ?p ?v FILTER(((?v > 3))) }");
  const auto b = parse("select ?x where { ?x ?p ?v . filter ( ?v > 3 ) }");
  const auto c = parse("select ?x where { ?x ?p ?v FILTER($v > 3) }");
  CHECK(a == b);
  CHECK(a == c);
  CHECK(serialize(a) == "select ?x where { ?x ?p ?v filter ( ?v > 3 ) }");
  const auto d = parse("select ?x where { ?x ?p ?l FILTER regex(?l, \"a\") }");
  CHECK(serialize(d) == "select ?x where { ?x ?p ?l filter ( regex ( ?l , \"a\" ) ) }");
  // (a) && (b) keeps its inner parentheses
  const auto e = parse("select ?x where { ?x ?p ?v FILTER((?v > 1) && (?v < 5)) }");
  CHECK(serialize(e) == "select ?x where { ?x ?p ?v filter ( ( ?v > 1 ) && ( ?v < 5 ) ) }");
}

TEST_CASE("solution modifiers") {
  const auto ast = parse("select ?x where { ?x ?p ?v } order by desc(?v) ?x offset 20 limit 10");
  REQUIRE(ast.modifiers.order_by.size() == 2);
  CHECK(ast.modifiers.order_by[0].direction == OrderDirection::Desc);
  CHECK(ast.modifiers.order_by[1].direction == OrderDirection::Unspecified);
  CHECK(ast.modifiers.limit == 10u);
  CHECK(ast.modifiers.offset == 20u);
}

TEST_CASE("signed numbers in term position") {
  const auto ast = parse("select ?x where { ?x wdt:P1 -4 . ?x wdt:P2 +1.5 }");
  const auto& block = only_block(ast);
  CHECK(block.triples[0].object == Term(Literal{"-4", ""}));
  CHECK(block.triples[1].object == Term(Literal{"+1.5", ""}));
  CHECK(parse(serialize(ast)) == ast);
  // subtraction inside a filter stays an operator
  CHECK(canonicalize("select ?x where { ?x ?p ?v FILTER(?v -4 > 0) }") ==
        "select ?x where { ?x ?p ?v filter ( ?v - 4 > 0 ) }");
}

TEST_CASE("prefix declarations are dropped") {
  CHECK(parse("PREFIX wd: <http://www.wikidata.org/entity/> BASE <http://x/> "
              "select ?x where { wd:Q1 ?p ?x }") == parse("select ?x where { wd:Q1 ?p ?x }"));
}

TEST_CASE("syntax errors") {
  check_throws<SyntaxError>("select where { ?x ?p ?o }");
  check_throws<SyntaxError>("select ?x where { ?x ?p }");
  check_throws<SyntaxError>("select ?x where { ?x ?p ?o ");
  check_throws<SyntaxError>("select ?x where { ?x ?p ?o } }");
  check_throws<SyntaxError>("select ?x where { ?x ?p ?o } limit x");
  check_throws<SyntaxError>("select ?x where { ?x ?p ?o } limit -1");
  check_throws<SyntaxError>("?x ?p ?o");
  check_throws<SyntaxError>("select ?y where { ?x ?p ?o }");
  check_throws<SyntaxError>("select ?x where { ?x ?p ?o } order by ?z");
  check_throws<SyntaxError>("select ?x where { ?x ?p ?o FILTER ?o }");
  check_throws<LexError>("select ?x where { ?x ?p \"open }");
}

TEST_CASE("syntax errors carry the token index") {
  try {
    parse("select ?x where { ?x ?p }");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.token_index() == 6);  // the closing brace
  }
}

TEST_CASE("features outside the subset") {
  for (const char* text : {
           "construct { ?s ?p ?o } where { ?s ?p ?o }",
           "describe wd:Q1",
           "select reduced ?x where { ?x ?p ?o }",
           "select ?x from <http://g> where { ?x ?p ?o }",
           "select ?x where { ?x ?p ?o } group by ?x",
           "select ?x where { ?x ?p ?o MINUS { ?x ?q ?o } }",
           "select ?x where { ?x ?p ?o BIND(1 AS ?y) }",
           "select ?x where { SERVICE <http://s> { ?x ?p ?o } }",
           "select ?x where { ?x wdt:P31/wdt:P279* wd:Q5 }",
           "select ?x where { ?x ^wdt:P31 wd:Q5 }",
           "select ?x where { ?x wdt:P31|wdt:P279 wd:Q5 }",
           "select ?x where { ?x wdt:P279+ wd:Q5 }",
           "select ?x where { ?x ?p [ ?q ?r ] }",
           "select ?x where { ?x ?p _:b }",
           "select ?x where { ?x ?p ( 1 2 ) }",
           "select ?x where { { select ?x where { ?x ?p ?o } } }",
           "select ?x where { ?x ?p ?o FILTER NOT EXISTS { ?x ?q ?o } }",
           "select (sum(?v) as ?s) where { ?x ?p ?v }",
           "select (?v + 1 as ?s) where { ?x ?p ?v }",
           "select ?x where { ?x ?p ?o } values ?x { wd:Q1 }",
       }) {
    check_throws<UnsupportedFeature>(text);
  }
}

TEST_CASE("round trip over the corpus") {
  for (const auto& q : fixtures::corpus()) {
    INFO(q);
    const auto ast = parse(q);
    CHECK(parse(serialize(ast)) == ast);
    CHECK(parse(serialize(ast, Style::Compact)) == ast);
  }
}
