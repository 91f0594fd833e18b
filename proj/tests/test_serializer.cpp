#include "doctest.h"
#include "fixtures.hpp"
#include "sparqlkit/sparql/parser.hpp"
#include "sparqlkit/sparql/serializer.hpp"

using namespace sparqlkit::sparql;

TEST_CASE("canonical form of the Populus query") {
  CHECK(serialize(parse(fixtures::kPopulusQuery)) == fixtures::kPopulusCanonical);
  CHECK(canonicalize("SELECT  DISTINCT ?ans\nWHERE {?ans wdt:P279 wd:Q25356.}") ==
        fixtures::kPopulusCanonical);
}

TEST_CASE("empty ask") {
  CHECK(serialize(parse("ASK { }")) == "ask where { }");
}

TEST_CASE("canonical constructs") {
  CHECK(canonicalize("SELECT ?x WHERE { ?x a wd:Q5 ; wdt:P26 ?y , ?z }") ==
        "select ?x where { ?x a wd:Q5 ; wdt:P26 ?y , ?z }");
  CHECK(canonicalize("select (COUNT(DISTINCT ?x) AS ?c) where { ?x ?p ?o }") ==
        "select ( count ( distinct ?x ) as ?c ) where { ?x ?p ?o }");
  CHECK(canonicalize("select COUNT(*) where { ?x ?p ?o }") ==
        "select count ( * ) where { ?x ?p ?o }");
  CHECK(canonicalize("select * where { ?x ?p ?o } ORDER BY DESC(?o) LIMIT 5 OFFSET 2") ==
        "select * where { ?x ?p ?o } order by desc ( ?o ) limit 5 offset 2");
  CHECK(canonicalize("select ?x where { {?x ?p ?o} UNION {?o ?p ?x} OPTIONAL {?x ?q ?r} }") ==
        "select ?x where { { ?x ?p ?o } union { ?o ?p ?x } optional { ?x ?q ?r } }");
  CHECK(canonicalize("select $x where { $x ?p ?o }") == "select ?x where { ?x ?p ?o }");
}

TEST_CASE("rdf:type prints as a only in predicate position") {
  CHECK(canonicalize("select ?x where { <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> ?p ?x . "
                     "?x <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> ?y }") ==
        "select ?x where { <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> ?p ?x . ?x a ?y }");
}

TEST_CASE("compact style") {
  const auto ast = parse("select $x where { $x ?p ?o ; ?q ?r . filter(?o > 1) } limit 2");
  CHECK(serialize(ast, Style::Compact) ==
        "select $x where {$x ?p ?o; ?q ?r filter (?o > 1)} limit 2");
}

TEST_CASE("canonical form is a fixed point") {
  for (const auto& q : fixtures::corpus()) {
    INFO(q);
    const auto once = canonicalize(q);
    CHECK(canonicalize(once) == once);
  }
}
