#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "sparqlkit/endpoint/sparql_client.hpp"

namespace sparqlkit::verbalizer {

/// Namespace IRIs for prefixes, plus the namespace whose resources carry the
/// rdfs:label for a prefix (Wikidata attaches property labels to wd:P..,
/// not to wdt:P..).
class PrefixTable {
 public:
  void set(const std::string& prefix, const std::string& namespace_iri,
           const std::string& label_namespace_iri = "");

  /// Full IRI whose label describes `prefixed`, or "" for unknown prefixes.
  std::string label_subject(const std::string& prefixed) const;

  static PrefixTable wikidata();

 private:
  struct Entry {
    std::string namespace_iri;
    std::string label_namespace_iri;
  };
  std::map<std::string, Entry> entries_;
};

struct LabelFetchConfig {
  std::string language = "en";
  std::size_t batch_size = 50;
  std::size_t max_in_flight = 1;
  PrefixTable prefixes = PrefixTable::wikidata();
};

struct FetchedLabel {
  std::string iri;    // prefixed, as requested
  std::string label;  // raw, as returned by the endpoint
};

struct FetchResult {
  std::vector<FetchedLabel> entries;  // input order
  std::vector<std::string> missing;   // no label returned; not an error
  std::size_t requests = 0;
};

/// Label lookup query for one batch of label subjects.
std::string label_query(const std::vector<std::string>& subjects,
                        const std::string& language);

/// Looks up rdfs:label values in `language` for prefixed IRIs, batched and
/// with up to `max_in_flight` concurrent requests. Duplicate IRIs are
/// queried once. Transport failures propagate (NetworkError, TimeoutError,
/// EndpointError).
FetchResult fetch_labels(const std::vector<std::string>& iris,
                         endpoint::SparqlClient& client,
                         const LabelFetchConfig& config);

}  // namespace sparqlkit::verbalizer
