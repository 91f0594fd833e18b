#include "sparqlkit/verbalizer/label_fetcher.hpp"

#include <set>
#include <unordered_map>

#include "sparqlkit/error.hpp"
#include "sparqlkit/util/parallel.hpp"

namespace sparqlkit::verbalizer {

void PrefixTable::set(const std::string& prefix, const std::string& namespace_iri,
                      const std::string& label_namespace_iri) {
  entries_[prefix] = Entry{namespace_iri, label_namespace_iri.empty()
                                              ? namespace_iri
                                              : label_namespace_iri};
}

std::string PrefixTable::label_subject(const std::string& prefixed) const {
  const auto colon = prefixed.find(':');
  if (colon == std::string::npos) return "";
  auto it = entries_.find(prefixed.substr(0, colon));
  if (it == entries_.end()) return "";
  return it->second.label_namespace_iri + prefixed.substr(colon + 1);
}

PrefixTable PrefixTable::wikidata() {
  const std::string entity = "http://www.wikidata.org/entity/";
  PrefixTable table;
  table.set("wd", entity);
  table.set("wdt", "http://www.wikidata.org/prop/direct/", entity);
  table.set("p", "http://www.wikidata.org/prop/", entity);
  table.set("ps", "http://www.wikidata.org/prop/statement/", entity);
  table.set("pq", "http://www.wikidata.org/prop/qualifier/", entity);
  return table;
}

std::string label_query(const std::vector<std::string>& subjects,
                        const std::string& language) {
  std::string query = "SELECT ?item ?label WHERE { VALUES ?item {";
  for (const auto& subject : subjects) query += " <" + subject + ">";
  query +=
      " } ?item <http://www.w3.org/2000/01/rdf-schema#label> ?label . "
      "FILTER(LANG(?label) = \"" + language + "\") }";
  return query;
}

FetchResult fetch_labels(const std::vector<std::string>& iris,
                         endpoint::SparqlClient& client,
                         const LabelFetchConfig& config) {
  FetchResult result;

  // Unique IRIs in first-seen order, grouped by the resource holding the label.
  std::vector<std::string> unique;
  std::set<std::string> seen;
  std::vector<std::string> subjects;
  std::set<std::string> seen_subjects;
  for (const auto& iri : iris) {
    if (!seen.insert(iri).second) continue;
    unique.push_back(iri);
    const auto subject = config.prefixes.label_subject(iri);
    if (!subject.empty() && seen_subjects.insert(subject).second) {
      subjects.push_back(subject);
    }
  }

  const std::size_t batch = std::max<std::size_t>(1, config.batch_size);
  const std::size_t batches = (subjects.size() + batch - 1) / batch;
  std::vector<std::unordered_map<std::string, std::string>> found(batches);

  util::parallel_for(batches, config.max_in_flight, [&](std::size_t b) {
    const auto first = subjects.begin() + static_cast<std::ptrdiff_t>(b * batch);
    const auto last = subjects.begin() +
                      static_cast<std::ptrdiff_t>(std::min(subjects.size(), (b + 1) * batch));
    const auto document = client.run(label_query({first, last}, config.language));
    try {
      for (const auto& row : document.at("results").at("bindings")) {
        if (!row.contains("item") || !row.contains("label")) continue;
        const auto subject = row["item"].at("value").get<std::string>();
        found[b].emplace(subject, row["label"].at("value").get<std::string>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw EndpointError(200, std::string("unexpected results document: ") + e.what());
    }
  });
  result.requests = batches;

  std::unordered_map<std::string, std::string> labels;
  for (auto& part : found) labels.merge(part);
  for (const auto& iri : unique) {
    const auto subject = config.prefixes.label_subject(iri);
    auto it = subject.empty() ? labels.end() : labels.find(subject);
    if (it == labels.end()) {
      result.missing.push_back(iri);
    } else {
      result.entries.push_back({iri, it->second});
    }
  }
  return result;
}

}  // namespace sparqlkit::verbalizer
