#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtures {

inline const char* const kPopulusQuery =
    "select distinct ?ans where { ?ans wdt:P279 wd:Q25356}";
inline const char* const kPopulusCanonical =
    "select distinct ?ans where { ?ans wdt:P279 wd:Q25356 }";
inline const char* const kPopulusFlipped =
    "select distinct ?ans where { wd:Q25356 wdt:P279 ?ans }";

inline std::string data_path(const std::string& name) {
  return std::string(SPARQLKIT_TEST_DATA) + "/" + name;
}

inline std::vector<std::string> lines(const std::string& name) {
  std::ifstream in(data_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

inline std::vector<std::string> corpus() { return lines("queries.txt"); }

}  // namespace fixtures
