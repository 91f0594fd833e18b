#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"
#include "sparqlkit/cli/cli.hpp"
#include "stub_server.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "sparqlkit");
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = sparqlkit::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("sparqlkit_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

const char* const kLabels = "wd:Q25356\tPopulus\nwdt:P279\tsubclass of\nwdt:P26\tspouse\n";

}  // namespace

TEST_CASE("corrupt writes pairs and a manifest") {
  Workspace ws;
  spit(ws / "one.txt", std::string(fixtures::kPopulusQuery) + "\n");
  auto r = cli({"corrupt", "--objective", "toc", "--seed", "7", "-i", ws / "one.txt", "-o",
                ws / "pairs.jsonl"});
  CHECK(r.code == 0);
  const auto lines = nonempty_lines(slurp(ws / "pairs.jsonl"));
  REQUIRE(lines.size() == 1);
  auto pair = json::parse(lines[0]);
  CHECK(pair["objective"] == "toc");
  CHECK(pair["target"] == fixtures::kPopulusCanonical);

  auto manifest = json::parse(slurp(ws / "pairs.jsonl.manifest.json"));
  CHECK(manifest["command"] == "corrupt");
  CHECK(manifest["seed"] == 7);
  CHECK(manifest["counts"]["processed"] == 1);
  CHECK(manifest["counts"]["pairs"] == 1);
  CHECK(manifest["counts"]["skipped"] == 0);
  CHECK(manifest["input"] == ws / "one.txt");
  CHECK(manifest.contains("wall_time_seconds"));
  CHECK(manifest["config"].get<std::string>().find("seed=7") != std::string::npos);
}

TEST_CASE("corrupt output is reproducible across runs and jobs") {
  Workspace ws;
  std::string corpus;
  for (const auto& q : fixtures::corpus()) corpus += q + "\n";
  spit(ws / "corpus.txt", corpus);
  auto a = cli({"corrupt", "--seed", "7", "-i", ws / "corpus.txt", "-o", ws / "a.jsonl"});
  auto b = cli({"corrupt", "--seed", "7", "-i", ws / "corpus.txt", "-o", ws / "b.jsonl", "-j",
                "4"});
  auto c = cli({"corrupt", "--seed", "8", "-i", ws / "corpus.txt", "-o", ws / "c.jsonl"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(slurp(ws / "a.jsonl") == slurp(ws / "b.jsonl"));
  CHECK(slurp(ws / "a.jsonl") != slurp(ws / "c.jsonl"));
  // Mixed mode: one TOC and one MLM pair per query.
  CHECK(nonempty_lines(slurp(ws / "a.jsonl")).size() == 2 * fixtures::corpus().size());
  auto manifest = json::parse(slurp(ws / "a.jsonl.manifest.json"));
  CHECK(manifest["counts"]["pairs"] == nonempty_lines(slurp(ws / "a.jsonl")).size());
}

TEST_CASE("manifest config snapshot replays the run") {
  Workspace ws;
  std::string corpus;
  for (const auto& q : fixtures::corpus()) corpus += q + "\n";
  spit(ws / "corpus.txt", corpus);
  auto first = cli({"corrupt", "--objective", "mlm", "--seed", "123", "--mlm-rate", "0.3", "-i",
                    ws / "corpus.txt", "-o", ws / "first.jsonl"});
  REQUIRE(first.code == 0);
  auto manifest = json::parse(slurp(ws / "first.jsonl.manifest.json"));
  spit(ws / "replay.toml", manifest["config"].get<std::string>());
  auto replay = cli({"--config", ws / "replay.toml", "corrupt", "-o", ws / "replay.jsonl"});
  CAPTURE(replay.err);
  REQUIRE(replay.code == 0);
  CHECK(slurp(ws / "replay.jsonl") == slurp(ws / "first.jsonl"));
}

TEST_CASE("corrupt reports skipped lines with exit 2") {
  Workspace ws;
  auto r = cli({"corrupt", "--objective", "toc", "--manifest", ws / "m.json"},
               std::string(fixtures::kPopulusQuery) + "\nselect where {\n");
  CHECK(r.code == 2);
  CHECK(nonempty_lines(r.out).size() == 1);
  CHECK(r.err.find("line 2 skipped") != std::string::npos);
  auto manifest = json::parse(slurp(ws / "m.json"));
  CHECK(manifest["counts"]["skipped"] == 1);
  CHECK(manifest["output"] == "-");
}

TEST_CASE("corrupt with labels verbalizes first") {
  Workspace ws;
  spit(ws / "labels.tsv", kLabels);
  auto r = cli({"corrupt", "--labels", ws / "labels.tsv", "--manifest", ws / "m.json"},
               std::string(fixtures::kPopulusQuery) + "\n");
  CHECK(r.code == 0);
  CHECK(r.out.find("wd:Populus") != std::string::npos);
  CHECK(r.out.find("Q25356") == std::string::npos);
}

TEST_CASE("verbalize and deverbalize") {
  Workspace ws;
  spit(ws / "labels.tsv", kLabels);
  auto v = cli({"verbalize", "--labels", ws / "labels.tsv", "-o", ws / "v.txt"},
               std::string(fixtures::kPopulusQuery) + "\nask { ?x wdt:P31 wd:Q5 }\n");
  CHECK(v.code == 0);
  CHECK(slurp(ws / "v.txt") ==
        "select distinct ?ans where { ?ans wdt:subclass_of wd:Populus}\n"
        "ask { ?x wdt:P31 wd:Q5 }\n");
  auto manifest = json::parse(slurp(ws / "v.txt.manifest.json"));
  CHECK(manifest["counts"]["substituted"] == 2);
  CHECK(manifest["counts"]["unmapped"] == 2);
  CHECK(manifest["counts"]["lines"] == 2);

  auto d = cli({"deverbalize", "--labels", ws / "labels.tsv", "-i", ws / "v.txt", "--manifest",
                ws / "d.json"});
  CHECK(d.code == 0);
  CHECK(d.out == std::string(fixtures::kPopulusQuery) + "\nask { ?x wdt:P31 wd:Q5 }\n");

  auto field = cli({"deverbalize", "--labels", ws / "labels.tsv", "--field", "pred",
                    "--manifest", ws / "f.json"},
                   "{\"id\":1,\"pred\":\"select ?x where { ?x wdt:spouse ?y }\"}\n");
  CHECK(field.code == 0);
  CHECK(json::parse(field.out)["pred"] == "select ?x where { ?x wdt:P26 ?y }");
  CHECK(json::parse(field.out)["id"] == 1);
}

TEST_CASE("build-finetune") {
  Workspace ws;
  spit(ws / "labels.tsv", kLabels);
  spit(ws / "data.jsonl",
       R"({"id":"a","question":"What is the subclass of Populus?","query":"select distinct ?ans where { ?ans wdt:P279 wd:Q25356}","entities":[["wd:Q25356","Populus"]],"relations":[["wdt:P279","subclass of"]]})"
       "\n"
       R"({"id":"b","question":"x","query":"select where"})"
       "\n");
  auto r = cli({"build-finetune", "--labels", ws / "labels.tsv", "--scenario", "gold-entities",
                "-i", ws / "data.jsonl", "-o", ws / "ft.jsonl"});
  CHECK(r.code == 2);
  const auto lines = nonempty_lines(slurp(ws / "ft.jsonl"));
  REQUIRE(lines.size() == 1);
  auto rec = json::parse(lines[0]);
  CHECK(rec["id"] == "a");
  CHECK(rec["input"] == "What is the subclass of Populus? | wd:Q25356 Populus");
  CHECK(rec["target"] == "select distinct ?ans where { ?ans wdt:subclass_of wd:Populus }");
  auto manifest = json::parse(slurp(ws / "ft.jsonl.manifest.json"));
  CHECK(manifest["counts"]["processed"] == 1);
  CHECK(manifest["counts"]["skipped_unparsable_query"] == 1);
  CHECK(manifest["scenario"] == "gold-entities");

  auto plain = cli({"build-finetune", "--labels", ws / "labels.tsv", "--no-verbalize", "-i",
                    ws / "data.jsonl", "--manifest", ws / "m.json"});
  CHECK(json::parse(nonempty_lines(plain.out)[0])["target"] == fixtures::kPopulusCanonical);
}

TEST_CASE("evaluate identical files") {
  Workspace ws;
  std::string corpus;
  for (const auto& q : fixtures::corpus()) corpus += q + "\n";
  spit(ws / "gold.txt", corpus);
  auto r = cli({"evaluate", "--pred", ws / "gold.txt", "--gold", ws / "gold.txt", "--report",
                ws / "report.json", "-o", ws / "records.jsonl", "-j", "3"});
  CHECK(r.code == 0);
  auto report = json::parse(slurp(ws / "report.json"));
  CHECK(report["qm_rate"] == 1.0);
  CHECK(report["n"] == fixtures::corpus().size());
  CHECK(report["error_counts"]["correct"] == fixtures::corpus().size());
  CHECK(report["mode"] == "ast");
  CHECK(nonempty_lines(slurp(ws / "records.jsonl")).size() == fixtures::corpus().size());
  CHECK(r.err.find("evaluation report") != std::string::npos);
  auto manifest = json::parse(slurp(ws / "records.jsonl.manifest.json"));
  CHECK(manifest["counts"]["records"] == fixtures::corpus().size());
  CHECK(manifest["counts"]["qm_true"] == fixtures::corpus().size());
}

TEST_CASE("classify-errors on the flipped pair") {
  Workspace ws;
  spit(ws / "pred.txt", std::string(fixtures::kPopulusFlipped) + "\n");
  spit(ws / "gold.txt", std::string(fixtures::kPopulusQuery) + "\n");
  auto r = cli({"classify-errors", "--pred", ws / "pred.txt", "--gold", ws / "gold.txt",
                "--report", ws / "report.json", "--manifest", ws / "m.json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out) == json{{"id", "1"}, {"error_class", "triplet_flip"}});
  auto report = json::parse(slurp(ws / "report.json"));
  CHECK(report["error_counts"]["triplet_flip"] == 1);
  CHECK(report["triplet_errors"] == 1);
  CHECK(report["qm_rate"] == 0.0);
}

TEST_CASE("evaluate with an answers table and JSONL input") {
  Workspace ws;
  spit(ws / "answers.jsonl",
       json({{"query", fixtures::kPopulusQuery}, {"answers", {"wd:Q1", "wd:Q2"}}}).dump() + "\n" +
           json({{"query", fixtures::kPopulusFlipped}, {"answers", json::array()}}).dump() + "\n");
  const std::string input =
      json({{"id", "x"}, {"predicted_query", fixtures::kPopulusFlipped},
            {"gold_query", fixtures::kPopulusQuery}})
          .dump() +
      "\n" +
      json({{"id", "y"}, {"predicted_query", fixtures::kPopulusQuery},
            {"gold_query", fixtures::kPopulusQuery}, {"gold_answers", {"wd:Q1"}}})
          .dump() +
      "\n";
  auto r = cli({"evaluate", "--answers", ws / "answers.jsonl", "--report", ws / "report.json",
                "--manifest", ws / "m.json"},
               input);
  CHECK(r.code == 0);
  const auto lines = nonempty_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(json::parse(lines[0])["f1"] == 0.0);
  // Predicted {Q1, Q2} against gold {Q1}.
  CHECK(json::parse(lines[1])["f1"].get<double>() == doctest::Approx(2.0 / 3));
  auto report = json::parse(slurp(ws / "report.json"));
  CHECK(report["macro_f1"].get<double>() == doctest::Approx(1.0 / 3));
}

TEST_CASE("evaluate against an endpoint with a cache from the environment") {
  Workspace ws;
  stub::SparqlServer server([](const std::string&, int) {
    return stub::Reply{200, stub::select_json("ans", {"http://www.wikidata.org/entity/Q1"})};
  });
  spit(ws / "q.txt", std::string(fixtures::kPopulusQuery) + "\n");
  ::setenv("SPARQLKIT_CACHE_DIR", (ws / "cache").c_str(), 1);
  auto args = std::vector<std::string>{"evaluate", "--pred", ws / "q.txt", "--gold",
                                       ws / "q.txt", "--endpoint", server.url(),
                                       "--manifest", ws / "m.json"};
  auto first = cli(args);
  auto second = cli(args);
  ::unsetenv("SPARQLKIT_CACHE_DIR");
  CHECK(first.code == 0);
  CHECK(second.code == 0);
  CHECK(first.out == second.out);
  CHECK(json::parse(first.out)["f1"] == 1.0);
  // Gold and prediction are the same query: one request in total.
  CHECK(server.requests() == 1);
  CHECK(fs::exists(ws / "cache"));
  auto manifest = json::parse(slurp(ws / "m.json"));
  CHECK(manifest["counts"]["endpoint_requests"] == 0);
}

TEST_CASE("fetch-labels against a stub endpoint") {
  Workspace ws;
  stub::SparqlServer server([](const std::string& q, int) {
    std::string rows;
    if (q.find("entity/Q25356>") != std::string::npos) {
      rows =
          R"({"item":{"type":"uri","value":"http://www.wikidata.org/entity/Q25356"},"label":{"type":"literal","value":"Populus"}})";
    }
    return stub::Reply{200, R"({"head":{"vars":["item","label"]},"results":{"bindings":[)" +
                                rows + "]}}"};
  });
  auto r = cli({"fetch-labels", "--endpoint", server.url(), "-o", ws / "labels.tsv"},
               std::string(fixtures::kPopulusQuery) + "\n");
  CHECK(r.code == 2);  // wdt:P279 came back without a label
  CHECK(r.err.find("no label: wdt:P279") != std::string::npos);
  const auto text = slurp(ws / "labels.tsv");
  CHECK(text.find("wd:Q25356\tPopulus\n") != std::string::npos);
  auto manifest = json::parse(slurp(ws / "labels.tsv.manifest.json"));
  CHECK(manifest["counts"]["labels"] == 1);
  CHECK(manifest["counts"]["missing"] == 1);
  CHECK(manifest["counts"]["requests"] == 1);

  // The output loads back as a label map.
  auto v = cli({"verbalize", "--labels", ws / "labels.tsv", "--manifest", ws / "v.json"},
               std::string(fixtures::kPopulusQuery) + "\n");
  CHECK(v.out.find("wd:Populus") != std::string::npos);
}

TEST_CASE("parse-check") {
  Workspace ws;
  auto r = cli({"parse-check", "--manifest", ws / "m.json"},
               "SELECT ?x WHERE {?x ?p ?o}\n\nselect where\n");
  CHECK(r.code == 2);
  const auto lines = nonempty_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(json::parse(lines[0])["canonical"] == "select ?x where { ?x ?p ?o }");
  CHECK(json::parse(lines[1])["ok"] == false);
  CHECK(json::parse(lines[1])["line"] == 3);
}

TEST_CASE("usage and configuration errors exit 1") {
  Workspace ws;
  auto flag = cli({"corrupt", "--bogus"});
  CHECK(flag.code == 1);
  CHECK(flag.err.find("--bogus") != std::string::npos);

  CHECK(cli({}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"corrupt", "--objective", "xyz", "--manifest", ws / "m.json"}, "ask {}\n").code == 1);
  CHECK(cli({"corrupt", "--toc-identity-prob", "2"}).code == 1);
  CHECK(cli({"corrupt", "-j", "0"}).code == 1);

  auto missing = cli({"corrupt", "-i", ws / "nope.txt", "--manifest", ws / "m.json"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("error:") != std::string::npos);

  auto labels = cli({"verbalize", "--manifest", ws / "m.json"}, "ask {}\n");
  CHECK(labels.code == 1);
  CHECK(labels.err.find("--labels") != std::string::npos);

  spit(ws / "pred.txt", "ask {}\n");
  spit(ws / "gold.txt", "select where {\n");
  auto gold = cli({"evaluate", "--pred", ws / "pred.txt", "--gold", ws / "gold.txt",
                   "--manifest", ws / "m.json"});
  CHECK(gold.code == 1);
  CHECK(gold.err.find("record 1") != std::string::npos);

  auto both = cli({"evaluate", "--pred", ws / "pred.txt", "--gold", ws / "pred.txt",
                   "--answers", "a", "--endpoint", "http://x/", "--manifest", ws / "m.json"});
  CHECK(both.code == 1);

  CHECK(cli({"--version"}).code == 0);
  CHECK(cli({"corrupt", "--help"}).code == 0);
}

TEST_CASE("installed binary") {
  Workspace ws;
  spit(ws / "one.txt", std::string(fixtures::kPopulusQuery) + "\n");
  const std::string bin = SPARQLKIT_CLI;
  const std::string cmd = "cd '" + ws.dir.string() + "' && '" + bin +
                          "' corrupt --objective toc --seed 7 < one.txt > out.jsonl 2> err.txt";
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(nonempty_lines(slurp(ws / "out.jsonl")).size() == 1);
  // Writing to stdout puts the manifest in the working directory.
  CHECK(fs::exists(ws / "corrupt.manifest.json"));

  const std::string bad = "'" + bin + "' corrupt --nope > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 1);
}
