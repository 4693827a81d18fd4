#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Scratch directory shared by every case; inputs are built once.
const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("bibx_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run bibx(const std::string& args) {
  const fs::path out = workdir() / "stdout.txt", err = workdir() / "stderr.txt";
  const std::string cmd = "env -u BIBX_LLM_API_KEY " + std::string(BIBX_EXE) + " " + args + " >" + out.string() +
                          " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string data(const std::string& name) { return (fs::path(BIBX_TEST_DATA) / name).string(); }

const std::string& corpus() {
  static const std::string path = [] {
    const std::string p = (workdir() / "corpus.json").string();
    const Run r = bibx("merge --in " + data("scopus.bib") + ":scopus --in " + data("wos.bib") + ":wos --in " +
                       data("pubmed.txt") + ":pubmed -o " + p);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    return p;
  }();
  return path;
}

const std::vector<std::string> kCommands{"ingest",    "merge",     "filter",       "report",    "export",
                                         "ngram",     "wordcloud", "project",      "evolution", "treemap",
                                         "sankey",    "productivity", "bar",       "network",   "history",
                                         "similarity", "cocitation", "collab",     "worldmap",  "topics",
                                         "summarize", "ask"};

}  // namespace

TEST_CASE("every command documents itself") {
  for (const auto& c : kCommands) {
    CAPTURE(c);
    const Run r = bibx(c + " --help");
    CHECK(r.code == 0);
    CHECK(r.out.find("Usage") != std::string::npos);
  }
  const Run top = bibx("--help");
  for (const auto& c : kCommands) CHECK(top.out.find(c) != std::string::npos);
}

TEST_CASE("usage errors exit 1 with a hint") {
  Run r = bibx("network " + corpus() + " -o " + (workdir() / "n.svg").string() + " --mn-citations 2");
  CHECK(r.code == 1);
  CHECK(r.err.find("did you mean --min-citations?") != std::string::npos);
  r = bibx("");
  CHECK(r.code == 1);
  r = bibx("filter " + corpus() + " -o " + (workdir() / "f.json").string() + " --years 2020:2010");
  CHECK(r.code == 1);
  r = bibx("collab " + corpus() + " -o " + (workdir() / "c.svg").string() + " --author \"Garsia, M.\"");
  CHECK(r.code == 1);
  CHECK(r.err.find("near matches") != std::string::npos);
}

TEST_CASE("data errors exit 2") {
  Run r = bibx("report " + (workdir() / "missing.json").string());
  CHECK(r.code == 2);
  CHECK(r.err.rfind("error: ", 0) == 0);
  std::ofstream(workdir() / "broken.bib") << "@article{k, title = {never closed\n";
  r = bibx("ingest " + (workdir() / "broken.bib").string() + " --source scopus -o " + (workdir() / "b.json").string());
  CHECK(r.code == 2);
  CHECK(r.err.find("offset") != std::string::npos);
}

TEST_CASE("ask without a key exits 3 before doing anything") {
  const Run r = bibx("ask " + corpus() + " --result bar --q \"Give me insights about the given information\"");
  CHECK(r.code == 3);
  CHECK(r.err.find("BIBX_LLM_API_KEY") != std::string::npos);
}

TEST_CASE("ask --dry-run shows the request without a key") {
  const Run r = bibx("ask " + corpus() + " --result bar --q \"Which year?\" --dry-run");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"messages\"") != std::string::npos);
  CHECK(r.out.find("Which year?") != std::string::npos);
}

TEST_CASE("ingest, filter and report") {
  const std::string single = (workdir() / "scopus.json").string();
  Run r = bibx("ingest " + data("scopus.bib") + " --source scopus -o " + single);
  CHECK(r.code == 0);
  CHECK(r.err.find("WARN") != std::string::npos);  // the entry without a title
  r = bibx("filter " + corpus() + " --years 2015:2018 -o " + (workdir() / "filtered.json").string());
  CHECK(r.code == 0);
  CHECK(r.out.find("kept ") != std::string::npos);
  r = bibx("report " + corpus() + " --format json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"documents\": 8") != std::string::npos);
}

TEST_CASE("replays with the same seed are byte-identical") {
  const std::vector<std::string> runs{"wordcloud {c} -o {o}.svg",
                                      "network {c} -o {o}.svg --min-citations 1",
                                      "collab {c} -o {o}.svg",
                                      "worldmap {c} -o {o}.svg",
                                      "treemap {c} -o {o}.svg",
                                      "project {c} -o {o}.svg --clusters 2",
                                      "topics {c} --k 2 -o {o}.json",
                                      "report {c} --format json -o {o}.json"};
  for (const auto& tmpl : runs) {
    std::vector<std::string> outputs;
    for (int rep = 0; rep < 2; ++rep) {
      std::string args = tmpl;
      const std::string base = (workdir() / ("replay" + std::to_string(rep))).string();
      args.replace(args.find("{c}"), 3, corpus());
      args.replace(args.find("{o}"), 3, base);
      const Run r = bibx("--seed 7 " + args);
      CAPTURE(args);
      REQUIRE_MESSAGE(r.code == 0, r.err);
      const std::string ext = tmpl.find(".svg") != std::string::npos ? ".svg" : ".json";
      outputs.push_back(slurp(base + ext) + (ext == ".svg" ? slurp(base + ".json") : std::string()));
    }
    CAPTURE(tmpl);
    CHECK(outputs[0] == outputs[1]);
    CHECK_FALSE(outputs[0].empty());
  }
}
