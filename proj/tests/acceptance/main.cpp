// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any
// failure. Tolerances and time limits are fixed here, not configurable.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "bibx/askllm.hpp"
#include "bibx/eda.hpp"
#include "bibx/error.hpp"
#include "bibx/fuse.hpp"
#include "bibx/graphs.hpp"
#include "bibx/ingest.hpp"
#include "bibx/random.hpp"
#include "bibx/render.hpp"
#include "bibx/textkit.hpp"
#include "bibx/topics.hpp"
#include "bibx/vectorlab.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "stub_server.hpp"
#include "xml_check.hpp"

using namespace bibx;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  // Records the first failure only; later ones rarely add information.
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

struct Criterion {
  int number;
  std::string name;
  double limit_ms;  // 0 = no time limit
  std::function<Outcome()> run;
};

std::string fmt(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path data_dir() { return BIBX_TEST_DATA; }

Outcome report_ratios() {
  Outcome o;
  eda::ReportTotals t;
  t.citations = 5674;
  t.documents = 184;
  t.sources = 121;
  t.authors = 495;
  t.institutions = 231;
  const auto a = eda::compute_averages(t);
  const std::vector<std::pair<double, double>> got_want{{a.citations_per_document, 30.84},
                                                        {a.docs_per_source, 1.52},
                                                        {a.citations_per_source, 46.89},
                                                        {a.citations_per_author, 11.46},
                                                        {a.citations_per_institution, 24.56}};
  for (const auto& [got, want] : got_want) o.expect(got == want, "got " + fmt(got) + ", want " + fmt(want));
  if (o.ok) o.detail = "30.84 1.52 46.89 11.46 24.56";
  return o;
}

Outcome collaboration_index() {
  Outcome o;
  const auto ci = eda::collaboration_index(495, 43, 141);
  o.expect(ci && *ci == 3.21, "got " + (ci ? fmt(*ci) : std::string("none")));
  if (o.ok) o.detail = "3.21";
  return o;
}

Outcome docs_per_year() {
  Outcome o;
  eda::ReportTotals t;
  t.documents = 184;
  t.distinct_years = 25;
  const double v = eda::compute_averages(t).docs_per_year;
  o.expect(v == 7.36, "got " + fmt(v));
  if (o.ok) o.detail = "7.36";
  return o;
}

Outcome merge_count() {
  Outcome o;
  const auto result = fuse::merge(fixtures::merge_plan());
  o.expect(result.corpus.size() == fixtures::kMergedSize, "merged to " + std::to_string(result.corpus.size()));
  o.detail = std::to_string(result.corpus.size()) + " documents";
  return o;
}

Outcome shared_references() {
  Outcome o;
  const Corpus c = fixtures::shared_reference_corpus();
  const graph::Graph g = graph::shared_reference_graph(c, 10);
  auto weight = [&](std::size_t a, std::size_t b) -> double {
    const auto na = g.find(std::to_string(a)), nb = g.find(std::to_string(b));
    if (!na || !nb) return -1;
    for (const auto& e : g.edges) {
      if ((e.source == *na && e.target == *nb) || (e.source == *nb && e.target == *na)) return e.weight;
    }
    return 0;
  };
  std::size_t expected_edges = 0;
  for (const auto& p : fixtures::shared_pairs()) {
    const double w = weight(p.a, p.b);
    if (p.shared >= 10) {
      ++expected_edges;
      o.expect(w == static_cast<double>(p.shared), std::to_string(p.a) + "-" + std::to_string(p.b) + " weight " +
                                                       fmt(w) + ", want " + std::to_string(p.shared));
    } else {
      o.expect(w <= 0, std::to_string(p.a) + "-" + std::to_string(p.b) + " should be below the threshold");
    }
  }
  o.expect(g.edges.size() == expected_edges, std::to_string(g.edges.size()) + " edges");
  // Components: {92, 97, 128} and {116, 122, 123}.
  auto comp = [&](std::size_t id) {
    const auto n = g.find(std::to_string(id));
    return n ? g.nodes[*n].attributes["component"].get<long>() : -1L;
  };
  o.expect(comp(92) == comp(97) && comp(97) == comp(128), "92/97/128 split across components");
  o.expect(comp(116) == comp(122) && comp(122) == comp(123), "116/122/123 split across components");
  o.expect(comp(92) != comp(116), "the two triangles share a component");
  o.expect(g.nodes.size() == 6, std::to_string(g.nodes.size()) + " nodes");
  if (o.ok) o.detail = "weights 14/10/20/26/13, 2 components";
  return o;
}

Outcome citation_history() {
  Outcome o;
  const auto chain = graph::citation_history(fixtures::citation_history_corpus(), 97);
  o.expect(chain.backward == fixtures::expected_backward(), "backward edges differ");
  o.expect(chain.forward == fixtures::expected_forward(), "forward edges differ");
  if (o.ok) o.detail = "4 backward, 4 forward";
  return o;
}

Outcome ego_network() {
  Outcome o;
  const graph::Graph g = graph::coauthorship(fixtures::ego_corpus());
  const std::size_t d1 = graph::ego(g, fixtures::kEgoSeed, 1).nodes.size() - 1;
  const std::size_t d2 = graph::ego(g, fixtures::kEgoSeed, 2).nodes.size() - 1 - d1;
  o.expect(d1 == 4, "depth-1 neighbours " + std::to_string(d1));
  o.expect(d2 == 2, "depth-2 frontier " + std::to_string(d2));
  o.detail = "depth 1: " + std::to_string(d1) + ", depth 2 frontier: " + std::to_string(d2);
  return o;
}

Outcome h_index() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto v = fixtures::random_citations(seed);
    o.expect(eda::h_index(v) == oracle::h_index(v), "mismatch at seed " + std::to_string(seed));
  }
  if (o.ok) o.detail = "1000 vectors";
  return o;
}

Outcome tsvd() {
  Outcome o;
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t rows = 2 + rng.below(19), cols = 2 + rng.below(19);
    oracle::Dense a(rows, std::vector<double>(cols));
    for (auto& r : a) {
      for (auto& v : r) v = rng.normal();
    }
    const std::size_t k = 1 + rng.below(std::min(rows, cols));
    const auto f = vec::tsvd(vec::DenseMatrix::from_rows(a), k, static_cast<std::uint64_t>(trial));
    const auto want = oracle::singular_values(a);
    for (std::size_t i = 0; i < k; ++i) {
      const double err = std::abs(f.S[i] - want[i]) / std::max(1.0, want[i]);
      worst = std::max(worst, err);
      o.expect(err <= 1e-6, "trial " + std::to_string(trial) + " sigma_" + std::to_string(i) + " off by " + fmt(err));
      if (i > 0) o.expect(f.S[i] <= f.S[i - 1], "trial " + std::to_string(trial) + " not non-increasing");
    }
  }
  if (o.ok) o.detail = "50 matrices, worst relative error " + fmt(worst, 2);
  return o;
}

Outcome kmeans() {
  Outcome o;
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    oracle::Dense pts(20 + rng.below(60), std::vector<double>(2 + rng.below(3)));
    for (auto& p : pts) {
      for (auto& v : p) v = rng.normal();
    }
    const auto c = vec::kmeans(vec::DenseMatrix::from_rows(pts), 2 + rng.below(5), static_cast<std::uint64_t>(trial));
    for (std::size_t i = 1; i < c.inertia_trace.size(); ++i) {
      o.expect(c.inertia_trace[i] <= c.inertia_trace[i - 1] + 1e-12, "inertia rose in trial " + std::to_string(trial));
    }
    const auto one = vec::kmeans(vec::DenseMatrix::from_rows(pts), 1, 0);
    const double want = oracle::one_cluster_inertia(pts);
    o.expect(std::abs(one.inertia - want) <= 1e-9 * std::max(1.0, want), "k=1 inertia " + fmt(one.inertia));
  }
  oracle::Dense blobs;
  for (int i = 0; i < 30; ++i) blobs.push_back({rng.normal() * 0.5, rng.normal() * 0.5});
  for (int i = 0; i < 20; ++i) blobs.push_back({8 + rng.normal() * 0.5, 8 + rng.normal() * 0.5});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = vec::kmeans(vec::DenseMatrix::from_rows(blobs), 2, seed);
    for (std::size_t i = 0; i < blobs.size(); ++i) {
      o.expect((c.labels[i] == c.labels[0]) == (i < 30), "blobs mixed for seed " + std::to_string(seed));
    }
  }
  if (o.ok) o.detail = "30 traces, k=1 exact, 20 seeds separate";
  return o;
}

Outcome topic_contract() {
  Outcome o;
  const auto fx = fixtures::two_topic_corpus();
  const auto m = topics::fit_topics(fx.corpus, nullptr, std::size_t{2}, 42);
  o.expect(m.topics.size() == 2, std::to_string(m.topics.size()) + " topics");
  if (!o.ok) return o;
  o.expect(m.topics[0].size == 153 && m.topics[1].size == 31,
           "sizes " + std::to_string(m.topics[0].size) + "/" + std::to_string(m.topics[1].size));
  // Topics are numbered by size, so topic t must be group t.
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < fx.group.size(); ++i) wrong += m.assignment[i] != static_cast<std::size_t>(fx.group[i]);
  o.expect(wrong == 0, std::to_string(wrong) + " documents misassigned");
  for (std::size_t t = 0; t < 2; ++t) {
    for (const auto& [w, s] : m.topics[t].words) {
      o.expect(fx.vocabulary[t].count(w) == 1, "topic " + std::to_string(t) + " word '" + w + "' from the other group");
    }
  }
  if (o.ok) o.detail = "sizes 153/31, partition exact";
  return o;
}

Outcome tfidf_oracle() {
  Outcome o;
  Rng rng(99);
  const std::vector<std::string> vocab{"bank", "river", "loan", "water", "money", "flow", "credit", "stream", "rate"};
  double worst = 0.0;
  std::size_t corpora = 0;
  auto check = [&](const std::vector<text::TokenStream>& streams) {
    std::vector<std::vector<std::string>> docs;
    std::size_t nonempty = 0;
    for (const auto& s : streams) {
      docs.push_back(s.tokens);
      nonempty += !s.tokens.empty();
    }
    if (nonempty < 2) return;
    ++corpora;
    const auto m = text::tfidf(streams);
    const auto want = oracle::tfidf(docs);
    o.expect(m.vocabulary == want.vocabulary, "vocabulary differs");
    if (!o.ok) return;
    const auto got = m.to_dense();
    for (std::size_t r = 0; r < got.size(); ++r) {
      for (std::size_t c = 0; c < got[r].size(); ++c) worst = std::max(worst, std::abs(got[r][c] - want.rows[r][c]));
      if (!streams[r].tokens.empty()) {
        o.expect(std::abs(m.row_norm(r) - 1.0) <= 1e-12, "row norm " + fmt(m.row_norm(r), 17));
      }
    }
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<text::TokenStream> streams(2 + rng.below(9));
    for (auto& s : streams) {
      const std::size_t len = rng.below(15);
      for (std::size_t i = 0; i < len; ++i) s.tokens.push_back(vocab[rng.below(vocab.size())]);
    }
    check(streams);
  }
  // The small fixture corpus, both fields.
  for (auto field : {text::TextField::abstract_text, text::TextField::title}) {
    check(text::field_streams(fixtures::small_corpus(), field));
  }
  o.expect(worst <= 1e-12, "max abs difference " + fmt(worst));
  if (o.ok) o.detail = std::to_string(corpora) + " corpora, max abs difference " + fmt(worst, 2);
  return o;
}

Outcome render_invariants() {
  Outcome o;
  Rng rng(5);
  double worst_area = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> values(1 + rng.below(40));
    for (auto& v : values) v = 1.0 + std::floor(rng.uniform() * 500.0);
    std::sort(values.rbegin(), values.rend());
    const render::Rect rect{0, 0, 100 + rng.uniform() * 900, 100 + rng.uniform() * 700};
    const auto cells = render::layout_treemap(values, rect);
    const double total = std::accumulate(values.begin(), values.end(), 0.0);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const double want = values[i] / total * rect.area();
      worst_area = std::max(worst_area, std::abs(cells[i].area() - want) / want);
    }
  }
  o.expect(worst_area <= 1e-3, "treemap cell area off by " + fmt(worst_area * 100) + "%");

  const Corpus c = fixtures::small_corpus();
  const auto freqs = text::word_frequencies(fixtures::two_topic_corpus().corpus, text::TextField::abstract_text, 28);
  std::size_t overlaps = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto wc = render::layout_wordcloud(freqs, render::Rect{0, 0, 640, 480}, seed);
    for (std::size_t i = 0; i < wc.words.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) overlaps += wc.words[i].box.intersects(wc.words[j].box);
    }
  }
  o.expect(overlaps == 0, std::to_string(overlaps) + " wordcloud overlaps");

  std::vector<render::SankeyFlow> flows;
  for (const auto& f : eda::sankey_flows(c, eda::ElementKind::countries, eda::ElementKind::author_keywords, 20)) {
    flows.push_back({f.left, f.right, static_cast<double>(f.weight)});
  }
  const auto s = render::layout_sankey(flows, render::Rect{0, 0, 600, 400});
  double worst_bar = 0.0;
  for (std::size_t n = 0; n < s.nodes.size(); ++n) {
    double thick = 0.0;
    for (const auto& r : s.ribbons) {
      if (r.left == n || r.right == n) thick += r.thickness;
    }
    worst_bar = std::max(worst_bar, std::abs(thick - s.nodes[n].bar.h));
  }
  o.expect(worst_bar <= 1e-9, "sankey bar height differs by " + fmt(worst_bar));

  render::ViewOptions vo;
  vo.width = 640;
  vo.height = 480;
  vo.seed = 42;
  const std::vector<std::pair<std::string, std::string>> goldens{
      {"bar_documents_per_year.svg", render::emit_svg(render::bar_view(eda::bar_series(c, eda::SeriesKind::documents_per_year), vo))},
      {"treemap_countries.svg", render::emit_svg(render::treemap_view(eda::treemap_data(c, eda::ElementKind::countries, 10), vo))},
      {"network_citations.svg", render::emit_svg(render::network_view(graph::citation_network(c, 1), "Citation network", vo))},
      {"wordcloud_abstract.svg", render::emit_svg(render::wordcloud_view(text::word_frequencies(c, text::TextField::abstract_text, 40), vo))}};
  std::vector<std::string> svgs;
  for (const auto& [name, svg] : goldens) svgs.push_back(svg);
  svgs.push_back(render::emit_svg(render::sankey_view(eda::sankey_flows(c, eda::ElementKind::countries, eda::ElementKind::author_keywords, 10), vo)));
  svgs.push_back(render::emit_svg(render::worldmap_view(graph::country_collab(c), vo)));
  svgs.push_back(render::emit_svg(render::productivity_view(eda::productivity(c, 5), vo)));
  svgs.push_back(render::emit_svg(render::history_view(graph::citation_history(c, 2), c, vo)));
  for (const auto& svg : svgs) {
    const auto r = xmlcheck::parse(svg);
    o.expect(r.ok, "malformed SVG: " + r.error);
  }
  for (const auto& [name, svg] : goldens) {
    const auto path = data_dir() / "golden" / name;
    o.expect(std::filesystem::exists(path), "missing golden " + name);
    o.expect(read_file(path) == svg, "golden mismatch " + name);
  }
  if (o.ok) {
    o.detail = "max treemap area error " + fmt(worst_area * 100, 2) + "%, 0 overlaps, " + std::to_string(svgs.size()) +
               " SVGs well-formed, " + std::to_string(goldens.size()) + " goldens equal";
  }
  return o;
}

std::string mutate(std::string s, Rng& rng) {
  const std::size_t edits = 1 + rng.below(8);
  for (std::size_t e = 0; e < edits && !s.empty(); ++e) {
    const std::size_t at = rng.below(s.size());
    switch (rng.below(5)) {
      case 0: s[at] = static_cast<char>(rng.below(256)); break;
      case 1: s.erase(at, 1 + rng.below(40)); break;
      case 2: s.insert(at, s.substr(rng.below(s.size()), 1 + rng.below(40))); break;
      case 3: s.resize(at); break;
      default: s.insert(at, 1, "{}@=,\"\n-"[rng.below(8)]); break;
    }
  }
  return s;
}

Outcome parser_fuzz() {
  Outcome o;
  const std::string scopus = read_file(data_dir() / "scopus.bib");
  const std::string wos = read_file(data_dir() / "wos.bib");
  const std::string pubmed = read_file(data_dir() / "pubmed.txt");
  Rng rng(424242);
  std::size_t parsed = 0, errors = 0;
  constexpr int kMutations = 100000;
  for (int i = 0; i < kMutations; ++i) {
    const int which = i % 3;
    const std::string input = mutate(which == 0 ? scopus : which == 1 ? wos : pubmed, rng);
    const auto db = which == 0 ? ingest::SourceDb::scopus : which == 1 ? ingest::SourceDb::wos : ingest::SourceDb::pubmed;
    try {
      const auto records = db == ingest::SourceDb::pubmed ? ingest::parse_pubmed(input) : ingest::parse_bibtex(input, db);
      std::vector<ingest::Warning> warnings;
      for (const auto& r : records) (void)ingest::normalize(r, warnings);
      ++parsed;
    } catch (const ParseError& e) {
      const std::size_t limit = db == ingest::SourceDb::pubmed ? std::size_t(std::count(input.begin(), input.end(), '\n') + 1) : input.size();
      o.expect(e.offset() <= limit, "error position " + std::to_string(e.offset()) + " outside the input");
      ++errors;
    } catch (const std::exception& e) {
      o.expect(false, std::string("unpositioned failure: ") + e.what());
    }
  }
  o.detail = std::to_string(kMutations) + " mutations: " + std::to_string(parsed) + " parsed, " +
             std::to_string(errors) + " positioned errors" + (o.ok ? "" : "; " + o.detail);
  return o;
}

Outcome askllm_stub() {
  Outcome o;
  const std::string question = "Give me insights about the given information";
  const std::string answer = "Publications peak in 2020; \"Fuzzy Letters\" leads.\nSecond line.";
  const Corpus c = fixtures::small_corpus();
  const AnalysisResult result = eda::bar_series(c, eda::SeriesKind::documents_per_year);
  {
    StubServer server;
    server.respond(200, completion_body(answer));
    llm::LlmConfig cfg;
    cfg.endpoint = server.endpoint();
    cfg.api_key = "acceptance-key";
    cfg.timeout_s = 5;
    const auto ex = llm::ask(result, question, cfg);
    o.expect(ex.answer == answer, "answer not verbatim: " + ex.answer);
    o.expect(server.connections() == 1, std::to_string(server.connections()) + " connections with a key");
    o.expect(server.last_request().find(question) != std::string::npos, "question missing from the request");
  }
  {
    StubServer server;
    server.respond(200, completion_body(answer));
    llm::LlmConfig cfg;
    cfg.endpoint = server.endpoint();
    bool config_error = false;
    try {
      llm::ask(result, question, cfg);
    } catch (const ConfigError& e) {
      config_error = std::string(e.what()).find("BIBX_LLM_API_KEY") != std::string::npos;
    } catch (const std::exception&) {
    }
    o.expect(config_error, "no ConfigError naming BIBX_LLM_API_KEY without a key");
    o.expect(server.connections() == 0, std::to_string(server.connections()) + " connections without a key");
  }
  if (o.ok) o.detail = "answer verbatim; keyless call opened 0 connections";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "report ratios", 1.0, report_ratios},
      {2, "collaboration index", 0, collaboration_index},
      {3, "documents per year", 0, docs_per_year},
      {4, "merge count", 1000.0, merge_count},
      {5, "shared-reference weights", 1000.0, shared_references},
      {6, "citation history", 0, citation_history},
      {7, "ego network", 0, ego_network},
      {8, "h-index oracle", 1000.0, h_index},
      {9, "TSVD oracle", 10000.0, tsvd},
      {10, "k-means properties", 5000.0, kmeans},
      {11, "topic contract", 5000.0, topic_contract},
      {12, "TF-IDF oracle", 0, tfidf_oracle},
      {13, "render invariants", 0, render_invariants},
      {14, "parser robustness", 60000.0, parser_fuzz},
      {15, "askllm stub round trip", 0, askllm_stub},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && c.limit_ms > 0 && ms > c.limit_ms) {
      o.ok = false;
      o.detail += " (over the " + fmt(c.limit_ms) + " ms limit)";
    }
    failed += !o.ok;
    std::printf("%s  %2d  %-26s %10.3f ms  %s\n", o.ok ? "PASS" : "FAIL", c.number, c.name.c_str(), ms,
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
