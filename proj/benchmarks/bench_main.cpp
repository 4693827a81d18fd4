#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "bibx/eda.hpp"
#include "bibx/fuse.hpp"
#include "bibx/graphs.hpp"
#include "bibx/ingest.hpp"
#include "bibx/random.hpp"
#include "bibx/render.hpp"
#include "bibx/summarize.hpp"
#include "bibx/textkit.hpp"
#include "bibx/topics.hpp"
#include "bibx/vectorlab.hpp"
#include "fixtures.hpp"

using namespace bibx;

namespace {

// A synthetic Scopus-style export of n entries.
std::string synthetic_bibtex(std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    out += "@article{Key" + std::to_string(i) + ",\n  author = {Author" + std::to_string(i % 97) +
           ", A. and Other, B.},\n  title = {{A study of item " + std::to_string(i) +
           " in stochastic systems}},\n  journal = {Journal " + std::to_string(i % 13) + "},\n  year = {" +
           std::to_string(2000 + i % 20) + "},\n  doi = {10.5555/bench." + std::to_string(i) +
           "},\n  abstract = {We model item " + std::to_string(i) +
           " with a stochastic process. Results show robust gains.},\n  affiliations = {University " +
           std::to_string(i % 31) + ", City, Germany},\n  references = {Smith, J., Ref " + std::to_string(i % 50) +
           ", (2001) J; Lee, K., Ref " + std::to_string(i % 7) + ", (1999) K},\n  note = {Cited By: " +
           std::to_string(i % 40) + "}\n}\n\n";
  }
  return out;
}

}  // namespace

static void BM_ParseBibtex(benchmark::State& state) {
  const std::string text = synthetic_bibtex(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ingest::ingest(text, ingest::SourceDb::scopus));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseBibtex)->Arg(100)->Arg(1000);

static void BM_Merge265(benchmark::State& state) {
  const auto plan = fixtures::merge_plan();
  for (auto _ : state) benchmark::DoNotOptimize(fuse::merge(plan));
}
BENCHMARK(BM_Merge265);

static void BM_Report(benchmark::State& state) {
  const Corpus c = fixtures::two_topic_corpus().corpus;
  for (auto _ : state) benchmark::DoNotOptimize(eda::build_report(c));
}
BENCHMARK(BM_Report);

static void BM_Tfidf(benchmark::State& state) {
  const Corpus c = fixtures::two_topic_corpus().corpus;
  for (auto _ : state) benchmark::DoNotOptimize(text::tfidf(c, text::TextField::abstract_text));
}
BENCHMARK(BM_Tfidf);

static void BM_Tsvd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  vec::DenseMatrix m(n, n);
  for (auto& v : m.data) v = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(vec::tsvd(m, 10, 42));
}
BENCHMARK(BM_Tsvd)->Arg(50)->Arg(200);

static void BM_KMeans(benchmark::State& state) {
  Rng rng(2);
  vec::DenseMatrix m(2000, 8);
  for (auto& v : m.data) v = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(vec::kmeans(m, static_cast<std::size_t>(state.range(0)), 42));
}
BENCHMARK(BM_KMeans)->Arg(2)->Arg(10);

static void BM_Topics(benchmark::State& state) {
  const Corpus c = fixtures::two_topic_corpus().corpus;
  for (auto _ : state) benchmark::DoNotOptimize(topics::fit_topics(c, nullptr, std::size_t{2}, 42));
}
BENCHMARK(BM_Topics);

static void BM_SharedReferences(benchmark::State& state) {
  const Corpus c = fixtures::shared_reference_corpus();
  for (auto _ : state) benchmark::DoNotOptimize(graph::shared_reference_graph(c, 1));
}
BENCHMARK(BM_SharedReferences);

static void BM_Summarize(benchmark::State& state) {
  const Corpus c = fixtures::two_topic_corpus().corpus;
  std::vector<std::size_t> ids(40);
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  for (auto _ : state) benchmark::DoNotOptimize(summarize::extractive_summary(c, ids, 5));
}
BENCHMARK(BM_Summarize);

static void BM_Wordcloud(benchmark::State& state) {
  const auto freqs = text::word_frequencies(fixtures::two_topic_corpus().corpus, text::TextField::abstract_text, 28);
  for (auto _ : state) benchmark::DoNotOptimize(render::layout_wordcloud(freqs, render::Rect{0, 0, 800, 600}, 42));
}
BENCHMARK(BM_Wordcloud);

static void BM_ForceLayout(benchmark::State& state) {
  // Random sparse graph: 150 nodes, about three edges each.
  graph::Graph g;
  Rng rng(3);
  for (int i = 0; i < 150; ++i) g.nodes.push_back({"n" + std::to_string(i), graph::NodeKind::author, {}});
  for (std::size_t i = 0; i < 450; ++i) {
    const auto a = rng.below(150), b = rng.below(150);
    if (a != b) g.edges.push_back({a, b, 1.0, false});
  }
  for (auto _ : state) benchmark::DoNotOptimize(render::layout_force(g, render::Rect{0, 0, 800, 600}, 42));
}
BENCHMARK(BM_ForceLayout);

BENCHMARK_MAIN();
