#include "results.hpp"

#include <algorithm>
#include <iostream>

#include "bibx/corpus_json.hpp"
#include "bibx/eda.hpp"
#include "bibx/error.hpp"
#include "bibx/graphs.hpp"
#include "bibx/strings.hpp"
#include "bibx/summarize.hpp"
#include "bibx/textkit.hpp"
#include "bibx/topics.hpp"

namespace bibx::cli {

namespace {

constexpr std::string_view kWordcloudLabel = "Word cloud";

std::pair<int, int> corpus_years(const Corpus& corpus) {
  std::optional<std::pair<int, int>> span;
  for (const auto& d : corpus.documents) {
    if (!d.year) continue;
    if (!span) span = std::pair{*d.year, *d.year};
    span->first = std::min(span->first, *d.year);
    span->second = std::max(span->second, *d.year);
  }
  if (!span) throw UnavailableError("no document has a year");
  return *span;
}

std::optional<vec::DenseMatrix> maybe_vectors(const ResultParams& p, std::optional<std::size_t> rows) {
  if (p.vectors.empty()) return std::nullopt;
  if (!std::filesystem::exists(p.vectors)) throw DataError("cannot read " + p.vectors);
  return vec::load_vectors(p.vectors, rows);
}

std::vector<std::size_t> parse_ids(const std::string& list) {
  std::vector<std::size_t> ids;
  for (const auto& piece : split_list(list)) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(piece, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != piece.size() || piece.empty() || piece[0] == '-') {
      throw UsageError("document ids must be non-negative integers, got '" + piece + "'");
    }
    ids.push_back(static_cast<std::size_t>(v));
  }
  if (ids.empty()) throw UsageError("--docs needs at least one document id");
  return ids;
}

std::optional<std::size_t> parse_k(const std::string& k) {
  if (k == "auto") return std::nullopt;
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(k, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != k.size() || k[0] == '-') throw UsageError("--k must be a positive integer or 'auto', got '" + k + "'");
  return static_cast<std::size_t>(v);
}

std::string or_default(const std::string& s, std::string_view fallback) { return s.empty() ? std::string(fallback) : s; }

}  // namespace

const std::vector<std::string>& result_names() {
  static const std::vector<std::string> names{
      "report",  "bar",     "ngram",   "wordcloud",  "evolution",  "treemap", "sankey",  "productivity", "project",
      "network", "history", "similarity", "cocitation", "collab", "worldmap", "topics", "summarize"};
  return names;
}

AnalysisResult compute_result(std::string_view name, const Corpus& corpus, const ResultParams& p,
                              const Settings& settings) {
  if (corpus.empty()) throw EmptyCorpusError();
  const std::uint64_t seed = settings.view.seed;
  if (name == "report") {
    const auto mode =
        p.collab_mode == "authorships" ? eda::CollaborationMode::authorships : eda::CollaborationMode::unique_authors;
    return eda::build_report(corpus, mode);
  }
  if (name == "bar") return eda::bar_series(corpus, eda::series_kind_from_string(p.kind), p.top);
  if (name == "ngram") {
    const auto field = text::text_field_from_string(or_default(p.field, "abstract"));
    if (p.n < 1) throw UsageError("--n must be at least 1");
    const auto streams = text::field_streams(corpus, field, settings.stopwords);
    TermCounts t;
    t.label = "Top " + std::to_string(p.n) + "-grams (" + std::string(text::to_string(field)) + ")";
    t.counts = text::top_counts(text::ngrams(streams, p.n), p.top);
    return t;
  }
  if (name == "wordcloud") {
    const auto field = text::text_field_from_string(or_default(p.field, "author_keywords"));
    TermCounts t;
    t.label = std::string(kWordcloudLabel) + " (" + std::string(text::to_string(field)) + ")";
    t.counts = text::word_frequencies(corpus, field, p.top, settings.stopwords);
    if (t.counts.empty()) throw UnavailableError("no words in field " + std::string(text::to_string(field)));
    return t;
  }
  if (name == "evolution") {
    EvolutionResult e;
    e.field = eda::element_kind_from_string(or_default(p.field, "author_keywords"));
    const auto years = p.years.empty() ? corpus_years(corpus) : parse_year_range(p.years);
    e.series = eda::evolution(corpus, e.field, years, p.top);
    return e;
  }
  if (name == "treemap") {
    return eda::treemap_data(corpus, eda::element_kind_from_string(or_default(p.field, "author_keywords")), p.top);
  }
  if (name == "sankey") {
    FlowResult f;
    f.flows = eda::sankey_flows(corpus, eda::element_kind_from_string(p.left), eda::element_kind_from_string(p.right),
                                p.top);
    if (f.flows.empty()) throw UnavailableError("no co-occurring " + p.left + " / " + p.right + " pairs");
    return f;
  }
  if (name == "productivity") return eda::productivity(corpus, p.top);
  if (name == "project") {
    const auto vectors = maybe_vectors(p, corpus.size());
    return vec::project2d(corpus, vectors ? &*vectors : nullptr, p.clusters, seed, settings.stopwords);
  }
  if (name == "network") return GraphResult{"Citation network", graph::citation_network(corpus, p.min_citations)};
  if (name == "history") {
    if (!p.doc) throw UsageError("history needs --doc");
    return graph::citation_history(corpus, *p.doc);
  }
  if (name == "similarity" || name == "cocitation") {
    return GraphResult{"Shared references", graph::shared_reference_graph(corpus, p.min_shared)};
  }
  if (name == "collab") {
    graph::Graph g = graph::coauthorship(corpus);
    std::string label = "Co-authorship";
    if (!p.author.empty()) {
      g = graph::ego(g, p.author, p.depth);
      label += " around " + p.author;
    }
    return GraphResult{label, std::move(g)};
  }
  if (name == "worldmap") return GraphResult{"Country collaboration", graph::country_collab(corpus)};
  if (name == "topics") {
    const auto vectors = maybe_vectors(p, std::nullopt);
    topics::TopicOptions opts;
    opts.top_words = p.top_words;
    return topics::fit_topics(corpus, vectors ? &*vectors : nullptr, parse_k(p.k), seed, settings.stopwords, opts);
  }
  if (name == "summarize") {
    const auto ids = parse_ids(p.docs);
    return summarize::extractive_summary(corpus, ids, p.sentences);
  }
  throw UsageError("unknown result '" + std::string(name) + "' (expected one of " + str::join(result_names(), ", ") +
                   ")");
}

std::optional<render::ViewSpec> result_view(const AnalysisResult& result, const Corpus& corpus,
                                            const Settings& settings) {
  const auto& o = settings.view;
  if (const auto* s = std::get_if<eda::Series>(&result)) return render::bar_view(*s, o);
  if (const auto* t = std::get_if<TermCounts>(&result)) {
    if (t->label.rfind(kWordcloudLabel, 0) == 0) {
      std::vector<std::string> dropped;
      auto view = render::wordcloud_view(t->counts, o, &dropped);
      for (const auto& w : dropped) warn("wordcloud: no room for '" + w + "'");
      return view;
    }
    eda::Series s;
    s.label = t->label;
    s.kind = eda::SeriesKind::author_keywords_per_document;
    for (const auto& [term, count] : t->counts) s.points.emplace_back(term, static_cast<double>(count));
    return render::bar_view(s, o);
  }
  if (const auto* e = std::get_if<EvolutionResult>(&result)) return render::evolution_view(e->series, o);
  if (const auto* f = std::get_if<FlowResult>(&result)) return render::sankey_view(f->flows, o);
  if (const auto* p = std::get_if<eda::Productivity>(&result)) return render::productivity_view(*p, o);
  if (const auto* g = std::get_if<GraphResult>(&result)) {
    if (g->label == "Country collaboration") return render::worldmap_view(g->graph, o);
    return render::network_view(g->graph, g->label, o);
  }
  if (const auto* c = std::get_if<graph::CitationChain>(&result)) return render::history_view(*c, corpus, o);
  if (const auto* pr = std::get_if<vec::Projection2D>(&result)) return render::projection_view(*pr, o);
  return std::nullopt;
}

AnalysisResult run_figure(std::string_view name, const std::string& corpus_path, const std::string& out,
                          const ResultParams& params, const Globals& globals) {
  const Settings settings = load_settings(globals);
  const Corpus corpus = load_corpus(corpus_path);
  AnalysisResult result = compute_result(name, corpus, params, settings);
  const auto view = result_view(result, corpus, settings);
  const FigurePaths paths = figure_paths(out);
  if (paths.data.extension() == ".csv") {
    if (const auto* s = std::get_if<eda::Series>(&result)) {
      write_output(paths.data, eda::series_csv(*s));
    } else if (const auto* t = std::get_if<TermCounts>(&result)) {
      std::string csv = "term,count\n";
      for (const auto& [term, count] : t->counts) csv += term + "," + std::to_string(count) + "\n";
      write_output(paths.data, csv);
    } else {
      throw UsageError(std::string(name) + " writes JSON data; use a .json or .svg output name");
    }
  } else {
    write_output(paths.data, with_metadata(name, globals.seed, result_json(result)));
  }
  if (view) write_output(paths.svg, render::emit_svg(*view));
  if (const auto* g = std::get_if<GraphResult>(&result)) {
    auto tsv = paths.svg;
    tsv.replace_extension(".tsv");
    write_output(tsv, graph::edge_list(g->graph));
  }
  return result;
}

}  // namespace bibx::cli
