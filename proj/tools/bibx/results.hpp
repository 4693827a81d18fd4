#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "bibx/result.hpp"
#include "cli.hpp"

namespace bibx::cli {

// Every knob an analysis can take. Each command registers the subset it uses;
// `ask` registers them all so any result can be rebuilt for a question.
// An empty field means the analysis default.
struct ResultParams {
  std::string kind = "documents_per_year";  // bar
  std::string field;                        // ngram, wordcloud, evolution, treemap
  std::size_t n = 2;                        // ngram size
  std::size_t top = 15;
  std::string years;                          // evolution
  std::string left = "countries";             // sankey
  std::string right = "author_keywords";      // sankey
  std::size_t min_citations = 2;              // network
  std::size_t min_shared = 1;                 // similarity
  std::optional<std::size_t> doc;             // history
  std::string docs;                           // summarize
  std::size_t sentences = 3;                  // summarize
  std::string k = "auto";                     // topics
  std::size_t top_words = 10;                 // topics
  std::size_t clusters = 0;                   // project
  std::string vectors;                        // project, topics
  std::string author;                         // collab
  std::optional<std::size_t> depth;           // collab
  std::string collab_mode = "unique";         // report
};

// Names accepted by `ask --result` (and the commands that share them).
const std::vector<std::string>& result_names();

AnalysisResult compute_result(std::string_view name, const Corpus& corpus, const ResultParams& params,
                              const Settings& settings);

// The figure for a result; nullopt for results without one (report, topics,
// summary).
std::optional<render::ViewSpec> result_view(const AnalysisResult& result, const Corpus& corpus,
                                            const Settings& settings);

// Runs a figure command: computes, writes data + SVG, returns the result.
AnalysisResult run_figure(std::string_view name, const std::string& corpus_path, const std::string& out,
                          const ResultParams& params, const Globals& globals);

}  // namespace bibx::cli
