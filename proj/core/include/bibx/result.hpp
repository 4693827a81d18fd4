#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bibx/eda.hpp"
#include "bibx/graphs.hpp"
#include "bibx/summarize.hpp"
#include "bibx/topics.hpp"
#include "bibx/vectorlab.hpp"

namespace bibx {

// Term counts behind a wordcloud or an n-gram table.
struct TermCounts {
  std::string label;
  std::vector<std::pair<std::string, std::size_t>> counts;
};

struct EvolutionResult {
  eda::ElementKind field = eda::ElementKind::author_keywords;
  std::vector<eda::Series> series;
};

struct FlowResult {
  std::vector<eda::Flow> flows;
};

struct GraphResult {
  std::string label;  // "citation network", "co-authorship", ...
  graph::Graph graph;
};

using AnalysisResult =
    std::variant<eda::EdaReport, eda::Series, EvolutionResult, TermCounts, FlowResult, eda::Productivity, GraphResult,
                 graph::CitationChain, topics::TopicModel, summarize::Summary, vec::Projection2D>;

// Short machine name of the alternative held: "report", "series", ...
std::string_view result_kind(const AnalysisResult& result);

// {"kind": ..., "data": ...}
nlohmann::json result_json(const AnalysisResult& result);

}  // namespace bibx
