#include "bibx/result.hpp"

namespace bibx {

namespace {

struct KindVisitor {
  std::string_view operator()(const eda::EdaReport&) const { return "report"; }
  std::string_view operator()(const eda::Series&) const { return "series"; }
  std::string_view operator()(const EvolutionResult&) const { return "evolution"; }
  std::string_view operator()(const TermCounts&) const { return "terms"; }
  std::string_view operator()(const FlowResult&) const { return "flows"; }
  std::string_view operator()(const eda::Productivity&) const { return "productivity"; }
  std::string_view operator()(const GraphResult&) const { return "graph"; }
  std::string_view operator()(const graph::CitationChain&) const { return "history"; }
  std::string_view operator()(const topics::TopicModel&) const { return "topics"; }
  std::string_view operator()(const summarize::Summary&) const { return "summary"; }
  std::string_view operator()(const vec::Projection2D&) const { return "projection"; }
};

struct JsonVisitor {
  nlohmann::json operator()(const eda::EdaReport& r) const { return eda::report_json(r); }
  nlohmann::json operator()(const eda::Series& s) const { return eda::series_json(s); }
  nlohmann::json operator()(const EvolutionResult& e) const {
    nlohmann::json series = nlohmann::json::array();
    for (const auto& s : e.series) series.push_back(eda::series_json(s));
    return {{"field", eda::to_string(e.field)}, {"series", series}};
  }
  nlohmann::json operator()(const TermCounts& t) const {
    nlohmann::json counts = nlohmann::json::array();
    for (const auto& [term, count] : t.counts) counts.push_back({{"term", term}, {"count", count}});
    return {{"label", t.label}, {"counts", counts}};
  }
  nlohmann::json operator()(const FlowResult& f) const {
    nlohmann::json flows = nlohmann::json::array();
    for (const auto& flow : f.flows) {
      flows.push_back({{"left_kind", eda::to_string(flow.left_kind)},
                       {"left", flow.left},
                       {"right_kind", eda::to_string(flow.right_kind)},
                       {"right", flow.right},
                       {"weight", flow.weight}});
    }
    return {{"flows", flows}};
  }
  nlohmann::json operator()(const eda::Productivity& p) const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : p.rows) {
      nlohmann::json cells = nlohmann::json::object();
      for (const auto& [year, ids] : row.cells) cells[std::to_string(year)] = ids;
      rows.push_back({{"author", row.author}, {"total", row.total}, {"years", cells}, {"undated", row.undated}});
    }
    nlohmann::json j{{"rows", rows}};
    j["years"] = p.years ? nlohmann::json{p.years->first, p.years->second} : nlohmann::json(nullptr);
    return j;
  }
  nlohmann::json operator()(const GraphResult& g) const {
    nlohmann::json j = graph::graph_json(g.graph);
    j["label"] = g.label;
    return j;
  }
  nlohmann::json operator()(const graph::CitationChain& c) const { return graph::chain_json(c); }
  nlohmann::json operator()(const topics::TopicModel& m) const { return topics::topics_json(m); }
  nlohmann::json operator()(const summarize::Summary& s) const { return summarize::summary_json(s); }
  nlohmann::json operator()(const vec::Projection2D& p) const {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& pt : p.points) {
      points.push_back({{"doc", pt.doc_id},
                        {"x", pt.x},
                        {"y", pt.y},
                        {"cluster", pt.cluster ? nlohmann::json(*pt.cluster) : nlohmann::json(nullptr)},
                        {"citation", pt.citation}});
    }
    return {{"method", p.method == vec::ProjectionMethod::tsvd ? "tsvd" : "external"}, {"points", points}};
  }
};

}  // namespace

std::string_view result_kind(const AnalysisResult& result) { return std::visit(KindVisitor{}, result); }

nlohmann::json result_json(const AnalysisResult& result) {
  return {{"kind", result_kind(result)}, {"data", std::visit(JsonVisitor{}, result)}};
}

}  // namespace bibx
