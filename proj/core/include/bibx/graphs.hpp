#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bibx/corpus.hpp"
#include "bibx/countries.hpp"

// Citation, shared-reference, co-authorship and country networks.
namespace bibx::graph {

enum class NodeKind { document, reference, author, country };

std::string_view to_string(NodeKind kind);

struct Node {
  std::string label;
  NodeKind kind = NodeKind::document;
  nlohmann::json attributes = nlohmann::json::object();
};

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  double weight = 1.0;
  bool directed = false;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Graph {
  std::vector<Node> nodes;
  std::vector<Edge> edges;

  std::optional<std::size_t> find(std::string_view label) const;
  // Undirected neighbour lists (edge direction ignored), ascending.
  std::vector<std::vector<std::size_t>> adjacency() const;
  std::vector<std::size_t> in_degree() const;
  // Component id per node: components ordered by size descending, then by
  // their first node index.
  std::vector<std::size_t> components() const;
  // Endpoints in range, positive weights, no self-loops.
  bool valid() const;
};

// Documents (color_class "blue") and cited targets with at least
// min_citations citing documents ("red" for r_# references). Directed edges
// run citing -> cited; nodes left without edges are dropped.
Graph citation_network(const Corpus& corpus, std::size_t min_citations);

using DirectedEdge = std::pair<std::size_t, std::size_t>;  // citing doc, cited doc

struct CitationChain {
  std::size_t focal = 0;
  std::set<DirectedEdge> backward;  // reachable from focal along citations
  std::set<DirectedEdge> forward;   // edges leading to focal
};

// In-corpus citation closure around `focal`. Self-citations and edges whose
// citing year precedes the cited year are ignored. Throws UsageError for an
// unknown id.
CitationChain citation_history(const Corpus& corpus, std::size_t focal);

// Documents linked when they share at least min_shared resolved references;
// each node carries a "component" attribute. Throws UnavailableError when
// fewer than two documents have references.
Graph shared_reference_graph(const Corpus& corpus, std::size_t min_shared);

// Every author is a node ("doc_count" attribute); edge weight is the number of
// co-authored documents.
Graph coauthorship(const Corpus& corpus);

// Nodes within `depth` hops of `seed` (nullopt = unbounded) and the edges among
// them. Throws UsageError naming near matches when the seed is unknown.
Graph ego(const Graph& graph, std::string_view seed, std::optional<std::size_t> depth);

// Country nodes with "doc_count", "domestic_collab", "iso2", "lat", "lon";
// edge weight is the number of documents with affiliations in both.
Graph country_collab(const Corpus& corpus, const geo::CountryTable& table = geo::CountryTable::builtin());

nlohmann::json graph_json(const Graph& graph);
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json chain_json(const CitationChain& chain);
// "src<TAB>dst<TAB>weight" per edge, by label.
std::string edge_list(const Graph& graph);

}  // namespace bibx::graph
