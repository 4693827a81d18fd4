#include "bibx/graphs.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

#include "bibx/error.hpp"
#include "bibx/strings.hpp"

namespace bibx::graph {

namespace {

std::string format_weight(double w) {
  if (std::floor(w) == w && std::abs(w) < 1e15) return std::to_string(static_cast<long long>(w));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", w);
  return buf;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Comparison key for names typed by a user: folded, lowercase, letters only.
std::string name_key(std::string_view s) { return str::alnum_key(str::to_lower(str::fold_diacritics(s))); }

// Resolved reference identities of each document.
std::vector<std::set<std::pair<bool, std::size_t>>> reference_sets(const Corpus& corpus) {
  std::vector<std::set<std::pair<bool, std::size_t>>> refs(corpus.size());
  for (const CitationLink& link : corpus.citation_links) {
    if (link.citing < refs.size()) refs[link.citing].insert({link.external, link.target});
  }
  return refs;
}

}  // namespace

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::document: return "document";
    case NodeKind::reference: return "reference";
    case NodeKind::author: return "author";
    case NodeKind::country: return "country";
  }
  return "document";
}

std::optional<std::size_t> Graph::find(std::string_view label) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].label == label) return i;
  }
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> Graph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (const Edge& e : edges) {
    adj[e.source].push_back(e.target);
    adj[e.target].push_back(e.source);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

std::vector<std::size_t> Graph::in_degree() const {
  std::vector<std::size_t> deg(nodes.size(), 0);
  for (const Edge& e : edges) {
    ++deg[e.target];
    if (!e.directed) ++deg[e.source];
  }
  return deg;
}

std::vector<std::size_t> Graph::components() const {
  const auto adj = adjacency();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> raw(nodes.size(), kNone);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t start = 0; start < nodes.size(); ++start) {
    if (raw[start] != kNone) continue;
    const std::size_t id = members.size();
    members.emplace_back();
    std::deque<std::size_t> queue{start};
    raw[start] = id;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      members[id].push_back(u);
      for (std::size_t v : adj[u]) {
        if (raw[v] == kNone) {
          raw[v] = id;
          queue.push_back(v);
        }
      }
    }
  }
  // Discovery order already follows the smallest member index.
  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return members[a].size() > members[b].size(); });
  std::vector<std::size_t> rank(members.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  std::vector<std::size_t> out(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) out[i] = rank[raw[i]];
  return out;
}

bool Graph::valid() const {
  return std::all_of(edges.begin(), edges.end(), [&](const Edge& e) {
    return e.source < nodes.size() && e.target < nodes.size() && e.source != e.target && e.weight > 0.0;
  });
}

Graph citation_network(const Corpus& corpus, std::size_t min_citations) {
  // Distinct citing documents per target.
  std::map<std::pair<bool, std::size_t>, std::set<std::size_t>> cited_by;
  for (const CitationLink& link : corpus.citation_links) {
    if (!link.external && link.target == link.citing) continue;
    cited_by[{link.external, link.target}].insert(link.citing);
  }
  std::set<std::pair<bool, std::size_t>> kept;
  for (const auto& [target, citing] : cited_by) {
    if (citing.size() >= min_citations) kept.insert(target);
  }

  std::set<std::size_t> docs;
  std::vector<std::pair<std::size_t, std::pair<bool, std::size_t>>> links;
  for (const auto& [target, citing] : cited_by) {
    if (!kept.contains(target)) continue;
    for (std::size_t c : citing) {
      links.push_back({c, target});
      docs.insert(c);
      if (!target.first) docs.insert(target.second);
    }
  }

  Graph g;
  std::map<std::size_t, std::size_t> doc_node;
  for (std::size_t id : docs) {
    doc_node[id] = g.nodes.size();
    Node n{std::to_string(id), NodeKind::document, nlohmann::json::object()};
    n.attributes["color_class"] = "blue";
    n.attributes["citation"] = short_citation(corpus.documents.at(id));
    g.nodes.push_back(std::move(n));
  }
  std::map<std::size_t, std::size_t> ref_node;
  for (const auto& target : kept) {
    if (!target.first) continue;
    ref_node[target.second] = g.nodes.size();
    Node n{corpus.registry(EntityKind::reference).label(target.second), NodeKind::reference,
           nlohmann::json::object()};
    n.attributes["color_class"] = "red";
    n.attributes["reference"] = corpus.registry(EntityKind::reference).entry(target.second);
    n.attributes["cited_by"] = cited_by[target].size();
    g.nodes.push_back(std::move(n));
  }
  for (auto& n : g.nodes) {
    if (n.kind != NodeKind::document) continue;
    auto it = cited_by.find({false, std::stoul(n.label)});
    n.attributes["cited_by"] = it == cited_by.end() ? 0 : it->second.size();
  }
  std::sort(links.begin(), links.end());
  for (const auto& [citing, target] : links) {
    const std::size_t dst = target.first ? ref_node.at(target.second) : doc_node.at(target.second);
    g.edges.push_back({doc_node.at(citing), dst, 1.0, true});
  }
  return g;
}

CitationChain citation_history(const Corpus& corpus, std::size_t focal) {
  if (focal >= corpus.size()) {
    throw UsageError("unknown document id " + std::to_string(focal) + " (corpus has " +
                     std::to_string(corpus.size()) + " documents)");
  }
  std::vector<std::vector<std::size_t>> out_edges(corpus.size()), in_edges(corpus.size());
  for (const CitationLink& link : corpus.citation_links) {
    if (link.external || link.citing == link.target) continue;
    const auto& citing = corpus.documents[link.citing];
    const auto& cited = corpus.documents[link.target];
    if (citing.year && cited.year && *citing.year < *cited.year) continue;
    out_edges[link.citing].push_back(link.target);
    in_edges[link.target].push_back(link.citing);
  }

  CitationChain chain;
  chain.focal = focal;
  auto walk = [&](const std::vector<std::vector<std::size_t>>& next, bool reverse, std::set<DirectedEdge>& edges) {
    std::vector<bool> seen(corpus.size(), false);
    std::deque<std::size_t> queue{focal};
    seen[focal] = true;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : next[u]) {
        edges.insert(reverse ? DirectedEdge{v, u} : DirectedEdge{u, v});
        if (!seen[v]) {
          seen[v] = true;
          queue.push_back(v);
        }
      }
    }
  };
  walk(out_edges, false, chain.backward);
  walk(in_edges, true, chain.forward);
  return chain;
}

Graph shared_reference_graph(const Corpus& corpus, std::size_t min_shared) {
  const auto refs = reference_sets(corpus);
  std::size_t with_refs = 0;
  for (const auto& r : refs) with_refs += r.empty() ? 0 : 1;
  if (with_refs < 2) throw UnavailableError("shared references need at least two documents with references");
  const std::size_t threshold = std::max<std::size_t>(min_shared, 1);

  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (refs[i].empty()) continue;
    for (std::size_t j = i + 1; j < refs.size(); ++j) {
      if (refs[j].empty()) continue;
      std::size_t shared = 0;
      auto a = refs[i].begin();
      auto b = refs[j].begin();
      while (a != refs[i].end() && b != refs[j].end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++shared;
          ++a;
          ++b;
        }
      }
      if (shared >= threshold) pairs.emplace_back(i, j, shared);
    }
  }

  std::set<std::size_t> docs;
  for (const auto& [i, j, w] : pairs) {
    docs.insert(i);
    docs.insert(j);
  }
  Graph g;
  std::map<std::size_t, std::size_t> node_of;
  for (std::size_t id : docs) {
    node_of[id] = g.nodes.size();
    Node n{std::to_string(id), NodeKind::document, nlohmann::json::object()};
    n.attributes["citation"] = short_citation(corpus.documents[id]);
    n.attributes["references"] = refs[id].size();
    g.nodes.push_back(std::move(n));
  }
  for (const auto& [i, j, w] : pairs) g.edges.push_back({node_of[i], node_of[j], static_cast<double>(w), false});
  const auto comp = g.components();
  for (std::size_t i = 0; i < g.nodes.size(); ++i) g.nodes[i].attributes["component"] = comp[i];
  return g;
}

Graph coauthorship(const Corpus& corpus) {
  const EntityRegistry& authors = corpus.registry(EntityKind::author);
  Graph g;
  std::vector<std::size_t> doc_count(authors.size(), 0);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> weights;
  for (const Document& doc : corpus.documents) {
    std::vector<std::size_t> ids;
    for (const std::string& a : doc.authors) {
      if (auto idx = authors.find(a)) ids.push_back(*idx);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      ++doc_count[ids[i]];
      for (std::size_t j = i + 1; j < ids.size(); ++j) ++weights[{ids[i], ids[j]}];
    }
  }
  for (std::size_t i = 0; i < authors.size(); ++i) {
    Node n{authors.entry(i), NodeKind::author, nlohmann::json::object()};
    n.attributes["doc_count"] = doc_count[i];
    n.attributes["id"] = authors.label(i);
    g.nodes.push_back(std::move(n));
  }
  for (const auto& [pair, w] : weights) g.edges.push_back({pair.first, pair.second, static_cast<double>(w), false});
  return g;
}

Graph ego(const Graph& graph, std::string_view seed, std::optional<std::size_t> depth) {
  std::optional<std::size_t> start = graph.find(seed);
  const std::string key = name_key(seed);
  if (!start) {
    for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
      if (name_key(graph.nodes[i].label) == key) {
        start = i;
        break;
      }
    }
  }
  if (!start) {
    std::vector<std::pair<std::size_t, std::string>> near;
    for (const Node& n : graph.nodes) {
      const std::string k = name_key(n.label);
      const std::size_t d = edit_distance(k, key);
      const bool shares_prefix = !key.empty() && k.size() >= 3 && key.size() >= 3 && k.compare(0, 3, key, 0, 3) == 0;
      if (d <= std::max<std::size_t>(2, key.size() / 3) || shares_prefix) near.emplace_back(d, n.label);
    }
    std::sort(near.begin(), near.end());
    std::string msg = "unknown author '" + std::string(seed) + "'";
    if (!near.empty()) {
      msg += "; near matches: ";
      for (std::size_t i = 0; i < near.size() && i < 5; ++i) msg += (i ? ", " : "") + near[i].second;
    }
    throw UsageError(msg);
  }

  const auto adj = graph.adjacency();
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(graph.nodes.size(), kUnseen);
  std::deque<std::size_t> queue{*start};
  dist[*start] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (depth && dist[u] >= *depth) continue;
    for (std::size_t v : adj[u]) {
      if (dist[v] == kUnseen) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  Graph out;
  std::vector<std::size_t> remap(graph.nodes.size(), kUnseen);
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    if (dist[i] == kUnseen) continue;
    remap[i] = out.nodes.size();
    Node n = graph.nodes[i];
    n.attributes["hops"] = dist[i];
    out.nodes.push_back(std::move(n));
  }
  for (const Edge& e : graph.edges) {
    if (remap[e.source] != kUnseen && remap[e.target] != kUnseen) {
      out.edges.push_back({remap[e.source], remap[e.target], e.weight, e.directed});
    }
  }
  return out;
}

Graph country_collab(const Corpus& corpus, const geo::CountryTable& table) {
  const EntityRegistry& countries = corpus.registry(EntityKind::country);
  std::vector<std::size_t> doc_count(countries.size(), 0), domestic(countries.size(), 0);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> weights;
  for (const Document& doc : corpus.documents) {
    std::vector<std::size_t> ids;
    for (const std::string& c : doc.countries()) {
      if (auto idx = countries.find(c)) ids.push_back(*idx);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() == 1 && doc.authors.size() > 1) ++domestic[ids[0]];
    for (std::size_t i = 0; i < ids.size(); ++i) {
      ++doc_count[ids[i]];
      for (std::size_t j = i + 1; j < ids.size(); ++j) ++weights[{ids[i], ids[j]}];
    }
  }
  Graph g;
  std::vector<std::size_t> node_of(countries.size(), 0);
  for (std::size_t i = 0; i < countries.size(); ++i) {
    if (doc_count[i] == 0) continue;
    node_of[i] = g.nodes.size();
    Node n{countries.entry(i), NodeKind::country, nlohmann::json::object()};
    n.attributes["doc_count"] = doc_count[i];
    n.attributes["domestic_collab"] = domestic[i];
    if (const geo::Country* c = table.find(countries.entry(i))) {
      n.attributes["iso2"] = c->iso2;
      n.attributes["lat"] = c->lat;
      n.attributes["lon"] = c->lon;
    }
    g.nodes.push_back(std::move(n));
  }
  for (const auto& [pair, w] : weights) {
    g.edges.push_back({node_of[pair.first], node_of[pair.second], static_cast<double>(w), false});
  }
  return g;
}

nlohmann::json graph_json(const Graph& graph) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const Node& n : graph.nodes) {
    nodes.push_back({{"label", n.label}, {"kind", to_string(n.kind)}, {"attributes", n.attributes}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : graph.edges) {
    edges.push_back({{"source", e.source}, {"target", e.target}, {"weight", e.weight}, {"directed", e.directed}});
  }
  return {{"nodes", nodes}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
  try {
    Graph g;
    for (const auto& n : j.at("nodes")) {
      Node node;
      node.label = n.at("label").get<std::string>();
      const std::string kind = n.at("kind").get<std::string>();
      if (kind == "document") node.kind = NodeKind::document;
      else if (kind == "reference") node.kind = NodeKind::reference;
      else if (kind == "author") node.kind = NodeKind::author;
      else if (kind == "country") node.kind = NodeKind::country;
      else throw DataError("unknown node kind '" + kind + "'");
      if (n.contains("attributes")) node.attributes = n.at("attributes");
      g.nodes.push_back(std::move(node));
    }
    for (const auto& e : j.at("edges")) {
      g.edges.push_back({e.at("source").get<std::size_t>(), e.at("target").get<std::size_t>(),
                         e.at("weight").get<double>(), e.value("directed", false)});
    }
    if (!g.valid()) throw DataError("graph has invalid edges");
    return g;
  } catch (const nlohmann::json::exception& ex) {
    throw DataError(std::string("malformed graph JSON: ") + ex.what());
  }
}

nlohmann::json chain_json(const CitationChain& chain) {
  auto edges = [](const std::set<DirectedEdge>& set) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [a, b] : set) arr.push_back({a, b});
    return arr;
  };
  return {{"focal", chain.focal}, {"backward", edges(chain.backward)}, {"forward", edges(chain.forward)}};
}

std::string edge_list(const Graph& graph) {
  std::string out;
  for (const Edge& e : graph.edges) {
    out += graph.nodes[e.source].label + '\t' + graph.nodes[e.target].label + '\t' + format_weight(e.weight) + '\n';
  }
  return out;
}

}  // namespace bibx::graph
