#include <doctest.h>

#include <map>
#include <string>

#include "bibx/error.hpp"
#include "bibx/fuse.hpp"
#include "bibx/graphs.hpp"
#include "bibx/random.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bibx;
using namespace bibx::graph;

namespace {

std::map<std::pair<std::string, std::string>, double> weights_by_label(const Graph& g) {
  std::map<std::pair<std::string, std::string>, double> out;
  for (const Edge& e : g.edges) {
    auto a = g.nodes[e.source].label;
    auto b = g.nodes[e.target].label;
    if (!e.directed && b < a) std::swap(a, b);
    out[{a, b}] = e.weight;
  }
  return out;
}

std::pair<std::string, std::string> key(std::size_t a, std::size_t b) {
  auto x = std::to_string(a), y = std::to_string(b);
  if (y < x) std::swap(x, y);
  return {x, y};
}

}  // namespace

TEST_CASE("shared-reference weights and components") {
  const Corpus c = fixtures::shared_reference_corpus();
  const Graph g = shared_reference_graph(c, 10);
  CHECK(g.valid());
  REQUIRE(g.nodes.size() == 6);
  const auto w = weights_by_label(g);
  CHECK(w.size() == 5);
  for (const auto& p : fixtures::shared_pairs()) {
    if (p.shared < 10) {
      CHECK(w.count(key(p.a, p.b)) == 0);
    } else {
      CHECK(w.at(key(p.a, p.b)) == static_cast<double>(p.shared));
    }
  }
  auto comp = [&](std::size_t id) { return g.nodes[*g.find(std::to_string(id))].attributes["component"].get<int>(); };
  CHECK(comp(92) == 0);
  CHECK(comp(97) == 0);
  CHECK(comp(128) == 0);
  CHECK(comp(116) == 1);
  CHECK(comp(122) == 1);
  CHECK(comp(123) == 1);

  const Graph all = shared_reference_graph(c, 1);
  CHECK(all.nodes.size() == 8);
  CHECK(all.nodes[*all.find("10")].attributes["component"] == 2);
}

TEST_CASE("shared-reference counts match the nested-loop oracle") {
  Rng rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Document> docs;
    std::vector<std::vector<std::string>> refs;
    const std::size_t n = 4 + rng.below(20);
    for (std::size_t i = 0; i < n; ++i) {
      Document d = fixtures::doc("Random doc " + std::to_string(i), 2000);
      std::vector<std::string> r;
      const std::size_t len = rng.below(8);
      for (std::size_t k = 0; k < len; ++k) {
        r.push_back("Pool, Z., pooled reference " + std::to_string(rng.below(15)) + ", (1999) Pool");
      }
      d.references = r;
      refs.push_back(r);
      docs.push_back(std::move(d));
    }
    const Corpus c = fuse::relabel(std::move(docs));
    std::size_t with_refs = 0;
    for (const auto& r : refs) with_refs += r.empty() ? 0 : 1;
    if (with_refs < 2) {
      CHECK_THROWS_AS(shared_reference_graph(c, 1), UnavailableError);
      continue;
    }
    const auto w = weights_by_label(shared_reference_graph(c, 1));
    std::size_t expected_edges = 0;
    for (const auto& p : oracle::shared_references(refs)) {
      if (p.shared == 0) continue;
      ++expected_edges;
      CHECK(w.at(key(p.a, p.b)) == static_cast<double>(p.shared));
    }
    CHECK(w.size() == expected_edges);
  }
}

TEST_CASE("citation history around the focal document") {
  const Corpus c = fixtures::citation_history_corpus();
  const CitationChain chain = citation_history(c, 97);
  CHECK(chain.backward == fixtures::expected_backward());
  CHECK(chain.forward == fixtures::expected_forward());
  CHECK_THROWS_AS(citation_history(c, 500), UsageError);
  const auto j = chain_json(chain);
  CHECK(j["focal"] == 97);
}

TEST_CASE("citation network keeps targets cited often enough") {
  const Corpus c = fixtures::small_corpus();
  const Graph g = citation_network(c, 2);
  CHECK(g.valid());
  std::size_t docs = 0, refs = 0;
  for (const auto& n : g.nodes) (n.kind == NodeKind::document ? docs : refs) += 1;
  CHECK(docs == 5);
  CHECK(refs == 2);
  CHECK(g.edges.size() == 8);
  for (const auto& e : g.edges) CHECK(e.directed);
  CHECK(citation_network(c, 1).edges.size() == 10);
  CHECK(citation_network(c, 5).nodes.empty());
}

TEST_CASE("co-authorship and ego networks") {
  const Corpus c = fixtures::ego_corpus();
  const Graph g = coauthorship(c);
  CHECK(g.nodes.size() == 10);
  const Graph near = ego(g, fixtures::kEgoSeed, 1);
  CHECK(near.nodes.size() == 5);
  const Graph two = ego(g, fixtures::kEgoSeed, 2);
  CHECK(two.nodes.size() == 7);
  CHECK(ego(g, fixtures::kEgoSeed, std::nullopt).nodes.size() == 8);
  CHECK(ego(g, "seed a", 1).nodes.size() == 5);
  try {
    ego(g, "Sead, A.", 1);
    FAIL("expected UsageError");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("Seed, A.") != std::string::npos);
  }
  const auto w = weights_by_label(coauthorship(fixtures::small_corpus()));
  CHECK(w.at({"Chen, L.", "Garcia, M."}) == 2.0);
}

TEST_CASE("country collaboration") {
  const Graph g = country_collab(fixtures::small_corpus());
  CHECK(g.nodes.size() == 5);
  const auto w = weights_by_label(g);
  CHECK(w.size() == 3);
  CHECK(w.at({"china", "spain"}) == 1.0);
  CHECK(w.at({"germany", "japan"}) == 1.0);
  const auto& germany = g.nodes[*g.find("germany")];
  CHECK(germany.attributes["doc_count"] == 2);
  CHECK(germany.attributes["domestic_collab"] == 1);
  CHECK(germany.attributes["iso2"] == "DE");
  CHECK(g.nodes[*g.find("nigeria")].attributes["domestic_collab"] == 0);
}

TEST_CASE("graph JSON round trip and edge list") {
  const Graph g = coauthorship(fixtures::small_corpus());
  const Graph back = graph_from_json(graph_json(g));
  CHECK(back.edges == g.edges);
  REQUIRE(back.nodes.size() == g.nodes.size());
  CHECK(back.nodes[0].label == g.nodes[0].label);
  CHECK(edge_list(g).find("Garcia, M.\tChen, L.\t2") != std::string::npos);
}
