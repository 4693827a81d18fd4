#include "fixtures.hpp"

#include <cstdio>
#include <random>

#include "bibx/random.hpp"

namespace fixtures {

using bibx::Document;

Document doc(std::string title, std::optional<int> year) {
  Document d;
  d.title = std::move(title);
  d.year = year;
  return d;
}

namespace {

std::string padded(std::string_view prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04zu", i);
  return std::string(prefix) + buf;
}

// Titles long enough to dedup on but never mistaken for another record.
std::string merge_title(std::size_t i) { return "Merge fixture record number " + padded("", i) + " on stochastic models"; }

}  // namespace

bibx::fuse::MergePlan merge_plan() {
  using bibx::ingest::SourceDb;
  bibx::fuse::MergePlan plan;

  bibx::fuse::Dataset scopus{{}, SourceDb::scopus};
  for (std::size_t i = 0; i < 234; ++i) {
    Document d = doc(merge_title(i), 2000 + static_cast<int>(i % 20));
    d.doi = "10.4242/merge." + padded("", i);
    d.authors = {"Author, A."};
    d.origin = bibx::Origin::scopus;
    scopus.documents.push_back(std::move(d));
  }

  // 176 overlaps with scopus 0..175; the last 6 of them lack a DOI on the WoS
  // side so they only match by title. 30 new records follow.
  bibx::fuse::Dataset wos{{}, SourceDb::wos};
  for (std::size_t i = 0; i < 176; ++i) {
    Document d = doc(merge_title(i), 2000 + static_cast<int>(i % 20));
    if (i < 170) d.doi = "10.4242/MERGE." + padded("", i);
    d.times_cited = 3;
    d.origin = bibx::Origin::wos;
    wos.documents.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < 30; ++i) {
    Document d = doc(merge_title(1000 + i), 2010);
    d.doi = "10.4242/wos." + padded("", i);
    d.origin = bibx::Origin::wos;
    wos.documents.push_back(std::move(d));
  }

  // 9 repeats (5 of scopus-only records, 4 of wos-only records) and 1 new.
  bibx::fuse::Dataset pubmed{{}, SourceDb::pubmed};
  for (std::size_t i = 0; i < 5; ++i) {
    Document d = doc(merge_title(200 + i), 2000 + static_cast<int>((200 + i) % 20));
    d.doi = "10.4242/merge." + padded("", 200 + i);
    d.origin = bibx::Origin::pubmed;
    pubmed.documents.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < 4; ++i) {
    Document d = doc(merge_title(1000 + i), 2010);
    d.doi = "10.4242/wos." + padded("", i);
    d.origin = bibx::Origin::pubmed;
    pubmed.documents.push_back(std::move(d));
  }
  {
    Document d = doc(merge_title(5000), 2021);
    d.doi = "10.4242/pubmed.0001";
    d.origin = bibx::Origin::pubmed;
    pubmed.documents.push_back(std::move(d));
  }

  plan.datasets = {std::move(scopus), std::move(wos), std::move(pubmed)};
  return plan;
}

std::vector<SharedPair> shared_pairs() {
  return {{92, 97, 14}, {92, 128, 10}, {97, 128, 20}, {122, 123, 26}, {116, 122, 13}, {10, 11, 9}};
}

bibx::Corpus shared_reference_corpus() {
  std::vector<Document> docs;
  for (std::size_t i = 0; i < 140; ++i) docs.push_back(doc("Doc " + std::to_string(i), 2000));
  for (const auto& p : shared_pairs()) {
    for (std::size_t r = 0; r < p.shared; ++r) {
      const std::string ref = "Shared, Q., item " + std::to_string(p.a) + "-" + std::to_string(p.b) + "-" +
                              std::to_string(r) + ", (1990) Archive";
      for (std::size_t id : {p.a, p.b}) {
        if (!docs[id].references) docs[id].references.emplace();
        docs[id].references->push_back(ref);
      }
    }
  }
  // Private references on a spread of documents, including the paired ones.
  for (std::size_t i = 0; i < 140; i += 3) {
    if (!docs[i].references) docs[i].references.emplace();
    docs[i].references->push_back("Own, P., private item " + std::to_string(i) + ", (1991) Archive");
  }
  return bibx::fuse::relabel(std::move(docs));
}

bibx::Corpus citation_history_corpus() {
  std::vector<Document> docs;
  for (std::size_t i = 0; i < 129; ++i) docs.push_back(doc("Filler " + std::to_string(i), 1990));
  const std::vector<std::pair<std::size_t, int>> years{{128, 2010}, {118, 2011}, {96, 2012}, {97, 2014}, {66, 2016},
                                                       {38, 2018},  {23, 2018},  {26, 2020}, {40, 2005}};
  for (const auto& [id, year] : years) {
    docs[id].year = year;
    docs[id].doi = "10.9999/chain." + padded("", id);
  }
  auto cite = [&](std::size_t citing, std::size_t cited) {
    if (!docs[citing].references) docs[citing].references.emplace();
    docs[citing].references->push_back("Someone, X., cited work, (2000) J, DOI " + docs[cited].doi);
  };
  cite(97, 118);
  cite(97, 96);
  cite(97, 128);
  cite(96, 128);
  cite(66, 97);
  cite(38, 66);
  cite(23, 66);
  cite(26, 38);
  cite(97, 97);  // self-citation
  cite(40, 97);  // 2005 citing 2014: ignored
  return bibx::fuse::relabel(std::move(docs));
}

EdgeSet expected_backward() { return {{97, 118}, {97, 96}, {97, 128}, {96, 128}}; }
EdgeSet expected_forward() { return {{66, 97}, {38, 66}, {23, 66}, {26, 38}}; }

bibx::Corpus ego_corpus() {
  std::vector<Document> docs;
  auto paper = [&](std::vector<std::string> authors) {
    Document d = doc("Ego paper " + std::to_string(docs.size()), 2015);
    d.authors = std::move(authors);
    docs.push_back(std::move(d));
  };
  paper({"Seed, A.", "One, B."});
  paper({"Seed, A.", "Two, C.", "Three, D."});
  paper({"Four, E.", "Seed, A."});
  paper({"Seed, A."});
  paper({"One, B.", "Five, F."});
  paper({"Three, D.", "Six, G."});
  paper({"Six, G.", "Seven, H."});
  paper({"Other, X.", "Another, Y."});
  return bibx::fuse::relabel(std::move(docs));
}

TopicFixture two_topic_corpus(std::uint64_t seed) {
  TopicFixture f;
  const std::vector<std::string> a{"protein", "enzyme",  "cell",     "membrane", "receptor", "ligand",
                                   "binding", "kinase",  "pathway",  "mutation", "genome",   "sequence",
                                   "folding", "peptide", "antibody", "vaccine"};
  const std::vector<std::string> b{"galaxy", "stellar", "orbit",    "comet",    "nebula",   "quasar",
                                   "planet", "cosmic",  "redshift", "asteroid", "luminous", "telescope"};
  f.vocabulary = {{a.begin(), a.end()}, {b.begin(), b.end()}};
  bibx::Rng rng(seed);
  std::vector<Document> docs;
  for (std::size_t i = 0; i < 184; ++i) {
    // Group 1 documents are spread through the corpus rather than at the end.
    const int g = (i % 6 == 3 && i / 6 < 31) ? 1 : 0;
    const auto& vocab = g == 0 ? a : b;
    std::string text;
    const std::size_t words = 14 + rng.below(10);
    for (std::size_t w = 0; w < words; ++w) {
      text += vocab[rng.below(vocab.size())];
      text += (w + 1 == words) ? "." : " ";
    }
    Document d = doc("Topic fixture " + std::to_string(i), 2010 + static_cast<int>(i % 10));
    d.abstract_text = text;
    d.authors = {"Writer, " + std::string(1, static_cast<char>('A' + i % 26)) + "."};
    docs.push_back(std::move(d));
    f.group.push_back(g);
  }
  f.corpus = bibx::fuse::relabel(std::move(docs));
  return f;
}

bibx::Corpus small_corpus() {
  std::vector<Document> docs;
  auto add = [&](std::string title, int year, std::vector<std::string> authors, std::string source,
                 std::vector<std::string> keywords, std::vector<std::string> countries, std::int64_t cited,
                 std::string abstract, std::vector<std::string> refs) {
    Document d = doc(std::move(title), year);
    d.authors = std::move(authors);
    d.source = std::move(source);
    d.author_keywords = std::move(keywords);
    for (auto& c : countries) d.affiliations.push_back({"Institute of " + c, c});
    d.times_cited = cited;
    d.abstract_text = std::move(abstract);
    d.references = std::move(refs);
    d.doc_type = "Article";
    d.language = "English";
    d.doi = "10.1111/small." + padded("", docs.size());
    docs.push_back(std::move(d));
  };
  add("Decision making under uncertainty in supply chains", 2015, {"Garcia, M.", "Chen, L."}, "Operations Journal",
      {"decision making", "supply chain"}, {"spain", "china"}, 40,
      "We study decision making under uncertainty. A stochastic model captures demand shocks. Robust policies "
      "reduce cost in supply chains.",
      {"Smith, J., Robust optimization, (2010) OJ", "Lee, K., Stochastic programming survey, (2012) MR"});
  add("Robust inventory control for retail networks", 2017, {"Chen, L.", "Garcia, M.", "Okafor, N."},
      "Operations Journal", {"decision making", "inventory"}, {"china", "nigeria"}, 18,
      "Inventory control needs robust decisions. We extend the supply chain model. Experiments confirm the gains.",
      {"Smith, J., Robust optimization, (2010) OJ", "DOI 10.1111/small.0000"});
  add("Multi-criteria analysis for hospital siting", 2018, {"Okafor, N."}, "Health Analytics",
      {"multi-criteria decision analysis", "decision making"}, {"nigeria"}, 7,
      "Hospital siting involves many criteria. We apply multi-criteria decision analysis. Sites are ranked "
      "consistently.",
      {"Lee, K., Stochastic programming survey, (2012) MR", "DOI 10.1111/small.0000"});
  add("Fuzzy preferences in group decisions", 2020, {"Schmidt, A.", "Muller, B."}, "Fuzzy Letters",
      {"group decision making", "consensus"}, {"germany"}, 3,
      "Groups rarely agree on crisp preferences. Fuzzy relations are aggregated. A consensus measure guides "
      "discussion.",
      {"Lee, K., Stochastic programming survey, (2012) MR", "DOI 10.1111/small.0002"});
  add("Consensus in large groups", 2021, {"Nakamura, H.", "Schmidt, A."}, "Fuzzy Letters",
      {"group decision making", "consensus"}, {"japan", "germany"}, 1,
      "Large groups need structured consensus. Experts are clustered by opinion. Simulations show faster "
      "agreement.",
      {"DOI 10.1111/small.0003", "Lee, K., Stochastic programming survey, (2012) MR"});
  return bibx::fuse::relabel(std::move(docs));
}

std::vector<std::int64_t> random_citations(std::uint64_t seed, std::size_t max_len, std::int64_t max_cites) {
  bibx::Rng rng(seed);
  std::vector<std::int64_t> out(rng.below(max_len + 1));
  for (auto& c : out) c = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_cites) + 1));
  return out;
}

}  // namespace fixtures
