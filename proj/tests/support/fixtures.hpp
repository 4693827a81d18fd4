#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bibx/corpus.hpp"
#include "bibx/fuse.hpp"

// Synthetic corpora shared by the unit tests, the acceptance runner and the
// benchmarks. Document ids in these corpora are positions, so fixtures that
// need particular ids pad with filler documents.
namespace fixtures {

// Bare document with a title and nothing else.
bibx::Document doc(std::string title, std::optional<int> year = std::nullopt);

// Three datasets of 234, 206 and 10 documents: 176 of the second repeat the
// first (by DOI, a few by title only) and 9 of the third repeat one of the
// first two.
bibx::fuse::MergePlan merge_plan();
inline constexpr std::size_t kMergedSize = 265;

// 140 documents; the pairs listed in shared_pairs() share exactly the given
// number of references, every other pair shares none, plus a pair (10, 11)
// sharing 9.
bibx::Corpus shared_reference_corpus();
struct SharedPair {
  std::size_t a, b, shared;
};
std::vector<SharedPair> shared_pairs();

// 129 documents; nine of them are wired as the citation chain around 97
// (plus a self-citation and a year-inverted citation that must be ignored).
bibx::Corpus citation_history_corpus();
using EdgeSet = std::set<std::pair<std::size_t, std::size_t>>;
EdgeSet expected_backward();
EdgeSet expected_forward();

// Co-authorship corpus around "Seed, A.": four direct collaborators, two
// more at distance two, one at distance three and an unrelated pair.
bibx::Corpus ego_corpus();
inline constexpr const char* kEgoSeed = "Seed, A.";

// Two groups of abstracts (153 and 31) drawn from disjoint vocabularies.
struct TopicFixture {
  bibx::Corpus corpus;
  std::vector<int> group;  // per document, 0 or 1
  std::vector<std::set<std::string>> vocabulary;
};
TopicFixture two_topic_corpus(std::uint64_t seed = 7);

// Small but complete corpus used by render goldens and CLI tests.
bibx::Corpus small_corpus();

// Random citation vectors for the h-index property.
std::vector<std::int64_t> random_citations(std::uint64_t seed, std::size_t max_len = 60, std::int64_t max_cites = 80);

}  // namespace fixtures
