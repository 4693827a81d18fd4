#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bibx/corpus.hpp"

// Extractive summaries ranked by sentence centrality.
namespace bibx::summarize {

// Splits after '.', '!' or '?' when whitespace and an uppercase letter follow,
// unless the period closes a guarded abbreviation ("et al.", "Fig.", ...).
std::vector<std::string> split_sentences(std::string_view text);

inline constexpr double kDamping = 0.85;
inline constexpr std::size_t kIterations = 50;

// Stationary weights of a damped random walk on the cosine-similarity graph
// of the sentences' TF-IDF vectors; uniform start, sums to 1.
std::vector<double> centrality(std::span<const std::string> sentences);

struct Summary {
  std::vector<std::string> sentences;  // in source order
  std::vector<std::size_t> sentence_docs;
  std::vector<double> scores;
  std::vector<std::size_t> doc_ids;
};

// Top n_sentences of the documents' abstracts (ties to the earlier sentence).
// Throws UsageError for n_sentences == 0 or an unknown id, UnavailableError
// when none of the documents has an abstract.
Summary extractive_summary(const Corpus& corpus, std::span<const std::size_t> doc_ids, std::size_t n_sentences);

nlohmann::json summary_json(const Summary& summary);

}  // namespace bibx::summarize
