#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bibx/corpus.hpp"
#include "bibx/textkit.hpp"
#include "bibx/vectorlab.hpp"

// k-means topics described by class-based TF-IDF words.
namespace bibx::topics {

struct Topic {
  std::size_t index = 0;
  std::size_t size = 0;
  std::vector<std::pair<std::string, double>> words;  // descending score
  std::size_t central_doc = 0;
  std::string central_citation;
};

struct TopicModel {
  std::vector<Topic> topics;
  std::vector<std::size_t> assignment;  // per document, topic index
  std::uint64_t seed = 0;
  // Mean silhouette per candidate k when k was chosen automatically.
  std::vector<std::pair<std::size_t, double>> silhouettes;
};

struct TopicOptions {
  std::size_t top_words = 10;
  std::size_t max_auto_k = 10;
};

// Mean silhouette with Euclidean distance; singleton clusters score 0.
double mean_silhouette(const vec::DenseMatrix& points, const std::vector<std::size_t>& labels);

// Class-based TF-IDF: tf(t,c) * ln(1 + A / f(t)) where A is the mean token
// count of the per-topic pseudo-documents and f(t) the corpus frequency of t.
// Returns one term -> score map per topic.
std::vector<std::vector<std::pair<std::string, double>>> class_tfidf(
    const std::vector<text::TokenStream>& streams, const std::vector<std::size_t>& assignment, std::size_t k);

// Clusters `vectors` (abstract TF-IDF rows when null); k = nullopt picks the
// smallest k in 2..10 with the best mean silhouette. Topics are numbered by
// size, largest first. Throws UsageError when k exceeds the documents that
// have an abstract.
TopicModel fit_topics(const Corpus& corpus, const vec::DenseMatrix* vectors, std::optional<std::size_t> k,
                      std::uint64_t seed, const text::StopWords& stopwords = text::english_stopwords(),
                      TopicOptions options = {});

// "<index> | <size> | w1, w2, ... | <central citation>" per topic.
std::vector<std::string> topic_summary(const TopicModel& model);
nlohmann::json topics_json(const TopicModel& model);

}  // namespace bibx::topics
