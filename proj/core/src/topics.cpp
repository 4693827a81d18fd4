#include "bibx/topics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "bibx/error.hpp"

namespace bibx::topics {

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum);
}

double cosine(std::span<const double> a, std::span<const double> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<std::vector<double>> pairwise(const vec::DenseMatrix& points) {
  std::vector<std::vector<double>> d(points.rows, std::vector<double>(points.rows, 0.0));
  for (std::size_t i = 0; i < points.rows; ++i) {
    for (std::size_t j = i + 1; j < points.rows; ++j) d[i][j] = d[j][i] = distance(points.row(i), points.row(j));
  }
  return d;
}

double silhouette_from(const std::vector<std::vector<double>>& d, const std::vector<std::size_t>& labels) {
  const std::size_t n = labels.size();
  if (n == 0) return 0.0;
  const std::size_t k = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t l : labels) ++sizes[l];
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[labels[i]] <= 1) continue;
    std::vector<double> sums(k, 0.0);
    for (std::size_t j = 0; j < n; ++j) sums[labels[j]] += d[i][j];
    const double a = sums[labels[i]] / static_cast<double>(sizes[labels[i]] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (c != labels[i] && sizes[c] > 0) b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
    }
    if (!std::isfinite(b)) continue;
    const double m = std::max(a, b);
    total += m > 0.0 ? (b - a) / m : 0.0;
  }
  return total / static_cast<double>(n);
}

}  // namespace

double mean_silhouette(const vec::DenseMatrix& points, const std::vector<std::size_t>& labels) {
  return silhouette_from(pairwise(points), labels);
}

std::vector<std::vector<std::pair<std::string, double>>> class_tfidf(const std::vector<text::TokenStream>& streams,
                                                                     const std::vector<std::size_t>& assignment,
                                                                     std::size_t k) {
  std::vector<std::map<std::string, std::size_t>> tf(k);
  std::map<std::string, std::size_t> freq;
  std::vector<std::size_t> lengths(k, 0);
  for (std::size_t i = 0; i < streams.size(); ++i) {
    for (const std::string& t : streams[i].tokens) {
      ++tf[assignment[i]][t];
      ++freq[t];
      ++lengths[assignment[i]];
    }
  }
  const double avg = static_cast<double>(std::accumulate(lengths.begin(), lengths.end(), std::size_t{0})) /
                     static_cast<double>(k);
  std::vector<std::vector<std::pair<std::string, double>>> out(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (const auto& [term, count] : tf[c]) {
      const double score = static_cast<double>(count) * std::log(1.0 + avg / static_cast<double>(freq[term]));
      out[c].emplace_back(term, score);
    }
    std::stable_sort(out[c].begin(), out[c].end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  }
  return out;
}

TopicModel fit_topics(const Corpus& corpus, const vec::DenseMatrix* vectors, std::optional<std::size_t> k,
                      std::uint64_t seed, const text::StopWords& stopwords, TopicOptions options) {
  const std::size_t n = corpus.size();
  std::size_t usable = 0;
  for (const Document& doc : corpus.documents) usable += doc.abstract_text.empty() ? 0 : 1;
  if (k && (*k == 0 || *k > usable)) {
    throw UsageError("topic count " + std::to_string(*k) + " exceeds the " + std::to_string(usable) +
                     " documents with an abstract");
  }
  if (!k && usable < 3) throw UsageError("automatic topic count needs at least 3 documents with an abstract");

  vec::DenseMatrix points;
  if (vectors != nullptr) {
    if (vectors->rows != n) {
      throw UsageError("expected " + std::to_string(n) + " rows, found " + std::to_string(vectors->rows));
    }
    points = *vectors;
  } else {
    points = vec::DenseMatrix::from_sparse(text::tfidf(corpus, text::TextField::abstract_text, stopwords));
  }

  TopicModel model;
  model.seed = seed;
  vec::Clustering clustering;
  if (k) {
    clustering = vec::kmeans(points, *k, seed);
  } else {
    const auto d = pairwise(points);
    double best = -std::numeric_limits<double>::infinity();
    const std::size_t hi = std::min(options.max_auto_k, n - 1);
    for (std::size_t cand = 2; cand <= hi; ++cand) {
      vec::Clustering c = vec::kmeans(points, cand, seed);
      const double s = silhouette_from(d, c.labels);
      model.silhouettes.emplace_back(cand, s);
      if (s > best + 1e-12) {
        best = s;
        clustering = std::move(c);
      }
    }
  }
  const std::size_t kk = clustering.centroids.rows;

  // Renumber clusters by size, largest first; ties keep the cluster whose
  // first member comes earlier.
  std::vector<std::size_t> sizes(kk, 0), first(kk, n);
  for (std::size_t i = 0; i < n; ++i) {
    ++sizes[clustering.labels[i]];
    first[clustering.labels[i]] = std::min(first[clustering.labels[i]], i);
  }
  std::vector<std::size_t> order(kk);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
    return first[a] < first[b];
  });
  std::vector<std::size_t> rank(kk);
  for (std::size_t r = 0; r < kk; ++r) rank[order[r]] = r;
  model.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) model.assignment[i] = rank[clustering.labels[i]];

  const auto streams = text::field_streams(corpus, text::TextField::abstract_text, stopwords);
  const auto scores = class_tfidf(streams, model.assignment, kk);

  for (std::size_t r = 0; r < kk; ++r) {
    const std::size_t cluster = order[r];
    Topic topic;
    topic.index = r;
    topic.size = sizes[cluster];
    for (const auto& entry : scores[r]) {
      if (topic.words.size() >= options.top_words) break;
      topic.words.push_back(entry);
    }
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (model.assignment[i] != r) continue;
      const double c = cosine(points.row(i), clustering.centroids.row(cluster));
      if (c > best) {
        best = c;
        topic.central_doc = corpus.documents[i].id;
        topic.central_citation = short_citation(corpus.documents[i]);
      }
    }
    model.topics.push_back(std::move(topic));
  }
  return model;
}

std::vector<std::string> topic_summary(const TopicModel& model) {
  std::vector<std::string> rows;
  for (const Topic& t : model.topics) {
    std::string words;
    for (const auto& [w, s] : t.words) {
      if (!words.empty()) words += ", ";
      words += w;
    }
    rows.push_back(std::to_string(t.index) + " | " + std::to_string(t.size) + " | " + words + " | " +
                   t.central_citation);
  }
  return rows;
}

nlohmann::json topics_json(const TopicModel& model) {
  nlohmann::json topics = nlohmann::json::array();
  for (const Topic& t : model.topics) {
    nlohmann::json words = nlohmann::json::array();
    for (const auto& [w, s] : t.words) words.push_back({{"word", w}, {"score", s}});
    topics.push_back({{"index", t.index},
                      {"size", t.size},
                      {"words", words},
                      {"central_doc", t.central_doc},
                      {"central_citation", t.central_citation}});
  }
  nlohmann::json out{{"topics", topics}, {"assignment", model.assignment}, {"seed", model.seed}};
  if (!model.silhouettes.empty()) {
    nlohmann::json sil = nlohmann::json::array();
    for (const auto& [k, s] : model.silhouettes) sil.push_back({{"k", k}, {"silhouette", s}});
    out["silhouettes"] = sil;
  }
  return out;
}

}  // namespace bibx::topics
