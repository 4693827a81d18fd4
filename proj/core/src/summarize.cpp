#include "bibx/summarize.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "bibx/error.hpp"
#include "bibx/strings.hpp"
#include "bibx/textkit.hpp"

namespace bibx::summarize {

namespace {

// Lowercase, compared against the word that ends at the period.
constexpr std::array<std::string_view, 24> kAbbreviations{
    "al.",  "fig.", "figs.", "vol.", "no.",  "e.g.", "i.e.", "eq.",  "eqs.", "ref.", "refs.", "sec.",
    "tab.", "dr.",  "mr.",   "mrs.", "ms.",  "prof.", "vs.", "cf.",  "approx.", "pp.", "inc.", "ch."};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool guarded(std::string_view text, std::size_t period) {
  std::size_t start = period;
  while (start > 0 && !is_space(text[start - 1])) --start;
  std::string_view word = text.substr(start, period - start + 1);
  while (!word.empty() && (word.front() == '(' || word.front() == '[' || word.front() == '"')) word.remove_prefix(1);
  const std::string lower = str::to_lower(word);
  if (std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) != kAbbreviations.end()) return true;
  // A lone capital initial such as the "T." in "Chen T. Lin".
  return word.size() == 2 && word[0] >= 'A' && word[0] <= 'Z';
}

bool starts_upper(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return false;
  const unsigned char c = static_cast<unsigned char>(text[pos]);
  if (c >= 'A' && c <= 'Z') return true;
  if (c < 0x80) return false;
  // Accented capitals fold to an ASCII capital.
  const std::size_t len = (c >= 0xF0) ? 4 : (c >= 0xE0) ? 3 : 2;
  const std::string folded = str::fold_diacritics(text.substr(pos, len));
  return !folded.empty() && folded[0] >= 'A' && folded[0] <= 'Z';
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t j = i + 1;
    // Closing quotes or brackets stay with the sentence.
    while (j < text.size() && (text[j] == '"' || text[j] == ')' || text[j] == '\'')) ++j;
    if (j >= text.size() || !is_space(text[j])) continue;
    std::size_t k = j;
    while (k < text.size() && is_space(text[k])) ++k;
    if (!starts_upper(text, k)) continue;
    if (c == '.' && guarded(text, i)) continue;
    std::string sentence = str::collapse_ws(text.substr(start, j - start));
    if (!sentence.empty()) out.push_back(std::move(sentence));
    start = k;
    i = k - 1;
  }
  std::string tail = str::collapse_ws(text.substr(std::min(start, text.size())));
  if (!tail.empty()) out.push_back(std::move(tail));
  return out;
}

std::vector<double> centrality(std::span<const std::string> sentences) {
  const std::size_t n = sentences.size();
  if (n == 0) return {};
  std::vector<text::TokenStream> streams;
  std::size_t non_empty = 0;
  for (const std::string& s : sentences) {
    streams.push_back(text::tokenize(s, text::english_stopwords()));
    non_empty += streams.back().tokens.empty() ? 0 : 1;
  }
  std::vector<std::vector<double>> sim(n, std::vector<double>(n, 0.0));
  if (non_empty >= 2) {
    const text::SparseMatrix m = text::tfidf(streams);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) sim[i][j] = sim[j][i] = m.cosine(i, j);
    }
  }
  std::vector<double> row_sum(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) row_sum[i] = std::accumulate(sim[i].begin(), sim[i].end(), 0.0);

  const double nn = static_cast<double>(n);
  std::vector<double> p(n, 1.0 / nn), next(n);
  for (std::size_t it = 0; it < kIterations; ++it) {
    // Mass on sentences without similar neighbours spreads uniformly.
    double dangling = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (row_sum[j] == 0.0) dangling += p[j];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double inflow = dangling / nn;
      for (std::size_t j = 0; j < n; ++j) {
        if (row_sum[j] > 0.0 && sim[j][i] > 0.0) inflow += p[j] * sim[j][i] / row_sum[j];
      }
      next[i] = (1.0 - kDamping) / nn + kDamping * inflow;
    }
    std::swap(p, next);
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= total;
  return p;
}

Summary extractive_summary(const Corpus& corpus, std::span<const std::size_t> doc_ids, std::size_t n_sentences) {
  if (n_sentences == 0) throw UsageError("sentence count must be at least 1");
  std::vector<std::string> sentences;
  std::vector<std::size_t> owners;
  Summary out;
  for (std::size_t id : doc_ids) {
    if (id >= corpus.size()) throw UsageError("unknown document id " + std::to_string(id));
    out.doc_ids.push_back(id);
    for (std::string& s : split_sentences(corpus.documents[id].abstract_text)) {
      sentences.push_back(std::move(s));
      owners.push_back(id);
    }
  }
  if (sentences.empty()) throw UnavailableError("none of the selected documents has an abstract");

  const std::vector<double> scores = centrality(sentences);
  std::vector<std::size_t> order(sentences.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  order.resize(std::min(n_sentences, order.size()));
  std::sort(order.begin(), order.end());
  for (std::size_t i : order) {
    out.sentences.push_back(sentences[i]);
    out.sentence_docs.push_back(owners[i]);
    out.scores.push_back(scores[i]);
  }
  return out;
}

nlohmann::json summary_json(const Summary& summary) {
  nlohmann::json sentences = nlohmann::json::array();
  for (std::size_t i = 0; i < summary.sentences.size(); ++i) {
    sentences.push_back(
        {{"text", summary.sentences[i]}, {"doc", summary.sentence_docs[i]}, {"score", summary.scores[i]}});
  }
  return {{"docs", summary.doc_ids}, {"sentences", sentences}};
}

}  // namespace bibx::summarize
