#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bibx/corpus.hpp"

namespace bibx::text {

enum class TextField { abstract_text, title, author_keywords, keywords_plus };

std::string_view to_string(TextField field);
TextField text_field_from_string(std::string_view s);

using StopWords = std::unordered_set<std::string>;

// Embedded English list (179 words).
const StopWords& english_stopwords();
// One word per line; blank lines and '#' comments ignored.
StopWords parse_stopwords(std::string_view text);

struct TokenStream {
  std::vector<std::string> tokens;
  TextField field = TextField::abstract_text;
};

// Splits on anything that is not a letter or digit, keeping hyphens between
// word characters; lowercases; drops stopwords, pure numbers and tokens
// shorter than two characters.
TokenStream tokenize(std::string_view text, const StopWords& stopwords, TextField field = TextField::abstract_text);

// Raw text of a document field (keyword lists joined with "; ").
std::string field_text(const Document& doc, TextField field);

std::vector<TokenStream> field_streams(const Corpus& corpus, TextField field,
                                       const StopWords& stopwords = english_stopwords());

using Counts = std::map<std::string, std::size_t>;

// Hyphen-joined n-grams counted over each stream independently.
// Throws UsageError for n < 1.
Counts ngrams(std::span<const TokenStream> streams, std::size_t n);
Counts ngrams(const TokenStream& stream, std::size_t n);

// Descending by count, ties by ascending term.
std::vector<std::pair<std::string, std::size_t>> top_counts(const Counts& counts, std::size_t top_n);

// Row-per-document sparse matrix; entries sorted by column.
struct SparseMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::string> vocabulary;
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;

  std::size_t nnz() const;
  double row_norm(std::size_t row) const;
  double dot(std::size_t a, std::size_t b) const;
  double cosine(std::size_t a, std::size_t b) const;
  std::vector<std::vector<double>> to_dense() const;

  static SparseMatrix from_dense(const std::vector<std::vector<double>>& dense);

  // "rows cols nnz" then 1-based "row col value" lines.
  std::string to_triplets() const;
  static SparseMatrix from_triplets(std::string_view text);
};

// tf = raw count, idf = ln((1 + N) / (1 + df)) + 1, rows L2-normalized.
// Throws UnavailableError with fewer than two non-empty streams.
SparseMatrix tfidf(std::span<const TokenStream> streams);
SparseMatrix tfidf(const Corpus& corpus, TextField field, const StopWords& stopwords = english_stopwords());

// Keyword fields count whole phrases; text fields count unigrams.
std::vector<std::pair<std::string, std::size_t>> word_frequencies(const Corpus& corpus, TextField field,
                                                                  std::size_t top_n,
                                                                  const StopWords& stopwords = english_stopwords());

}  // namespace bibx::text
