#include "bibx/textkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bibx/error.hpp"
#include "bibx/strings.hpp"

namespace bibx::text {

std::string_view to_string(TextField field) {
  switch (field) {
    case TextField::abstract_text: return "abstract";
    case TextField::title: return "title";
    case TextField::author_keywords: return "author_keywords";
    case TextField::keywords_plus: return "keywords_plus";
  }
  return "abstract";
}

TextField text_field_from_string(std::string_view s) {
  std::string key = str::to_lower(s);
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "abstract" || key == "abs") return TextField::abstract_text;
  if (key == "title") return TextField::title;
  if (key == "author_keywords" || key == "kwa") return TextField::author_keywords;
  if (key == "keywords_plus" || key == "kwp") return TextField::keywords_plus;
  throw UsageError("unknown text field '" + std::string(s) +
                   "' (expected abstract, title, author_keywords or keywords_plus)");
}

const StopWords& english_stopwords() {
  static const StopWords words{
      "i",        "me",       "my",         "myself",   "we",        "our",     "ours",      "ourselves",
      "you",      "you're",   "you've",     "you'll",   "you'd",     "your",    "yours",     "yourself",
      "yourselves", "he",     "him",        "his",      "himself",   "she",     "she's",     "her",
      "hers",     "herself",  "it",         "it's",     "its",       "itself",  "they",      "them",
      "their",    "theirs",   "themselves", "what",     "which",     "who",     "whom",      "this",
      "that",     "that'll",  "these",      "those",    "am",        "is",      "are",       "was",
      "were",     "be",       "been",       "being",    "have",      "has",     "had",       "having",
      "do",       "does",     "did",        "doing",    "a",         "an",      "the",       "and",
      "but",      "if",       "or",         "because",  "as",        "until",   "while",     "of",
      "at",       "by",       "for",        "with",     "about",     "against", "between",   "into",
      "through",  "during",   "before",     "after",    "above",     "below",   "to",        "from",
      "up",       "down",     "in",         "out",      "on",        "off",     "over",      "under",
      "again",    "further",  "then",       "once",     "here",      "there",   "when",      "where",
      "why",      "how",      "all",        "any",      "both",      "each",    "few",       "more",
      "most",     "other",    "some",       "such",     "no",        "nor",     "not",       "only",
      "own",      "same",     "so",         "than",     "too",       "very",    "s",         "t",
      "can",      "will",     "just",       "don",      "don't",     "should",  "should've", "now",
      "d",        "ll",       "m",          "o",        "re",        "ve",      "y",         "ain",
      "aren",     "aren't",   "couldn",     "couldn't", "didn",      "didn't",  "doesn",     "doesn't",
      "hadn",     "hadn't",   "hasn",       "hasn't",   "haven",     "haven't", "isn",       "isn't",
      "ma",       "mightn",   "mightn't",   "mustn",    "mustn't",   "needn",   "needn't",   "shan",
      "shan't",   "shouldn",  "shouldn't",  "wasn",     "wasn't",    "weren",   "weren't",   "won",
      "won't",    "wouldn",   "wouldn't"};
  return words;
}

StopWords parse_stopwords(std::string_view text) {
  StopWords out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string w = str::to_lower(str::trim(text.substr(start, end - start)));
    if (!w.empty() && w[0] != '#') out.insert(w);
    start = end + 1;
  }
  return out;
}

namespace {

bool is_word_cp(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  if (cp <= 0xBF) return cp == 0xAA || cp == 0xB5 || cp == 0xBA;  // Latin-1 punctuation and symbols
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // punctuation, symbols, arrows, math
  if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
  if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
  if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
  if (cp == 0xFFFD || cp == 0xFEFF) return false;
  if (cp >= 0x300 && cp <= 0x36F) return true;  // combining marks stay attached
  return true;
}

char32_t lower_cp(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  if (cp >= 0x100 && cp <= 0x137 && cp % 2 == 0) return cp + 1;
  if (cp >= 0x139 && cp <= 0x148 && cp % 2 == 1) return cp + 1;
  if (cp >= 0x14A && cp <= 0x177 && cp % 2 == 0) return cp + 1;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E && cp % 2 == 1) return cp + 1;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 32;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 32;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
  return cp;
}

bool pure_number(std::u32string_view tok) {
  bool digit = false;
  for (char32_t c : tok) {
    if (c >= '0' && c <= '9') digit = true;
    else if (c != '-') return false;
  }
  return digit;
}

}  // namespace

TokenStream tokenize(std::string_view text, const StopWords& stopwords, TextField field) {
  TokenStream out;
  out.field = field;
  const std::u32string cps = str::decode_utf8(text);
  std::u32string cur;
  auto flush = [&] {
    while (!cur.empty() && cur.back() == '-') cur.pop_back();
    if (cur.size() >= 2 && !pure_number(cur)) {
      std::string tok = str::encode_utf8(cur);
      if (!stopwords.count(tok)) out.tokens.push_back(std::move(tok));
    }
    cur.clear();
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    if (is_word_cp(cp)) {
      cur.push_back(lower_cp(cp));
    } else if ((cp == '-' || cp == 0x2010 || cp == 0x2011) && !cur.empty() && i + 1 < cps.size() &&
               is_word_cp(cps[i + 1])) {
      cur.push_back('-');
    } else {
      flush();
    }
  }
  flush();
  return out;
}

std::string field_text(const Document& doc, TextField field) {
  switch (field) {
    case TextField::abstract_text: return doc.abstract_text;
    case TextField::title: return doc.title;
    case TextField::author_keywords: return str::join(doc.author_keywords, "; ");
    case TextField::keywords_plus: return str::join(doc.keywords_plus, "; ");
  }
  return {};
}

std::vector<TokenStream> field_streams(const Corpus& corpus, TextField field, const StopWords& stopwords) {
  std::vector<TokenStream> out;
  out.reserve(corpus.size());
  for (const auto& d : corpus.documents) out.push_back(tokenize(field_text(d, field), stopwords, field));
  return out;
}

Counts ngrams(std::span<const TokenStream> streams, std::size_t n) {
  if (n < 1) throw UsageError("ngrams: n must be at least 1");
  Counts counts;
  for (const auto& s : streams) {
    if (s.tokens.size() < n) continue;
    for (std::size_t i = 0; i + n <= s.tokens.size(); ++i) {
      std::string gram = s.tokens[i];
      for (std::size_t k = 1; k < n; ++k) gram += "-" + s.tokens[i + k];
      ++counts[gram];
    }
  }
  return counts;
}

Counts ngrams(const TokenStream& stream, std::size_t n) { return ngrams(std::span<const TokenStream>(&stream, 1), n); }

std::vector<std::pair<std::string, std::size_t>> top_counts(const Counts& counts, std::size_t top_n) {
  std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  return total;
}

double SparseMatrix::row_norm(std::size_t row) const {
  double s = 0;
  for (const auto& [c, v] : rows.at(row)) s += v * v;
  return std::sqrt(s);
}

double SparseMatrix::dot(std::size_t a, std::size_t b) const {
  const auto& ra = rows.at(a);
  const auto& rb = rows.at(b);
  double s = 0;
  std::size_t i = 0, j = 0;
  while (i < ra.size() && j < rb.size()) {
    if (ra[i].first == rb[j].first) {
      s += ra[i++].second * rb[j++].second;
    } else if (ra[i].first < rb[j].first) {
      ++i;
    } else {
      ++j;
    }
  }
  return s;
}

double SparseMatrix::cosine(std::size_t a, std::size_t b) const {
  const double na = row_norm(a), nb = row_norm(b);
  if (na == 0 || nb == 0) return 0;
  return dot(a, b) / (na * nb);
}

std::vector<std::vector<double>> SparseMatrix::to_dense() const {
  std::vector<std::vector<double>> out(n_rows, std::vector<double>(n_cols, 0.0));
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (const auto& [c, v] : rows[r]) out[r][c] = v;
  }
  return out;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<double>>& dense) {
  SparseMatrix m;
  m.n_rows = dense.size();
  m.n_cols = dense.empty() ? 0 : dense.front().size();
  m.rows.resize(m.n_rows);
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    if (dense[r].size() != m.n_cols) throw UsageError("from_dense: ragged rows");
    for (std::size_t c = 0; c < m.n_cols; ++c) {
      if (dense[r][c] != 0.0) m.rows[r].emplace_back(c, dense[r][c]);
    }
  }
  for (std::size_t c = 0; c < m.n_cols; ++c) m.vocabulary.push_back("c" + std::to_string(c));
  return m;
}

std::string SparseMatrix::to_triplets() const {
  std::string out = std::to_string(n_rows) + " " + std::to_string(n_cols) + " " + std::to_string(nnz()) + "\n";
  char buf[64];
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (const auto& [c, v] : rows[r]) {
      std::snprintf(buf, sizeof buf, " %.17g\n", v);
      out += std::to_string(r + 1) + " " + std::to_string(c + 1) + buf;
    }
  }
  return out;
}

SparseMatrix SparseMatrix::from_triplets(std::string_view text) {
  std::istringstream in{std::string(text)};
  SparseMatrix m;
  std::size_t nnz = 0;
  if (!(in >> m.n_rows >> m.n_cols >> nnz)) throw DataError("triplets: missing 'rows cols nnz' header");
  m.rows.resize(m.n_rows);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t r = 0, c = 0;
    double v = 0;
    if (!(in >> r >> c >> v)) throw DataError("triplets: expected " + std::to_string(nnz) + " entries");
    if (r < 1 || r > m.n_rows || c < 1 || c > m.n_cols) throw DataError("triplets: index out of range");
    m.rows[r - 1].emplace_back(c - 1, v);
  }
  for (auto& row : m.rows) std::sort(row.begin(), row.end());
  for (std::size_t c = 0; c < m.n_cols; ++c) m.vocabulary.push_back("c" + std::to_string(c));
  return m;
}

SparseMatrix tfidf(std::span<const TokenStream> streams) {
  const auto usable = std::count_if(streams.begin(), streams.end(), [](const auto& s) { return !s.tokens.empty(); });
  if (usable < 2) throw UnavailableError("tfidf: needs at least two documents with text");

  std::map<std::string, std::size_t> df;
  for (const auto& s : streams) {
    std::vector<std::string> uniq = s.tokens;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (auto& t : uniq) ++df[t];
  }
  SparseMatrix m;
  m.n_rows = streams.size();
  m.n_cols = df.size();
  std::map<std::string, std::size_t> col;
  std::vector<double> idf;
  const double n_docs = static_cast<double>(streams.size());
  for (const auto& [term, count] : df) {
    col.emplace(term, m.vocabulary.size());
    m.vocabulary.push_back(term);
    idf.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  m.rows.resize(m.n_rows);
  for (std::size_t r = 0; r < streams.size(); ++r) {
    std::map<std::size_t, double> tf;
    for (const auto& t : streams[r].tokens) tf[col.at(t)] += 1.0;
    auto& row = m.rows[r];
    double norm = 0;
    for (const auto& [c, f] : tf) {
      const double v = f * idf[c];
      row.emplace_back(c, v);
      norm += v * v;
    }
    norm = std::sqrt(norm);
    if (norm > 0) {
      for (auto& e : row) e.second /= norm;
    }
  }
  return m;
}

SparseMatrix tfidf(const Corpus& corpus, TextField field, const StopWords& stopwords) {
  const auto streams = field_streams(corpus, field, stopwords);
  return tfidf(streams);
}

std::vector<std::pair<std::string, std::size_t>> word_frequencies(const Corpus& corpus, TextField field,
                                                                  std::size_t top_n, const StopWords& stopwords) {
  Counts counts;
  for (const auto& d : corpus.documents) {
    if (field == TextField::author_keywords || field == TextField::keywords_plus) {
      const auto& list = field == TextField::author_keywords ? d.author_keywords : d.keywords_plus;
      for (const auto& k : list) {
        if (!stopwords.count(k)) ++counts[k];
      }
    } else {
      for (const auto& t : tokenize(field_text(d, field), stopwords, field).tokens) ++counts[t];
    }
  }
  return top_counts(counts, top_n);
}

}  // namespace bibx::text
