#include <doctest.h>

#include <cmath>

#include "bibx/error.hpp"
#include "bibx/random.hpp"
#include "bibx/textkit.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bibx;
using namespace bibx::text;

TEST_CASE("tokenizer keeps inner hyphens and drops noise") {
  const auto s = tokenize("The multi-criteria model, 2019 edition: a -- robust x-ray of e.g. COVID-19!",
                          english_stopwords());
  const std::vector<std::string> want{"multi-criteria", "model", "edition", "robust", "x-ray", "covid-19"};
  CHECK(s.tokens == want);
}

TEST_CASE("tokenizer is Unicode aware") {
  const auto s = tokenize("Müller's Über-Modell", StopWords{});
  REQUIRE(s.tokens.size() >= 2);
  CHECK(s.tokens[0] == "müller");
}

TEST_CASE("stopword files") {
  const StopWords sw = parse_stopwords("# comment\nfoo\n\n  bar  \n");
  CHECK(sw.size() == 2);
  CHECK(sw.count("bar") == 1);
  CHECK(english_stopwords().size() == 179);
}

TEST_CASE("n-grams are counted per stream") {
  const std::vector<TokenStream> streams{{{"a", "b", "c"}}, {{"c", "a", "b"}}};
  const Counts bi = ngrams(streams, 2);
  CHECK(bi.at("a-b") == 2);
  CHECK(bi.at("b-c") == 1);
  CHECK(bi.count("c-c") == 0);  // never across stream boundaries
  CHECK(ngrams(streams, 4).empty());
  CHECK_THROWS_AS(ngrams(streams, 0), UsageError);
  const auto top = top_counts(bi, 2);
  REQUIRE(top.size() == 2);
  CHECK(top[0].first == "a-b");
  CHECK(top[1].first == "b-c");
}

TEST_CASE("TF-IDF agrees with the dense oracle") {
  Rng rng(11);
  const std::vector<std::string> vocab{"alpha", "beta", "gamma", "delta", "eps", "zeta", "eta", "theta"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<TokenStream> streams(2 + rng.below(8));
    std::vector<std::vector<std::string>> docs;
    for (auto& s : streams) {
      const std::size_t len = 1 + rng.below(12);
      for (std::size_t i = 0; i < len; ++i) s.tokens.push_back(vocab[rng.below(vocab.size())]);
      docs.push_back(s.tokens);
    }
    const SparseMatrix m = tfidf(streams);
    const auto want = oracle::tfidf(docs);
    REQUIRE(m.vocabulary == want.vocabulary);
    const auto got = m.to_dense();
    for (std::size_t r = 0; r < got.size(); ++r) {
      CHECK(m.row_norm(r) == doctest::Approx(1.0).epsilon(1e-12));
      for (std::size_t c = 0; c < got[r].size(); ++c) CHECK(std::abs(got[r][c] - want.rows[r][c]) < 1e-12);
    }
  }
}

TEST_CASE("TF-IDF needs two documents with text") {
  const std::vector<TokenStream> one{{{"alpha"}}, {}};
  CHECK_THROWS_AS(tfidf(one), UnavailableError);
}

TEST_CASE("sparse matrix triplets round trip") {
  const auto dense = std::vector<std::vector<double>>{{0, 1.5, 0}, {2, 0, -0.25}};
  const SparseMatrix m = SparseMatrix::from_dense(dense);
  CHECK(m.nnz() == 3);
  const SparseMatrix back = SparseMatrix::from_triplets(m.to_triplets());
  CHECK(back.to_dense() == dense);
  CHECK(m.dot(0, 1) == 0.0);
  CHECK_THROWS(SparseMatrix::from_triplets("2 2 1\n3 1 1.0\n"));
}

TEST_CASE("word frequencies count keyword phrases whole") {
  const Corpus c = fixtures::small_corpus();
  const auto kw = word_frequencies(c, TextField::author_keywords, 3);
  REQUIRE(kw.size() == 3);
  CHECK(kw[0] == std::pair<std::string, std::size_t>{"decision making", 3});
  const auto words = word_frequencies(c, TextField::abstract_text, 50);
  bool has_consensus = false;
  for (const auto& [w, n] : words) has_consensus |= (w == "consensus");
  CHECK(has_consensus);
  CHECK(text_field_from_string("abstract") == TextField::abstract_text);
  CHECK_THROWS_AS(text_field_from_string("body"), UsageError);
}
