#include <doctest.h>

#include <string>

#include "bibx/error.hpp"
#include "bibx/ingest.hpp"
#include "bibx/random.hpp"

using namespace bibx;

namespace {

// Mutates a valid record: random byte flips, truncations and duplicated spans.
std::string mutate(std::string s, Rng& rng) {
  const std::size_t edits = 1 + rng.below(6);
  for (std::size_t e = 0; e < edits && !s.empty(); ++e) {
    const std::size_t at = rng.below(s.size());
    switch (rng.below(4)) {
      case 0: s[at] = static_cast<char>(rng.below(256)); break;
      case 1: s.resize(at); break;
      case 2: s.insert(at, s.substr(rng.below(s.size()), rng.below(20))); break;
      default: s.insert(at, 1, "{}@=,\"\n"[rng.below(7)]); break;
    }
  }
  return s;
}

template <typename F>
void survives(F&& parse) {
  try {
    parse();
  } catch (const Error&) {
    // Typed errors are fine; anything else escapes and fails the test.
  }
}

}  // namespace

TEST_CASE("parsers reject garbage with typed errors") {
  const std::string bib =
      "@article{Key2020,\n  title = {A {Nested} Title},\n  author = {Doe, J. and Roe, R.},\n  year = {2020},\n"
      "  doi = {10.1/x},\n  references = {Ref one; Ref two}\n}\n";
  const std::string medline = "PMID- 1\nTI  - A title\n      continued\nAU  - Doe J\nDP  - 2020 Jan\nAB  - Text.\n\n";
  Rng rng(1234);
  for (int i = 0; i < 3000; ++i) {
    const std::string b = mutate(bib, rng);
    const std::string m = mutate(medline, rng);
    survives([&] { ingest::ingest(b, ingest::SourceDb::scopus); });
    survives([&] { ingest::ingest(b, ingest::SourceDb::wos); });
    survives([&] { ingest::ingest(m, ingest::SourceDb::pubmed); });
  }
  CHECK(true);
}
