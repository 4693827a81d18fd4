#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bibx/corpus.hpp"
#include "bibx/countries.hpp"

// Readers for Scopus / Web of Science BibTeX exports and MEDLINE (PubMed)
// tagged text, and the mapping from raw tags to Document fields.
namespace bibx::ingest {

enum class SourceDb { scopus, wos, pubmed };

std::string_view to_string(SourceDb db);
std::optional<SourceDb> source_db_from_string(std::string_view s);
Origin to_origin(SourceDb db);

struct ByteSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

// Tags in input order; repeated tags accumulate values on the first entry.
// BibTeX records carry the synthetic tags ENTRYTYPE and ID.
struct RawRecord {
  SourceDb source_db = SourceDb::scopus;
  std::vector<std::pair<std::string, std::vector<std::string>>> fields;
  ByteSpan byte_span;

  void add(std::string_view tag, std::string value);
  const std::vector<std::string>* values(std::string_view tag) const;
  std::string first(std::string_view tag) const;
  bool has(std::string_view tag) const { return values(tag) != nullptr; }

  // byte_span is position metadata and does not take part in equality.
  friend bool operator==(const RawRecord& a, const RawRecord& b) {
    return a.source_db == b.source_db && a.fields == b.fields;
  }
};

// Throws ParseError carrying the byte offset of the offending construct.
std::vector<RawRecord> parse_bibtex(std::string_view bytes, SourceDb dialect);

// Throws ParseError carrying the 1-based line number.
std::vector<RawRecord> parse_pubmed(std::string_view bytes);

std::string emit_bibtex(const std::vector<RawRecord>& records);
std::string emit_pubmed(const std::vector<RawRecord>& records);

// Candidate tags per Document field; the first tag present wins.
struct DialectMap {
  std::vector<std::string> title, abstract_text, authors, affiliations, author_keywords, keywords_plus,
      source, doc_type, language, year, references, times_cited, doi;
  std::vector<std::string> reference_delims;
  std::vector<std::string> affiliation_delims;
  std::string keyword_delim = ";";
  std::string author_delim = " and ";
};

struct FieldMap {
  DialectMap scopus;
  DialectMap wos;
  DialectMap pubmed;

  const DialectMap& operator[](SourceDb db) const;
  DialectMap& operator[](SourceDb db);

  static FieldMap defaults();
  // Keys missing from `j` keep their default values.
  static FieldMap from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct Warning {
  std::size_t offset = 0;
  std::string message;
};

// Maps one record to a Document. Returns nullopt (and appends a warning) when
// the record has no title.
std::optional<Document> normalize(const RawRecord& record, std::vector<Warning>& warnings,
                                  const FieldMap& map = FieldMap::defaults(),
                                  const geo::CountryTable& countries = geo::CountryTable::builtin());

struct IngestResult {
  std::vector<Document> documents;
  std::vector<Warning> warnings;
  std::size_t records = 0;
  std::size_t dropped = 0;
};

// Parses `bytes` with the dialect's parser (decoding lossily as UTF-8) and
// normalizes every record.
IngestResult ingest(std::string_view bytes, SourceDb db, const FieldMap& map = FieldMap::defaults(),
                    const geo::CountryTable& countries = geo::CountryTable::builtin());

// Helpers exposed for testing.
std::optional<int> parse_year(std::string_view text);
std::optional<std::int64_t> parse_times_cited(std::string_view text);
std::string clean_tex(std::string_view value);

}  // namespace bibx::ingest
