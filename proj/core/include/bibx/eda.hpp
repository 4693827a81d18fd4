#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bibx/corpus.hpp"

// Descriptive statistics: the corpus report, bar-plot series, Lotka fit,
// keyword evolution, treemap totals, Sankey flows and author productivity.
namespace bibx::eda {

// Rounds half away from zero at `decimals` places (inputs are non-negative).
double round_half_up(double value, int decimals = 2);

// Two decimals with a single trailing zero dropped: 1.20 -> "1.2", 3.00 -> "3.0".
std::string format_average(double value);

int h_index(std::span<const std::int64_t> citation_counts);

enum class CollaborationMode {
  unique_authors,  // (distinct authors - single-authored docs) / multi-authored docs
  authorships,     // author slots on multi-authored docs / multi-authored docs
};

// nullopt when there is no multi-authored document.
std::optional<double> collaboration_index(std::size_t total_authors, std::size_t single_authored,
                                          std::size_t multi_authored);
std::optional<double> collaboration_index(const Corpus& corpus,
                                          CollaborationMode mode = CollaborationMode::unique_authors);

// Raw numerators and denominators behind the report averages.
struct ReportTotals {
  std::size_t documents = 0;
  std::size_t authors = 0;
  std::size_t institutions = 0;
  std::size_t sources = 0;
  std::size_t distinct_years = 0;
  std::size_t authorships = 0;        // sum of per-document author-list lengths
  std::size_t institution_links = 0;  // sum of per-document institution-list lengths
  std::int64_t citations = 0;
  std::size_t single_authored = 0;
  std::size_t multi_authored = 0;
};

struct Averages {
  double docs_per_author = 0;
  double docs_per_institution = 0;
  double docs_per_source = 0;
  double docs_per_year = 0;
  double citations_per_author = 0;
  double citations_per_institution = 0;
  double citations_per_document = 0;
  double citations_per_source = 0;
  std::optional<double> collaboration_index;
};

// Every ratio rounded half-up to two decimals; a zero denominator gives 0.
Averages compute_averages(const ReportTotals& totals);

struct EdaReport {
  std::optional<std::pair<int, int>> timespan;
  std::size_t countries = 0;
  std::size_t institutions = 0;
  std::size_t sources = 0;
  std::size_t references = 0;
  std::vector<std::pair<std::string, std::size_t>> languages;  // name, doc count
  std::size_t documents = 0;
  std::vector<std::pair<std::string, std::size_t>> doc_types;
  std::size_t authors = 0;
  std::size_t author_keywords = 0;
  std::size_t keywords_plus = 0;
  std::size_t single_authored = 0;
  std::size_t multi_authored = 0;
  int max_h_index = 0;
  std::int64_t citations = 0;
  Averages averages;
  ReportTotals totals;
};

// Throws EmptyCorpusError on an empty corpus.
EdaReport build_report(const Corpus& corpus, CollaborationMode mode = CollaborationMode::unique_authors);

// (label, value) rows in report order.
std::vector<std::pair<std::string, std::string>> report_rows(const EdaReport& report);
std::string report_text(const EdaReport& report);
nlohmann::json report_json(const EdaReport& report);

enum class SeriesKind {
  documents_per_year,
  citations_per_year,
  past_citations_per_year,
  lotka,
  sources_per_document,
  sources_per_citation,
  authors_per_document,
  authors_per_citation,
  authors_per_h_index,
  bradford,
  institutions_per_document,
  institutions_per_citation,
  countries_per_document,
  countries_per_citation,
  languages_per_document,
  keywords_plus_per_document,
  author_keywords_per_document,
  evolution,
  productivity,
};

std::string_view to_string(SeriesKind kind);
// Accepts the names above; throws UsageError listing the options otherwise.
SeriesKind series_kind_from_string(std::string_view s);
// The seventeen bar-plot kinds.
std::vector<SeriesKind> bar_kinds();

struct Series {
  std::string label;
  SeriesKind kind = SeriesKind::documents_per_year;
  std::vector<std::pair<std::string, double>> points;
  // Optional per-point group (Bradford zone); empty when unused.
  std::vector<int> groups;
};

// Year kinds span min..max year with zero fill; entity kinds are ranked by
// value (ties by label) and cut to top_n.
Series bar_series(const Corpus& corpus, SeriesKind kind, std::size_t top_n = 15);

std::string series_csv(const Series& series);
nlohmann::json series_json(const Series& series);

struct LotkaFit {
  std::vector<std::pair<int, std::size_t>> observed;  // publications n, authors with n
  std::optional<double> C;
  std::optional<double> beta;
  std::vector<std::pair<int, double>> expected;  // n, C / n^beta

  bool fitted() const { return beta.has_value(); }
};

// Least squares on (ln n, ln count); unfitted with a single level.
LotkaFit lotka_fit(std::span<const std::pair<int, std::size_t>> observed);
LotkaFit lotka_fit(const Corpus& corpus);

// The seven elements a Sankey diagram or evolution plot can draw from.
enum class ElementKind { authors, countries, institutions, sources, author_keywords, keywords_plus, languages };

std::string_view to_string(ElementKind kind);
ElementKind element_kind_from_string(std::string_view s);
// Distinct values a document holds for the element.
std::vector<std::string> element_values(const Document& doc, ElementKind kind);

// One series per entity (points = years in range, zero-filled), entities ranked
// by total frequency in range. Throws UsageError when min > max.
std::vector<Series> evolution(const Corpus& corpus, ElementKind field, std::pair<int, int> year_range,
                              std::size_t top_n);

// Total frequency per entity, descending (ties by label), truncated.
Series treemap_data(const Corpus& corpus, ElementKind field, std::size_t top_n);

struct Flow {
  ElementKind left_kind;
  std::string left;
  ElementKind right_kind;
  std::string right;
  std::size_t weight = 0;
};

// Weight = documents where the pair co-occurs. Throws UsageError when
// left == right.
std::vector<Flow> sankey_flows(const Corpus& corpus, ElementKind left, ElementKind right, std::size_t top_n);

struct ProductivityRow {
  std::string author;
  std::size_t total = 0;
  std::map<int, std::vector<std::size_t>> cells;  // year -> doc ids
  std::vector<std::size_t> undated;
};

struct Productivity {
  std::vector<ProductivityRow> rows;
  std::optional<std::pair<int, int>> years;
};

Productivity productivity(const Corpus& corpus, std::size_t top_n);

}  // namespace bibx::eda
