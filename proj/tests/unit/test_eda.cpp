#include <doctest.h>

#include <cmath>

#include "bibx/eda.hpp"
#include "bibx/error.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace bibx;
using namespace bibx::eda;

TEST_CASE("report ratios from the published totals") {
  ReportTotals t;
  t.citations = 5674;
  t.documents = 184;
  t.sources = 121;
  t.authors = 495;
  t.institutions = 231;
  t.distinct_years = 25;
  t.single_authored = 43;
  t.multi_authored = 141;
  const Averages a = compute_averages(t);
  CHECK(a.citations_per_document == 30.84);
  CHECK(a.docs_per_source == 1.52);
  CHECK(a.citations_per_source == 46.89);
  CHECK(a.citations_per_author == 11.46);
  CHECK(a.citations_per_institution == 24.56);
  CHECK(a.docs_per_year == 7.36);
  CHECK(collaboration_index(495, 43, 141) == 3.21);
  CHECK(format_average(a.citations_per_document) == "30.84");
  CHECK(format_average(1.2) == "1.2");
  CHECK(format_average(3.0) == "3.0");
}

TEST_CASE("half-up rounding on exact halves") {
  CHECK(round_half_up(1.005) == 1.01);
  CHECK(round_half_up(2.675) == 2.68);
  CHECK(round_half_up(0.125) == 0.13);
  CHECK(round_half_up(0.124999) == 0.12);
  CHECK(round_half_up(7.0) == 7.0);
}

TEST_CASE("zero denominators give zero, not NaN") {
  const Averages a = compute_averages(ReportTotals{});
  CHECK(a.docs_per_author == 0.0);
  CHECK(a.citations_per_document == 0.0);
  CHECK_FALSE(collaboration_index(3, 3, 0).has_value());
}

TEST_CASE("h-index matches brute force") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto cites = fixtures::random_citations(seed);
    CAPTURE(seed);
    CHECK(h_index(cites) == oracle::h_index(cites));
  }
  CHECK(h_index(std::vector<std::int64_t>{}) == 0);
  CHECK(h_index(std::vector<std::int64_t>{10, 8, 5, 4, 3}) == 4);
  CHECK(h_index(std::vector<std::int64_t>{25, 8, 5, 3, 3}) == 3);
}

TEST_CASE("report on the small corpus") {
  const Corpus c = fixtures::small_corpus();
  const EdaReport r = build_report(c);
  CHECK(r.timespan == std::pair{2015, 2021});
  CHECK(r.documents == 5);
  CHECK(r.authors == 6);
  CHECK(r.sources == 3);
  CHECK(r.countries == 5);
  CHECK(r.citations == 69);
  CHECK(r.single_authored == 1);
  CHECK(r.multi_authored == 4);
  // authors with their per-document citations: Garcia 40,18; Chen 40,18; Okafor 18,7; Schmidt 3,1 ...
  CHECK(r.max_h_index == 2);
  CHECK(r.averages.citations_per_document == 13.8);
  // (6 - 1) / 4
  CHECK(r.averages.collaboration_index == 1.25);
  CHECK(build_report(c, CollaborationMode::authorships).averages.collaboration_index == 2.25);
  const auto rows = report_rows(r);
  REQUIRE_FALSE(rows.empty());
  CHECK(rows.front().first == "Timespan");
  CHECK(report_text(r).find("Average Citations per Document") != std::string::npos);
  CHECK(report_json(r)["documents"] == 5);
}

TEST_CASE("empty corpus report is an error") { CHECK_THROWS_AS(build_report(Corpus{}), EmptyCorpusError); }

TEST_CASE("year series are zero filled") {
  const Series s = bar_series(fixtures::small_corpus(), SeriesKind::documents_per_year);
  REQUIRE(s.points.size() == 7);
  CHECK(s.points[0] == std::pair<std::string, double>{"2015", 1});
  CHECK(s.points[1] == std::pair<std::string, double>{"2016", 0});
  CHECK(series_csv(s).rfind("category,value\n2015,1\n2016,0\n", 0) == 0);
}

TEST_CASE("ranked series cut to top n with label tie-break") {
  const Series s = bar_series(fixtures::small_corpus(), SeriesKind::sources_per_document, 2);
  REQUIRE(s.points.size() == 2);
  CHECK(s.points[0] == std::pair<std::string, double>{"FUZZY LETTERS", 2});
  CHECK(s.points[1] == std::pair<std::string, double>{"OPERATIONS JOURNAL", 2});
  CHECK(bar_kinds().size() == 17);
  CHECK_THROWS_AS(series_kind_from_string("pie"), UsageError);
}

TEST_CASE("Lotka fit on an exact power law") {
  const std::vector<std::pair<int, std::size_t>> obs{{1, 64}, {2, 16}, {4, 4}, {8, 1}};
  const LotkaFit f = lotka_fit(obs);
  REQUIRE(f.fitted());
  CHECK(*f.beta == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(*f.C == doctest::Approx(64.0).epsilon(1e-12));
  CHECK(f.expected[2].second == doctest::Approx(4.0));
  const std::vector<std::pair<int, std::size_t>> single{{1, 10}};
  CHECK_FALSE(lotka_fit(single).fitted());
}

TEST_CASE("evolution, treemap, sankey and productivity") {
  const Corpus c = fixtures::small_corpus();
  const auto evo = evolution(c, ElementKind::author_keywords, {2015, 2021}, 2);
  REQUIRE(evo.size() == 2);
  CHECK(evo[0].label == "decision making");
  CHECK(evo[0].points.size() == 7);
  CHECK_THROWS_AS(evolution(c, ElementKind::author_keywords, {2021, 2015}, 2), UsageError);

  const Series tm = treemap_data(c, ElementKind::countries, 3);
  REQUIRE(tm.points.size() == 3);
  CHECK(tm.points[0] == std::pair<std::string, double>{"china", 2});

  const auto flows = sankey_flows(c, ElementKind::countries, ElementKind::author_keywords, 10);
  std::size_t germany_consensus = 0;
  for (const auto& f : flows) {
    if (f.left == "germany" && f.right == "consensus") germany_consensus = f.weight;
  }
  CHECK(germany_consensus == 2);
  CHECK_THROWS_AS(sankey_flows(c, ElementKind::sources, ElementKind::sources, 5), UsageError);

  const Productivity p = productivity(c, 2);
  REQUIRE(p.rows.size() == 2);
  CHECK(p.rows[0].total == 2);
  CHECK(p.years == std::pair{2015, 2017});
  CHECK(p.rows[0].author == "Chen, L.");
}
