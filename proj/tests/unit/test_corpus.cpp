#include <doctest.h>

#include "bibx/corpus.hpp"
#include "bibx/corpus_json.hpp"
#include "bibx/countries.hpp"
#include "bibx/error.hpp"
#include "bibx/strings.hpp"
#include "fixtures.hpp"

using namespace bibx;

TEST_CASE("author names fold to surname plus initials") {
  const std::vector<std::pair<std::string, std::string>> samples{
      {"Chen, Tzu-Yu", "Chen, T.-Y."},
      {"Chen, T.-Y.", "Chen, T.-Y."},
      {"Tzu-Yu Chen", "Chen, T.-Y."},
      {"CHEN, TZU-YU", "Chen, T.-Y."},
      {"Garcia, Maria Luisa", "Garcia, M.L."},
      {"Müller, Björn", "Muller, B."},
      {"  Okafor ,  N. ", "Okafor, N."},
      {"Plato", "Plato"},
  };
  for (const auto& [raw, want] : samples) {
    CAPTURE(raw);
    const auto got = canonicalize(raw, EntityKind::author);
    REQUIRE(got.has_value());
    CHECK(*got == want);
  }
  CHECK_FALSE(canonicalize("   ", EntityKind::author).has_value());
}

TEST_CASE("entity canonical forms") {
  CHECK(*canonicalize("  Decision   Making ", EntityKind::author_keyword) == "decision making");
  CHECK(*canonicalize("Journal of  Operations\tResearch", EntityKind::source) == "JOURNAL OF OPERATIONS RESEARCH");
  CHECK(*canonicalize("Peoples R China", EntityKind::country) == "peoples r china");
  CHECK(*canonicalize("Société Générale", EntityKind::institution) == "SOCIETE GENERALE");
}

TEST_CASE("registries label by first appearance") {
  EntityRegistry reg(EntityKind::author);
  CHECK(reg.intern("b") == 0);
  CHECK(reg.intern("a") == 1);
  CHECK(reg.intern("b") == 0);
  CHECK(reg.label(1) == "a_1");
  CHECK(reg.parse_label("a_1") == std::optional<std::size_t>(1));
  CHECK_FALSE(reg.parse_label("a_2").has_value());
  CHECK_FALSE(reg.parse_label("s_1").has_value());
  CHECK_FALSE(reg.parse_label("a_01x").has_value());
}

TEST_CASE("assign_ids numbers documents and fills registries") {
  const Corpus c = fixtures::small_corpus();
  REQUIRE(c.size() == 5);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c.documents[i].id == i);
  CHECK(c.registry(EntityKind::author).entry(0) == "Garcia, M.");
  CHECK(c.resolve_label("a_1") == std::optional<std::string>("Chen, L."));
  CHECK(c.registry(EntityKind::country).entries() ==
        std::vector<std::string>{"spain", "china", "nigeria", "germany", "japan"});
  CHECK(validate(c).empty());
  CHECK(short_citation(c.documents[3]) == "3 (SCHMIDT, 2020)");
  Document anon;
  anon.id = 9;
  CHECK(short_citation(anon) == "9 (ANON, n.d.)");
}

TEST_CASE("assign_ids rejects an empty list") { CHECK_THROWS_AS(assign_ids({}), EmptyCorpusError); }

TEST_CASE("corpus JSON round trip is lossless") {
  const Corpus c = fixtures::small_corpus();
  const Corpus back = corpus_from_json(corpus_to_json(c));
  CHECK(back.documents == c.documents);
  CHECK(back.registries == c.registries);
  CHECK(back.citation_links == c.citation_links);
  CHECK(corpus_to_json(back).dump() == corpus_to_json(c).dump());
}

TEST_CASE("corpus JSON errors are data errors") {
  CHECK_THROWS_AS(corpus_from_json(nlohmann::json::parse(R"({"documents": 3})")), DataError);
  CHECK_THROWS_AS(load_corpus("/nonexistent/corpus.json"), DataError);
}

TEST_CASE("validate reports broken invariants") {
  Corpus c = fixtures::small_corpus();
  c.documents[2].id = 7;
  CHECK_FALSE(validate(c).empty());
}

TEST_CASE("country table aliases and affiliation parsing") {
  const auto& t = geo::CountryTable::builtin();
  REQUIRE(t.find("USA") != nullptr);
  CHECK(t.find("USA")->name == "united states");
  CHECK(t.find("p.r. china")->name == "china");
  CHECK(t.find("atlantis") == nullptr);
  const auto* c = t.from_affiliation("Tsinghua Univ, Beijing, Peoples R China.");
  REQUIRE(c != nullptr);
  CHECK(c->name == "china");
  CHECK(c->iso2 == "CN");
  const auto* u = t.from_affiliation("Dept of Physics, University of Oxford, Oxford OX1 3PU, United Kingdom");
  REQUIRE(u != nullptr);
  CHECK(u->name == "united kingdom");
  CHECK(t.from_affiliation("Somewhere without a country") == nullptr);
}

TEST_CASE("custom country CSV") {
  const auto t = geo::CountryTable::from_csv("# comment\nfreedonia,FD,10.5,20.25,fredonia;free state\n");
  REQUIRE(t.find("Free State") != nullptr);
  CHECK(t.find("fredonia")->lat == doctest::Approx(10.5));
  CHECK_THROWS_AS(geo::CountryTable::from_csv("broken,line\n"), DataError);
}

TEST_CASE("string helpers") {
  CHECK(str::to_valid_utf8("a\xff" "b") == "a\xEF\xBF\xBD" "b");
  CHECK(str::fold_diacritics("Ångström – “quoted”") == "Angstrom - \"quoted\"");
  CHECK(str::split_top_level("a; {b; c}; ; d", ";") == std::vector<std::string>{"a", "{b; c}", "d"});
  CHECK(str::alnum_key("The T-Cell, 2nd ed.") == "thetcell2nded");
  CHECK(str::collapse_ws("  a \t b\n") == "a b");
}
