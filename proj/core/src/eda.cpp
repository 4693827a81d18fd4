#include "bibx/eda.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_map>

#include "bibx/error.hpp"
#include "bibx/strings.hpp"

namespace bibx::eda {

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // The nudge absorbs representation error on exact halves such as 1.005.
  const double scaled = value * scale;
  return std::floor(scaled + 0.5 + 1e-9 * std::max(1.0, std::abs(scaled))) / scale;
}

std::string format_average(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", round_half_up(value, 2));
  std::string s = buf;
  if (s.size() > 1 && s.back() == '0') s.pop_back();
  return s;
}

int h_index(std::span<const std::int64_t> citation_counts) {
  std::vector<std::int64_t> sorted(citation_counts.begin(), citation_counts.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  int h = 0;
  while (h < static_cast<int>(sorted.size()) && sorted[h] >= h + 1) ++h;
  return h;
}

std::optional<double> collaboration_index(std::size_t total_authors, std::size_t single_authored,
                                          std::size_t multi_authored) {
  if (multi_authored == 0) return std::nullopt;
  const double numerator = static_cast<double>(total_authors) - static_cast<double>(single_authored);
  return round_half_up(numerator / static_cast<double>(multi_authored), 2);
}

std::optional<double> collaboration_index(const Corpus& corpus, CollaborationMode mode) {
  std::size_t single = 0, multi = 0, slots = 0;
  for (const auto& d : corpus.documents) {
    if (d.authors.size() == 1) ++single;
    if (d.authors.size() > 1) {
      ++multi;
      slots += d.authors.size();
    }
  }
  if (mode == CollaborationMode::authorships) {
    if (multi == 0) return std::nullopt;
    return round_half_up(static_cast<double>(slots) / static_cast<double>(multi), 2);
  }
  return collaboration_index(corpus.registry(EntityKind::author).size(), single, multi);
}

namespace {

double ratio(double num, std::size_t den) { return den == 0 ? 0.0 : round_half_up(num / static_cast<double>(den), 2); }

}  // namespace

Averages compute_averages(const ReportTotals& t) {
  Averages a;
  const auto cites = static_cast<double>(t.citations);
  a.docs_per_author = ratio(static_cast<double>(t.authorships), t.authors);
  a.docs_per_institution = ratio(static_cast<double>(t.institution_links), t.institutions);
  a.docs_per_source = ratio(static_cast<double>(t.documents), t.sources);
  a.docs_per_year = ratio(static_cast<double>(t.documents), t.distinct_years);
  a.citations_per_author = ratio(cites, t.authors);
  a.citations_per_institution = ratio(cites, t.institutions);
  a.citations_per_document = ratio(cites, t.documents);
  a.citations_per_source = ratio(cites, t.sources);
  a.collaboration_index = collaboration_index(t.authors, t.single_authored, t.multi_authored);
  return a;
}

namespace {

std::unordered_map<std::string, std::vector<std::size_t>> docs_by_author(const Corpus& corpus) {
  std::unordered_map<std::string, std::vector<std::size_t>> out;
  for (const auto& d : corpus.documents) {
    for (const auto& a : d.authors) out[a].push_back(d.id);
  }
  return out;
}

std::int64_t cites_of(const Document& d) { return d.times_cited.value_or(0); }

std::vector<std::pair<std::string, std::size_t>> count_values(const Corpus& corpus, auto&& get) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::unordered_map<std::string, std::size_t> pos;
  for (const auto& d : corpus.documents) {
    const std::string v = get(d);
    if (v.empty()) continue;
    const auto [it, inserted] = pos.emplace(v, out.size());
    if (inserted) out.emplace_back(v, 0);
    ++out[it->second].second;
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

}  // namespace

EdaReport build_report(const Corpus& corpus, CollaborationMode mode) {
  if (corpus.empty()) throw EmptyCorpusError("report: corpus is empty");
  EdaReport r;
  ReportTotals& t = r.totals;
  std::set<int> years;
  std::set<std::size_t> internal_targets;
  for (const auto& d : corpus.documents) {
    if (d.year) years.insert(*d.year);
    t.authorships += d.authors.size();
    t.institution_links += d.institutions().size();
    t.citations += cites_of(d);
    if (d.authors.size() == 1) ++t.single_authored;
    if (d.authors.size() > 1) ++t.multi_authored;
  }
  for (const auto& l : corpus.citation_links) {
    if (!l.external) internal_targets.insert(l.target);
  }
  t.documents = corpus.size();
  t.authors = corpus.registry(EntityKind::author).size();
  t.institutions = corpus.registry(EntityKind::institution).size();
  t.sources = corpus.registry(EntityKind::source).size();
  t.distinct_years = years.size();

  if (!years.empty()) r.timespan = std::make_pair(*years.begin(), *years.rbegin());
  r.countries = corpus.registry(EntityKind::country).size();
  r.institutions = t.institutions;
  r.sources = t.sources;
  r.references = corpus.registry(EntityKind::reference).size() + internal_targets.size();
  r.languages = count_values(corpus, [](const Document& d) { return d.language; });
  r.documents = t.documents;
  r.doc_types = count_values(corpus, [](const Document& d) { return d.doc_type; });
  r.authors = t.authors;
  r.author_keywords = corpus.registry(EntityKind::author_keyword).size();
  r.keywords_plus = corpus.registry(EntityKind::keyword_plus).size();
  r.single_authored = t.single_authored;
  r.multi_authored = t.multi_authored;
  r.citations = t.citations;
  r.averages = compute_averages(t);
  if (mode != CollaborationMode::unique_authors) r.averages.collaboration_index = collaboration_index(corpus, mode);

  for (const auto& [author, ids] : docs_by_author(corpus)) {
    std::vector<std::int64_t> cites;
    for (auto id : ids) cites.push_back(cites_of(corpus.documents[id]));
    r.max_h_index = std::max(r.max_h_index, h_index(cites));
  }
  return r;
}

std::vector<std::pair<std::string, std::string>> report_rows(const EdaReport& r) {
  std::vector<std::pair<std::string, std::string>> rows;
  auto n = [](auto v) { return std::to_string(v); };
  const auto& a = r.averages;
  rows.emplace_back("Timespan", r.timespan ? n(r.timespan->first) + "-" + n(r.timespan->second) : "—");
  rows.emplace_back("Total Number of Countries", n(r.countries));
  rows.emplace_back("Total Number of Institutions", n(r.institutions));
  rows.emplace_back("Total Number of Sources", n(r.sources));
  rows.emplace_back("Total Number of References", n(r.references));
  rows.emplace_back("Total Number of Languages", n(r.languages.size()));
  for (const auto& [lang, count] : r.languages) rows.emplace_back("--" + lang + " (# of docs)", n(count));
  rows.emplace_back("Total Number of Documents", n(r.documents));
  for (const auto& [type, count] : r.doc_types) rows.emplace_back("--" + type, n(count));
  rows.emplace_back("Average Documents per Author", format_average(a.docs_per_author));
  rows.emplace_back("Average Documents per Institution", format_average(a.docs_per_institution));
  rows.emplace_back("Average Documents per Source", format_average(a.docs_per_source));
  rows.emplace_back("Average Documents per Year", format_average(a.docs_per_year));
  rows.emplace_back("Total Number of Authors", n(r.authors));
  rows.emplace_back("Total Number of Authors' Keywords", n(r.author_keywords));
  rows.emplace_back("Total Number of Authors' Keywords Plus", n(r.keywords_plus));
  rows.emplace_back("Total Single-Authored Documents", n(r.single_authored));
  rows.emplace_back("Total Multi-Authored Documents", n(r.multi_authored));
  rows.emplace_back("Average Collaboration Index",
                    a.collaboration_index ? format_average(*a.collaboration_index) : "—");
  rows.emplace_back("Max h-Index", n(r.max_h_index));
  rows.emplace_back("Total Number of Citations", n(r.citations));
  rows.emplace_back("Average Citations per Author", format_average(a.citations_per_author));
  rows.emplace_back("Average Citations per Institution", format_average(a.citations_per_institution));
  rows.emplace_back("Average Citations per Document", format_average(a.citations_per_document));
  rows.emplace_back("Average Citations per Source", format_average(a.citations_per_source));
  return rows;
}

std::string report_text(const EdaReport& report) {
  const auto rows = report_rows(report);
  std::size_t width = std::string_view("Main Information").size();
  for (const auto& [label, value] : rows) width = std::max(width, label.size());
  auto line = [&](const std::string& l, const std::string& v) {
    return l + std::string(width - l.size() + 2, ' ') + v + "\n";
  };
  std::string out = line("Main Information", "Results");
  for (const auto& [label, value] : rows) out += line(label, value);
  return out;
}

nlohmann::json report_json(const EdaReport& r) {
  nlohmann::json j;
  if (r.timespan) j["timespan"] = {r.timespan->first, r.timespan->second};
  else j["timespan"] = nullptr;
  j["countries"] = r.countries;
  j["institutions"] = r.institutions;
  j["sources"] = r.sources;
  j["references"] = r.references;
  j["languages"] = nlohmann::json::object();
  for (const auto& [l, c] : r.languages) j["languages"][l] = c;
  j["documents"] = r.documents;
  j["doc_types"] = nlohmann::json::object();
  for (const auto& [t, c] : r.doc_types) j["doc_types"][t] = c;
  j["authors"] = r.authors;
  j["author_keywords"] = r.author_keywords;
  j["keywords_plus"] = r.keywords_plus;
  j["single_authored"] = r.single_authored;
  j["multi_authored"] = r.multi_authored;
  j["max_h_index"] = r.max_h_index;
  j["citations"] = r.citations;
  const auto& a = r.averages;
  j["averages"] = {{"docs_per_author", a.docs_per_author},
                   {"docs_per_institution", a.docs_per_institution},
                   {"docs_per_source", a.docs_per_source},
                   {"docs_per_year", a.docs_per_year},
                   {"citations_per_author", a.citations_per_author},
                   {"citations_per_institution", a.citations_per_institution},
                   {"citations_per_document", a.citations_per_document},
                   {"citations_per_source", a.citations_per_source},
                   {"collaboration_index",
                    a.collaboration_index ? nlohmann::json(*a.collaboration_index) : nlohmann::json(nullptr)}};
  return j;
}

// ---------------------------------------------------------------------------
// Series

namespace {

constexpr std::pair<SeriesKind, std::string_view> kSeriesNames[] = {
    {SeriesKind::documents_per_year, "documents_per_year"},
    {SeriesKind::citations_per_year, "citations_per_year"},
    {SeriesKind::past_citations_per_year, "past_citations_per_year"},
    {SeriesKind::lotka, "lotka"},
    {SeriesKind::sources_per_document, "sources_per_document"},
    {SeriesKind::sources_per_citation, "sources_per_citation"},
    {SeriesKind::authors_per_document, "authors_per_document"},
    {SeriesKind::authors_per_citation, "authors_per_citation"},
    {SeriesKind::authors_per_h_index, "authors_per_h_index"},
    {SeriesKind::bradford, "bradford"},
    {SeriesKind::institutions_per_document, "institutions_per_document"},
    {SeriesKind::institutions_per_citation, "institutions_per_citation"},
    {SeriesKind::countries_per_document, "countries_per_document"},
    {SeriesKind::countries_per_citation, "countries_per_citation"},
    {SeriesKind::languages_per_document, "languages_per_document"},
    {SeriesKind::keywords_plus_per_document, "keywords_plus_per_document"},
    {SeriesKind::author_keywords_per_document, "author_keywords_per_document"},
    {SeriesKind::evolution, "evolution"},
    {SeriesKind::productivity, "productivity"},
};

}  // namespace

std::string_view to_string(SeriesKind kind) {
  for (const auto& [k, name] : kSeriesNames) {
    if (k == kind) return name;
  }
  return "documents_per_year";
}

SeriesKind series_kind_from_string(std::string_view s) {
  std::string key = str::to_lower(s);
  std::replace(key.begin(), key.end(), '-', '_');
  for (const auto& [k, name] : kSeriesNames) {
    if (name == key) return k;
  }
  std::string options;
  for (auto k : bar_kinds()) options += (options.empty() ? "" : ", ") + std::string(to_string(k));
  throw UsageError("unknown series kind '" + std::string(s) + "' (expected one of: " + options + ")");
}

std::vector<SeriesKind> bar_kinds() {
  std::vector<SeriesKind> out;
  for (const auto& [k, name] : kSeriesNames) {
    if (k != SeriesKind::evolution && k != SeriesKind::productivity) out.push_back(k);
  }
  return out;
}

namespace {

void rank_and_cut(std::vector<std::pair<std::string, double>>& points, std::size_t top_n) {
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (points.size() > top_n) points.resize(top_n);
}

std::optional<std::pair<int, int>> year_span(const Corpus& corpus) {
  std::optional<std::pair<int, int>> span;
  for (const auto& d : corpus.documents) {
    if (!d.year) continue;
    if (!span) span = std::make_pair(*d.year, *d.year);
    span->first = std::min(span->first, *d.year);
    span->second = std::max(span->second, *d.year);
  }
  return span;
}

// Per year in the corpus span: f(docs published that year).
std::vector<std::pair<std::string, double>> per_year(const Corpus& corpus, auto&& reduce) {
  std::vector<std::pair<std::string, double>> out;
  const auto span = year_span(corpus);
  if (!span) return out;
  std::map<int, std::vector<const Document*>> by_year;
  for (const auto& d : corpus.documents) {
    if (d.year) by_year[*d.year].push_back(&d);
  }
  for (int y = span->first; y <= span->second; ++y) {
    const auto it = by_year.find(y);
    out.emplace_back(std::to_string(y), it == by_year.end() ? 0.0 : reduce(it->second));
  }
  return out;
}

// Per entity: documents (or citations) of documents holding the entity.
std::vector<std::pair<std::string, double>> per_entity(const Corpus& corpus, auto&& values, bool citations) {
  std::unordered_map<std::string, double> acc;
  for (const auto& d : corpus.documents) {
    for (const auto& v : values(d)) acc[v] += citations ? static_cast<double>(cites_of(d)) : 1.0;
  }
  return {acc.begin(), acc.end()};
}

}  // namespace

Series bar_series(const Corpus& corpus, SeriesKind kind, std::size_t top_n) {
  Series s;
  s.kind = kind;
  s.label = std::string(to_string(kind));
  auto entity = [&](EntityKind k) { return [k](const Document& d) { return entity_values(d, k); }; };
  auto language = [](const Document& d) {
    return d.language.empty() ? std::vector<std::string>{} : std::vector<std::string>{d.language};
  };
  switch (kind) {
    case SeriesKind::documents_per_year:
      s.points = per_year(corpus, [](const auto& docs) { return static_cast<double>(docs.size()); });
      return s;
    case SeriesKind::citations_per_year:
      s.points = per_year(corpus, [](const auto& docs) {
        double total = 0;
        for (const auto* d : docs) total += static_cast<double>(cites_of(*d));
        return round_half_up(total / static_cast<double>(docs.size()), 2);
      });
      return s;
    case SeriesKind::past_citations_per_year:
      s.points = per_year(corpus, [](const auto& docs) {
        double total = 0;
        for (const auto* d : docs) total += static_cast<double>(cites_of(*d));
        return total;
      });
      return s;
    case SeriesKind::lotka: {
      const auto fit = lotka_fit(corpus);
      for (const auto& [n, count] : fit.observed) s.points.emplace_back(std::to_string(n), static_cast<double>(count));
      return s;
    }
    case SeriesKind::sources_per_document: s.points = per_entity(corpus, entity(EntityKind::source), false); break;
    case SeriesKind::sources_per_citation: s.points = per_entity(corpus, entity(EntityKind::source), true); break;
    case SeriesKind::authors_per_document: s.points = per_entity(corpus, entity(EntityKind::author), false); break;
    case SeriesKind::authors_per_citation: s.points = per_entity(corpus, entity(EntityKind::author), true); break;
    case SeriesKind::authors_per_h_index:
      for (const auto& [author, ids] : docs_by_author(corpus)) {
        std::vector<std::int64_t> cites;
        for (auto id : ids) cites.push_back(cites_of(corpus.documents[id]));
        s.points.emplace_back(author, static_cast<double>(h_index(cites)));
      }
      break;
    case SeriesKind::bradford: {
      const auto counts = per_entity(corpus, entity(EntityKind::source), false);
      // Zones follow the same ranking rule as the points.
      auto ranked = counts;
      rank_and_cut(ranked, ranked.size());
      const std::size_t n = corpus.size();
      double cum = 0;
      int zone = 1;
      for (const auto& [label, value] : ranked) {
        s.points.emplace_back(label, value);
        s.groups.push_back(zone);
        cum += value;
        while (zone < 3 && 3.0 * cum >= static_cast<double>(zone) * static_cast<double>(n)) ++zone;
      }
      if (s.points.size() > top_n) {
        s.points.resize(top_n);
        s.groups.resize(top_n);
      }
      return s;
    }
    case SeriesKind::institutions_per_document:
      s.points = per_entity(corpus, entity(EntityKind::institution), false);
      break;
    case SeriesKind::institutions_per_citation:
      s.points = per_entity(corpus, entity(EntityKind::institution), true);
      break;
    case SeriesKind::countries_per_document: s.points = per_entity(corpus, entity(EntityKind::country), false); break;
    case SeriesKind::countries_per_citation: s.points = per_entity(corpus, entity(EntityKind::country), true); break;
    case SeriesKind::languages_per_document: s.points = per_entity(corpus, language, false); break;
    case SeriesKind::keywords_plus_per_document:
      s.points = per_entity(corpus, entity(EntityKind::keyword_plus), false);
      break;
    case SeriesKind::author_keywords_per_document:
      s.points = per_entity(corpus, entity(EntityKind::author_keyword), false);
      break;
    case SeriesKind::evolution:
    case SeriesKind::productivity:
      throw UsageError("'" + std::string(to_string(kind)) + "' is not a bar-plot kind");
  }
  rank_and_cut(s.points, top_n);
  return s;
}

namespace {

std::string number(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string series_csv(const Series& series) {
  std::string out = series.groups.empty() ? "category,value\n" : "category,value,group\n";
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    out += csv_field(series.points[i].first) + "," + number(series.points[i].second);
    if (!series.groups.empty()) out += "," + std::to_string(series.groups[i]);
    out += "\n";
  }
  return out;
}

nlohmann::json series_json(const Series& series) {
  nlohmann::json j;
  j["label"] = series.label;
  j["kind"] = to_string(series.kind);
  j["points"] = nlohmann::json::array();
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    nlohmann::json p = {{"category", series.points[i].first}, {"value", series.points[i].second}};
    if (!series.groups.empty()) p["group"] = series.groups[i];
    j["points"].push_back(p);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Lotka

LotkaFit lotka_fit(std::span<const std::pair<int, std::size_t>> observed) {
  LotkaFit fit;
  fit.observed.assign(observed.begin(), observed.end());
  std::sort(fit.observed.begin(), fit.observed.end());
  std::vector<std::pair<double, double>> pts;
  for (const auto& [n, count] : fit.observed) {
    if (n > 0 && count > 0) pts.emplace_back(std::log(static_cast<double>(n)), std::log(static_cast<double>(count)));
  }
  if (pts.size() < 2) return fit;
  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  fit.beta = -slope;
  fit.C = std::exp(intercept);
  for (const auto& [n, count] : fit.observed) {
    fit.expected.emplace_back(n, *fit.C / std::pow(static_cast<double>(n), *fit.beta));
  }
  return fit;
}

LotkaFit lotka_fit(const Corpus& corpus) {
  std::map<int, std::size_t> levels;
  for (const auto& [author, ids] : docs_by_author(corpus)) ++levels[static_cast<int>(ids.size())];
  const std::vector<std::pair<int, std::size_t>> observed(levels.begin(), levels.end());
  return lotka_fit(observed);
}

// ---------------------------------------------------------------------------
// Elements, evolution, treemap, Sankey, productivity

namespace {

constexpr std::pair<ElementKind, std::string_view> kElementNames[] = {
    {ElementKind::authors, "authors"},
    {ElementKind::countries, "countries"},
    {ElementKind::institutions, "institutions"},
    {ElementKind::sources, "sources"},
    {ElementKind::author_keywords, "author_keywords"},
    {ElementKind::keywords_plus, "keywords_plus"},
    {ElementKind::languages, "languages"},
};

}  // namespace

std::string_view to_string(ElementKind kind) {
  for (const auto& [k, name] : kElementNames) {
    if (k == kind) return name;
  }
  return "authors";
}

ElementKind element_kind_from_string(std::string_view s) {
  std::string key = str::to_lower(s);
  std::replace(key.begin(), key.end(), '-', '_');
  static const std::map<std::string, ElementKind> aliases{
      {"author", ElementKind::authors},          {"aut", ElementKind::authors},
      {"country", ElementKind::countries},       {"cout", ElementKind::countries},
      {"institution", ElementKind::institutions}, {"inst", ElementKind::institutions},
      {"source", ElementKind::sources},          {"jou", ElementKind::sources},
      {"author_keyword", ElementKind::author_keywords}, {"kwa", ElementKind::author_keywords},
      {"keyword_plus", ElementKind::keywords_plus}, {"kwp", ElementKind::keywords_plus},
      {"language", ElementKind::languages},      {"lan", ElementKind::languages}};
  for (const auto& [k, name] : kElementNames) {
    if (name == key) return k;
  }
  if (const auto it = aliases.find(key); it != aliases.end()) return it->second;
  throw UsageError("unknown element kind '" + std::string(s) +
                   "' (expected authors, countries, institutions, sources, author_keywords, keywords_plus or languages)");
}

std::vector<std::string> element_values(const Document& doc, ElementKind kind) {
  switch (kind) {
    case ElementKind::authors: return entity_values(doc, EntityKind::author);
    case ElementKind::countries: return entity_values(doc, EntityKind::country);
    case ElementKind::institutions: return entity_values(doc, EntityKind::institution);
    case ElementKind::sources: return entity_values(doc, EntityKind::source);
    case ElementKind::author_keywords: return entity_values(doc, EntityKind::author_keyword);
    case ElementKind::keywords_plus: return entity_values(doc, EntityKind::keyword_plus);
    case ElementKind::languages:
      return doc.language.empty() ? std::vector<std::string>{} : std::vector<std::string>{doc.language};
  }
  return {};
}

std::vector<Series> evolution(const Corpus& corpus, ElementKind field, std::pair<int, int> year_range,
                              std::size_t top_n) {
  if (year_range.first > year_range.second)
    throw UsageError("evolution: empty year range " + std::to_string(year_range.first) + ".." +
                     std::to_string(year_range.second));
  std::unordered_map<std::string, std::map<int, double>> freq;
  std::unordered_map<std::string, double> totals;
  for (const auto& d : corpus.documents) {
    if (!d.year || *d.year < year_range.first || *d.year > year_range.second) continue;
    for (const auto& v : element_values(d, field)) {
      freq[v][*d.year] += 1.0;
      totals[v] += 1.0;
    }
  }
  std::vector<std::pair<std::string, double>> ranked(totals.begin(), totals.end());
  rank_and_cut(ranked, top_n);
  std::vector<Series> out;
  for (const auto& [entity, total] : ranked) {
    Series s;
    s.kind = SeriesKind::evolution;
    s.label = entity;
    const auto& per_year = freq[entity];
    for (int y = year_range.first; y <= year_range.second; ++y) {
      const auto it = per_year.find(y);
      s.points.emplace_back(std::to_string(y), it == per_year.end() ? 0.0 : it->second);
    }
    out.push_back(std::move(s));
  }
  return out;
}

Series treemap_data(const Corpus& corpus, ElementKind field, std::size_t top_n) {
  Series s;
  s.kind = SeriesKind::keywords_plus_per_document;
  s.label = "treemap " + std::string(to_string(field));
  s.points = per_entity(corpus, [field](const Document& d) { return element_values(d, field); }, false);
  rank_and_cut(s.points, top_n);
  return s;
}

std::vector<Flow> sankey_flows(const Corpus& corpus, ElementKind left, ElementKind right, std::size_t top_n) {
  if (left == right) throw UsageError("sankey: left and right element kinds must differ");
  std::map<std::pair<std::string, std::string>, std::size_t> weights;
  for (const auto& d : corpus.documents) {
    const auto ls = element_values(d, left);
    const auto rs = element_values(d, right);
    for (const auto& l : ls) {
      for (const auto& r : rs) ++weights[{l, r}];
    }
  }
  std::vector<Flow> flows;
  flows.reserve(weights.size());
  for (const auto& [pair, w] : weights) flows.push_back({left, pair.first, right, pair.second, w});
  std::stable_sort(flows.begin(), flows.end(), [](const Flow& a, const Flow& b) { return a.weight > b.weight; });
  if (flows.size() > top_n) flows.resize(top_n);
  return flows;
}

Productivity productivity(const Corpus& corpus, std::size_t top_n) {
  Productivity p;
  std::vector<std::pair<std::string, double>> ranked;
  const auto by_author = docs_by_author(corpus);
  for (const auto& [author, ids] : by_author) ranked.emplace_back(author, static_cast<double>(ids.size()));
  rank_and_cut(ranked, top_n);
  for (const auto& [author, total] : ranked) {
    ProductivityRow row;
    row.author = author;
    for (auto id : by_author.at(author)) {
      const auto& d = corpus.documents[id];
      ++row.total;
      if (d.year) {
        row.cells[*d.year].push_back(id);
        if (!p.years) p.years = std::make_pair(*d.year, *d.year);
        p.years->first = std::min(p.years->first, *d.year);
        p.years->second = std::max(p.years->second, *d.year);
      } else {
        row.undated.push_back(id);
      }
    }
    p.rows.push_back(std::move(row));
  }
  return p;
}

}  // namespace bibx::eda
