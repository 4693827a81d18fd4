#include <iostream>
#include <memory>
#include <set>

#include "bibx/corpus_json.hpp"
#include "bibx/eda.hpp"
#include "bibx/error.hpp"
#include "bibx/fuse.hpp"
#include "bibx/ingest.hpp"
#include "bibx/strings.hpp"
#include "cli.hpp"

namespace bibx::cli {

namespace {

ingest::SourceDb parse_db(const std::string& name) {
  if (auto db = ingest::source_db_from_string(str::to_lower(name))) return *db;
  throw UsageError("unknown database '" + name + "' (expected scopus, wos or pubmed)");
}

struct Sources {
  ingest::FieldMap field_map = ingest::FieldMap::defaults();
  std::optional<geo::CountryTable> countries;
  const geo::CountryTable& table() const { return countries ? *countries : geo::CountryTable::builtin(); }
};

Sources load_sources(const std::string& field_map_path, const std::string& countries_path) {
  Sources s;
  if (!field_map_path.empty()) {
    try {
      s.field_map = ingest::FieldMap::from_json(nlohmann::json::parse(read_file(field_map_path)));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(field_map_path + ": " + e.what());
    }
  }
  if (!countries_path.empty()) s.countries = geo::CountryTable::from_csv(read_file(countries_path));
  return s;
}

std::vector<Document> ingest_file(const std::string& path, ingest::SourceDb db, const Sources& sources) {
  const std::string bytes = read_file(path);
  ingest::IngestResult result;
  try {
    result = ingest::ingest(bytes, db, sources.field_map, sources.table());
  } catch (const ParseError& e) {
    throw ParseError(e.offset(), path + ": " + e.what());
  }
  for (const auto& w : result.warnings) warn(path + ":" + std::to_string(w.offset) + " " + w.message);
  std::cerr << path << ": " << result.records << " records, " << result.documents.size() << " documents";
  if (result.dropped > 0) std::cerr << ", " << result.dropped << " dropped";
  std::cerr << "\n";
  return std::move(result.documents);
}

std::set<std::string> as_set(const std::vector<std::string>& items) {
  std::set<std::string> out;
  for (const auto& item : items) {
    for (auto& piece : split_list(item)) out.insert(std::move(piece));
  }
  return out;
}

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string documents_csv(const Corpus& corpus) {
  std::string out = "id,title,authors,year,source,doc_type,language,times_cited,doi,countries\n";
  for (const auto& d : corpus.documents) {
    out += std::to_string(d.id) + "," + csv_cell(d.title) + "," + csv_cell(str::join(d.authors, "; ")) + "," +
           (d.year ? std::to_string(*d.year) : "") + "," + csv_cell(d.source) + "," + csv_cell(d.doc_type) + "," +
           csv_cell(d.language) + "," + (d.times_cited ? std::to_string(*d.times_cited) : "") + "," +
           csv_cell(d.doi) + "," + csv_cell(str::join(d.countries(), "; ")) + "\n";
  }
  return out;
}

void add_ingest(CLI::App& app, Globals&) {
  struct Opts {
    std::string input, source, out, field_map, countries;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("ingest", "Parse one export file into a corpus JSON");
  cmd->add_option("file", o->input, "Scopus/WoS .bib or MEDLINE .txt/.nbib export")->required();
  cmd->add_option("--source,--db", o->source, "Export dialect: scopus, wos or pubmed")->required();
  add_out_option(cmd, o->out, "Corpus JSON to write");
  cmd->add_option("--field-map", o->field_map, "JSON overriding the tag-to-field mapping");
  cmd->add_option("--countries", o->countries, "CSV country table (name,iso2,lat,lon[,aliases])");
  cmd->callback([o] {
    const auto db = parse_db(o->source);
    const auto sources = load_sources(o->field_map, o->countries);
    auto docs = ingest_file(o->input, db, sources);
    if (docs.empty()) throw EmptyCorpusError(o->input + ": no documents");
    save_corpus(fuse::relabel(std::move(docs)), o->out);
    std::cerr << "wrote " << o->out << "\n";
  });
}

void add_merge(CLI::App& app, Globals&) {
  struct Opts {
    std::vector<std::string> inputs;
    std::string out, field_map, countries;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("merge", "Merge several exports (earlier inputs take precedence)");
  cmd->add_option("--in", o->inputs, "path:db with db one of scopus, wos, pubmed, json; repeatable")->required();
  add_out_option(cmd, o->out, "Corpus JSON to write");
  cmd->add_option("--field-map", o->field_map, "JSON overriding the tag-to-field mapping");
  cmd->add_option("--countries", o->countries, "CSV country table (name,iso2,lat,lon[,aliases])");
  cmd->callback([o] {
    const auto sources = load_sources(o->field_map, o->countries);
    fuse::MergePlan plan;
    for (const auto& spec : o->inputs) {
      const auto colon = spec.rfind(':');
      if (colon == std::string::npos || colon == 0) throw UsageError("--in expects path:db, got '" + spec + "'");
      const std::string path = spec.substr(0, colon);
      const std::string db = str::to_lower(spec.substr(colon + 1));
      fuse::Dataset ds;
      if (db == "json") {
        ds.documents = load_corpus(path).documents;
      } else {
        ds.source_db = parse_db(db);
        ds.documents = ingest_file(path, ds.source_db, sources);
      }
      plan.datasets.push_back(std::move(ds));
    }
    const auto result = fuse::merge(plan);
    const auto& st = result.stats;
    for (std::size_t i = 0; i < st.added_per_dataset.size(); ++i) {
      std::cout << o->inputs[i] << ": " << st.added_per_dataset[i] << " added\n";
    }
    std::cout << "duplicates merged: " << st.duplicates << "\n";
    std::cout << "documents: " << result.corpus.size() << "\n";
    if (st.title_fallback_flag) {
      warn("merge: " + std::to_string(st.title_key_merges) + " of " + std::to_string(st.duplicates) +
           " duplicates matched on title only; check DOIs");
    }
    save_corpus(result.corpus, o->out);
    std::cerr << "wrote " << o->out << "\n";
  });
}

void add_filter(CLI::App& app, Globals&) {
  struct Opts {
    std::string corpus, out, years;
    std::vector<std::string> types, sources, countries, languages, zones;
    bool require_abstract = false;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("filter", "Keep documents matching every given criterion");
  add_corpus_arg(cmd, o->corpus);
  add_out_option(cmd, o->out, "Filtered corpus JSON");
  cmd->add_option("--types", o->types, "Document types to keep (comma-separated)");
  cmd->add_option("--years", o->years, "Inclusive year range, e.g. 1984:2023");
  cmd->add_option("--sources", o->sources, "Sources to keep (comma-separated)");
  cmd->add_option("--bradford", o->zones, "Bradford zones to keep, e.g. 1,2");
  cmd->add_option("--countries", o->countries, "Countries to keep (comma-separated)");
  cmd->add_option("--languages", o->languages, "Languages to keep (comma-separated)");
  cmd->add_flag("--require-abstract", o->require_abstract, "Drop documents without an abstract");
  cmd->callback([o] {
    const Corpus corpus = load_corpus(o->corpus);
    fuse::FilterCriteria c;
    if (!o->types.empty()) c.doc_types = as_set(o->types);
    if (!o->years.empty()) c.year_range = parse_year_range(o->years);
    if (!o->sources.empty()) c.sources = as_set(o->sources);
    if (!o->countries.empty()) c.countries = as_set(o->countries);
    if (!o->languages.empty()) c.languages = as_set(o->languages);
    if (!o->zones.empty()) {
      std::set<int> zones;
      for (const auto& z : as_set(o->zones)) {
        if (z != "1" && z != "2" && z != "3") throw UsageError("--bradford zones are 1, 2 or 3, got '" + z + "'");
        zones.insert(z[0] - '0');
      }
      c.bradford_zones = zones;
    }
    c.require_abstract = o->require_abstract;
    const Corpus kept = fuse::filter(corpus, c);
    std::cout << "kept " << kept.size() << " of " << corpus.size() << " documents\n";
    save_corpus(kept, o->out);
    std::cerr << "wrote " << o->out << "\n";
  });
}

void add_report(CLI::App& app, Globals& g) {
  struct Opts {
    std::string corpus, format = "text", mode = "unique", out;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("report", "Corpus statistics table");
  add_corpus_arg(cmd, o->corpus);
  cmd->add_option("--format", o->format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--collab-mode", o->mode, "Collaboration index: unique (distinct authors) or authorships")
      ->check(CLI::IsMember({"unique", "authorships"}))
      ->capture_default_str();
  cmd->add_option("-o,--out", o->out, "Also write the report to this file");
  cmd->callback([o, &g] {
    const Corpus corpus = load_corpus(o->corpus);
    const auto mode =
        o->mode == "authorships" ? eda::CollaborationMode::authorships : eda::CollaborationMode::unique_authors;
    const auto report = eda::build_report(corpus, mode);
    const std::string text =
        o->format == "json" ? with_metadata("report", g.seed, eda::report_json(report)) : eda::report_text(report);
    std::cout << text;
    if (!o->out.empty()) write_output(o->out, text);
  });
}

void add_export(CLI::App& app, Globals& g) {
  struct Opts {
    std::string corpus, format = "csv", out;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("export", "Write the corpus as CSV, JSON or a static HTML overview");
  add_corpus_arg(cmd, o->corpus);
  cmd->add_option("--format", o->format, "csv, json or html")
      ->check(CLI::IsMember({"csv", "json", "html"}))
      ->capture_default_str();
  add_out_option(cmd, o->out, "File to write");
  cmd->callback([o, &g] {
    const Corpus corpus = load_corpus(o->corpus);
    if (o->format == "csv") {
      write_output(o->out, documents_csv(corpus));
    } else if (o->format == "json") {
      write_output(o->out, corpus_to_json(corpus).dump(1) + "\n");
    } else {
      const Settings s = load_settings(g);
      std::vector<render::ViewSpec> views;
      for (auto kind : {eda::SeriesKind::documents_per_year, eda::SeriesKind::citations_per_year,
                        eda::SeriesKind::sources_per_document, eda::SeriesKind::authors_per_document,
                        eda::SeriesKind::countries_per_document}) {
        views.push_back(render::bar_view(eda::bar_series(corpus, kind), s.view));
      }
      write_output(o->out, render::emit_html(views, "Corpus overview"));
    }
  });
}

}  // namespace

void add_corpus_commands(CLI::App& app, Globals& globals) {
  add_ingest(app, globals);
  add_merge(app, globals);
  add_filter(app, globals);
  add_report(app, globals);
  add_export(app, globals);
}

}  // namespace bibx::cli
