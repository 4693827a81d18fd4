#include "bibx/corpus_json.hpp"

#include <fstream>
#include <sstream>

#include "bibx/error.hpp"

namespace bibx {

using nlohmann::json;

json document_to_json(const Document& doc) {
  json j;
  j["id"] = doc.id;
  j["title"] = doc.title;
  j["abstract"] = doc.abstract_text;
  j["authors"] = doc.authors;
  j["affiliations"] = json::array();
  for (const auto& a : doc.affiliations)
    j["affiliations"].push_back({{"institution", a.institution}, {"country", a.country}});
  j["author_keywords"] = doc.author_keywords;
  j["keywords_plus"] = doc.keywords_plus;
  j["source"] = doc.source;
  j["doc_type"] = doc.doc_type;
  j["language"] = doc.language;
  j["year"] = doc.year ? json(*doc.year) : json(nullptr);
  j["references"] = doc.references ? json(*doc.references) : json(nullptr);
  j["times_cited"] = doc.times_cited ? json(*doc.times_cited) : json(nullptr);
  j["doi"] = doc.doi;
  j["origin"] = to_string(doc.origin);
  return j;
}

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

}  // namespace

Document document_from_json(const json& j) {
  if (!j.is_object()) throw DataError("corpus JSON: document entries must be objects");
  Document doc;
  doc.id = get_or<std::size_t>(j, "id", 0);
  doc.title = get_or<std::string>(j, "title", "");
  doc.abstract_text = get_or<std::string>(j, "abstract", "");
  doc.authors = get_or<std::vector<std::string>>(j, "authors", {});
  if (const auto it = j.find("affiliations"); it != j.end() && it->is_array()) {
    for (const auto& a : *it)
      doc.affiliations.push_back(
          {get_or<std::string>(a, "institution", ""), get_or<std::string>(a, "country", "")});
  }
  doc.author_keywords = get_or<std::vector<std::string>>(j, "author_keywords", {});
  doc.keywords_plus = get_or<std::vector<std::string>>(j, "keywords_plus", {});
  doc.source = get_or<std::string>(j, "source", "");
  doc.doc_type = get_or<std::string>(j, "doc_type", "");
  doc.language = get_or<std::string>(j, "language", "");
  if (const auto it = j.find("year"); it != j.end() && !it->is_null()) doc.year = it->get<int>();
  if (const auto it = j.find("references"); it != j.end() && !it->is_null())
    doc.references = it->get<std::vector<std::string>>();
  if (const auto it = j.find("times_cited"); it != j.end() && !it->is_null())
    doc.times_cited = it->get<std::int64_t>();
  doc.doi = get_or<std::string>(j, "doi", "");
  doc.origin = origin_from_string(get_or<std::string>(j, "origin", "scopus")).value_or(Origin::scopus);
  return doc;
}

json corpus_to_json(const Corpus& corpus) {
  json j;
  j["documents"] = json::array();
  for (const auto& d : corpus.documents) j["documents"].push_back(document_to_json(d));
  json regs = json::object();
  for (EntityKind k : kAllEntityKinds) regs[std::string(to_string(k))] = corpus.registry(k).entries();
  j["registries"] = regs;
  j["citation_links"] = json::array();
  for (const auto& link : corpus.citation_links) {
    json target = link.external ? json(corpus.target_label(link)) : json(link.target);
    j["citation_links"].push_back(json::array({link.citing, target}));
  }
  j["provenance"] = corpus.provenance;
  return j;
}

Corpus corpus_from_json(const json& j) {
  try {
    Corpus corpus;
    if (!j.is_object() || !j.at("documents").is_array()) throw DataError("corpus JSON: 'documents' must be an array");
    for (const auto& d : j.at("documents")) corpus.documents.push_back(document_from_json(d));
    if (const auto it = j.find("registries"); it != j.end()) {
      for (EntityKind k : kAllEntityKinds) {
        const auto r = it->find(std::string(to_string(k)));
        if (r == it->end()) continue;
        for (const auto& e : *r) corpus.registry(k).intern(e.get<std::string>());
      }
    }
    if (const auto it = j.find("citation_links"); it != j.end()) {
      const auto& refs = corpus.registry(EntityKind::reference);
      for (const auto& l : *it) {
        CitationLink link;
        link.citing = l.at(0).get<std::size_t>();
        const auto& t = l.at(1);
        if (t.is_string()) {
          const auto idx = refs.parse_label(t.get<std::string>());
          if (!idx) throw DataError("corpus JSON: unknown reference label " + t.get<std::string>());
          link.external = true;
          link.target = *idx;
        } else {
          link.target = t.get<std::size_t>();
        }
        corpus.citation_links.push_back(link);
      }
    }
    corpus.provenance = get_or<std::vector<std::size_t>>(j, "provenance", {});
    return corpus;
  } catch (const json::exception& e) {
    throw DataError(std::string("corpus JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

Corpus load_corpus(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return corpus_from_json(j);
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  write_file(path, corpus_to_json(corpus).dump(1) + "\n");
}

}  // namespace bibx
