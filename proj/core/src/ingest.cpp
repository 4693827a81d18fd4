#include "bibx/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>

#include "bibx/error.hpp"
#include "bibx/strings.hpp"

namespace bibx::ingest {

std::string_view to_string(SourceDb db) {
  switch (db) {
    case SourceDb::scopus: return "scopus";
    case SourceDb::wos: return "wos";
    case SourceDb::pubmed: return "pubmed";
  }
  return "scopus";
}

std::optional<SourceDb> source_db_from_string(std::string_view s) {
  for (SourceDb db : {SourceDb::scopus, SourceDb::wos, SourceDb::pubmed}) {
    if (str::iequals(s, to_string(db))) return db;
  }
  return std::nullopt;
}

Origin to_origin(SourceDb db) {
  switch (db) {
    case SourceDb::scopus: return Origin::scopus;
    case SourceDb::wos: return Origin::wos;
    case SourceDb::pubmed: return Origin::pubmed;
  }
  return Origin::scopus;
}

void RawRecord::add(std::string_view tag, std::string value) {
  const std::string key = str::to_upper(tag);
  for (auto& [t, vals] : fields) {
    if (t == key) {
      vals.push_back(std::move(value));
      return;
    }
  }
  fields.emplace_back(key, std::vector<std::string>{std::move(value)});
}

const std::vector<std::string>* RawRecord::values(std::string_view tag) const {
  for (const auto& [t, vals] : fields) {
    if (str::iequals(t, tag)) return &vals;
  }
  return nullptr;
}

std::string RawRecord::first(std::string_view tag) const {
  const auto* v = values(tag);
  return (v && !v->empty()) ? v->front() : std::string();
}

// ---------------------------------------------------------------------------
// BibTeX

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_ident(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '-' || c == ':' || c == '.' || c == '+' || c == '/' ||
         u >= 0x80;
}

class BibParser {
 public:
  BibParser(std::string_view text, SourceDb dialect) : s_(text), dialect_(dialect) {}

  std::vector<RawRecord> run() {
    std::vector<RawRecord> out;
    while (true) {
      const std::size_t at = s_.find('@', pos_);
      if (at == std::string_view::npos) break;
      pos_ = at + 1;
      const std::string type = read_ident();
      if (type.empty()) continue;  // stray '@' in free text
      skip_ws();
      if (pos_ >= s_.size() || (s_[pos_] != '{' && s_[pos_] != '(')) {
        if (str::iequals(type, "comment")) continue;
        throw ParseError(pos_, "expected '{' or '(' after @" + type);
      }
      const char open = s_[pos_];
      const char close = open == '{' ? '}' : ')';
      const std::string lower = str::to_lower(type);
      if (lower == "comment" || lower == "preamble") {
        skip_balanced(open, close);
        continue;
      }
      ++pos_;
      if (lower == "string") {
        parse_string_macro(close);
        continue;
      }
      RawRecord rec;
      rec.source_db = dialect_;
      rec.byte_span.start = at;
      rec.add("ENTRYTYPE", str::to_upper(type));
      parse_entry_body(rec, close);
      rec.byte_span.end = pos_;
      out.push_back(std::move(rec));
    }
    return out;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && is_ws(s_[pos_])) ++pos_;
  }

  std::string read_ident() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && is_ident(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  void skip_balanced(char open, char close) {
    const std::size_t start = pos_;
    int depth = 0;
    for (; pos_ < s_.size(); ++pos_) {
      if (s_[pos_] == open) ++depth;
      if (s_[pos_] == close && --depth == 0) {
        ++pos_;
        return;
      }
    }
    throw ParseError(start, "unbalanced braces");
  }

  // Body of a {...} value; pos_ is on the opening brace.
  std::string read_braced() {
    const std::size_t start = pos_;
    int depth = 0;
    for (std::size_t i = pos_; i < s_.size(); ++i) {
      if (s_[i] == '\\' && i + 1 < s_.size()) {
        ++i;
        continue;
      }
      if (s_[i] == '{') ++depth;
      if (s_[i] == '}' && --depth == 0) {
        pos_ = i + 1;
        return std::string(s_.substr(start + 1, i - start - 1));
      }
    }
    throw ParseError(start, "unbalanced braces");
  }

  std::string read_quoted() {
    const std::size_t start = pos_;
    int depth = 0;
    for (std::size_t i = pos_ + 1; i < s_.size(); ++i) {
      const char c = s_[i];
      if (c == '\\' && i + 1 < s_.size()) {
        ++i;
        continue;
      }
      if (c == '{') ++depth;
      if (c == '}') {
        if (depth == 0) throw ParseError(i, "unbalanced braces");
        --depth;
      }
      if (c == '"' && depth == 0) {
        pos_ = i + 1;
        return std::string(s_.substr(start + 1, i - start - 1));
      }
    }
    throw ParseError(start, depth > 0 ? "unbalanced braces" : "unterminated quoted value");
  }

  std::string read_value(char close) {
    std::string value;
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input in field value");
      const char c = s_[pos_];
      if (c == '{') {
        value += read_braced();
      } else if (c == '"') {
        value += read_quoted();
      } else {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && !is_ws(s_[pos_]) && s_[pos_] != ',' && s_[pos_] != close &&
               s_[pos_] != '#' && s_[pos_] != '{' && s_[pos_] != '"')
          ++pos_;
        if (pos_ == start) throw ParseError(pos_, "expected field value");
        const std::string bare(s_.substr(start, pos_ - start));
        const auto m = macros_.find(str::to_lower(bare));
        value += m != macros_.end() ? m->second : bare;
      }
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '#') {
        ++pos_;
        continue;
      }
      return value;
    }
  }

  void parse_string_macro(char close) {
    skip_ws();
    const std::string name = read_ident();
    skip_ws();
    if (name.empty() || pos_ >= s_.size() || s_[pos_] != '=')
      throw ParseError(pos_, "malformed @string definition");
    ++pos_;
    std::string value = read_value(close);
    if (pos_ >= s_.size() || s_[pos_] != close) throw ParseError(pos_, "expected end of @string");
    ++pos_;
    macros_[str::to_lower(name)] = std::move(value);
  }

  void parse_entry_body(RawRecord& rec, char close) {
    skip_ws();
    const std::size_t key_start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != close && s_[pos_] != '\n') ++pos_;
    if (pos_ >= s_.size()) throw ParseError(key_start, "unbalanced braces: entry is never closed");
    rec.add("ID", str::trim(s_.substr(key_start, pos_ - key_start)));
    skip_ws();
    while (true) {
      skip_ws();
      if (pos_ >= s_.size()) throw ParseError(rec.byte_span.start, "unbalanced braces: entry is never closed");
      if (s_[pos_] == close) {
        ++pos_;
        return;
      }
      if (s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      const std::size_t name_start = pos_;
      while (pos_ < s_.size() && !is_ws(s_[pos_]) && s_[pos_] != '=' && s_[pos_] != ',' &&
             s_[pos_] != close && s_[pos_] != '{' && s_[pos_] != '}')
        ++pos_;
      const std::string name(s_.substr(name_start, pos_ - name_start));
      skip_ws();
      if (name.empty() || pos_ >= s_.size() || s_[pos_] != '=')
        throw ParseError(pos_ < s_.size() ? pos_ : name_start, "expected '=' after field name");
      ++pos_;
      std::string value = read_value(close);
      rec.add(name, std::move(value));
      skip_ws();
      if (pos_ >= s_.size()) throw ParseError(rec.byte_span.start, "unbalanced braces: entry is never closed");
      if (s_[pos_] != ',' && s_[pos_] != close)
        throw ParseError(pos_, "expected ',' or end of entry after field " + name);
    }
  }

  std::string_view s_;
  SourceDb dialect_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string> macros_{
      {"jan", "January"}, {"feb", "February"}, {"mar", "March"},     {"apr", "April"},
      {"may", "May"},     {"jun", "June"},     {"jul", "July"},      {"aug", "August"},
      {"sep", "September"}, {"oct", "October"}, {"nov", "November"}, {"dec", "December"}};
};

}  // namespace

std::vector<RawRecord> parse_bibtex(std::string_view bytes, SourceDb dialect) {
  if (dialect == SourceDb::pubmed) throw UsageError("parse_bibtex: dialect must be scopus or wos");
  return BibParser(bytes, dialect).run();
}

std::string emit_bibtex(const std::vector<RawRecord>& records) {
  std::string out;
  for (const auto& rec : records) {
    std::string type = rec.first("ENTRYTYPE");
    if (type.empty()) type = "MISC";
    out += "@" + type + "{" + rec.first("ID") + ",\n";
    for (const auto& [tag, vals] : rec.fields) {
      if (tag == "ENTRYTYPE" || tag == "ID") continue;
      for (const auto& v : vals) out += "  " + tag + " = {" + v + "},\n";
    }
    out += "}\n\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// MEDLINE

std::vector<RawRecord> parse_pubmed(std::string_view bytes) {
  std::vector<RawRecord> out;
  std::optional<RawRecord> current;
  std::size_t current_line = 0;
  std::string* last_value = nullptr;
  std::string last_tag;

  auto finish = [&] {
    if (!current) return;
    if (!current->has("PMID") && !current->has("TI"))
      throw ParseError(current_line, "record has neither PMID nor TI", "line");
    out.push_back(std::move(*current));
    current.reset();
    last_value = nullptr;
  };

  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < bytes.size()) {
    std::size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos) end = bytes.size();
    std::string_view line = bytes.substr(pos, end - pos);
    const std::size_t line_start = pos;
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (str::trim(line).empty()) {
      finish();
      continue;
    }
    if (line.size() > 6 && line.substr(0, 6) == "      ") {
      if (!last_value) throw ParseError(line_no, "continuation line without a preceding tag", "line");
      const std::string cont = str::trim(line);
      if (!cont.empty()) {
        if (!last_value->empty()) last_value->push_back(' ');
        *last_value += cont;
      }
      current->byte_span.end = pos > bytes.size() ? bytes.size() : pos;
      continue;
    }
    // "TAG - value" with the tag left-justified in four columns.
    bool ok = line.size() >= 5 && line[4] == '-' && (line.size() == 5 || line[5] == ' ');
    std::string tag;
    if (ok) {
      tag = str::trim(line.substr(0, 4));
      ok = !tag.empty() && std::all_of(tag.begin(), tag.end(), [](char c) {
             return std::isupper(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c));
           });
      for (std::size_t i = tag.size(); ok && i < 4; ++i) ok = line[i] == ' ';
    }
    if (!ok) throw ParseError(line_no, "expected 'TAG - value' or a continuation line", "line");
    if (!current) {
      current.emplace();
      current->source_db = SourceDb::pubmed;
      current->byte_span.start = line_start;
      current_line = line_no;
    }
    current->add(tag, line.size() > 6 ? str::trim(line.substr(6)) : std::string());
    auto* vals = const_cast<std::vector<std::string>*>(current->values(tag));
    last_value = &vals->back();
    current->byte_span.end = pos > bytes.size() ? bytes.size() : pos;
  }
  finish();
  return out;
}

std::string emit_pubmed(const std::vector<RawRecord>& records) {
  std::string out;
  for (const auto& rec : records) {
    // Preserve per-tag order by interleaving nothing: tags are emitted grouped.
    for (const auto& [tag, vals] : rec.fields) {
      std::string padded = tag;
      padded.resize(std::max<std::size_t>(4, tag.size()), ' ');
      for (const auto& v : vals) out += padded + "- " + v + "\n";
    }
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Field mapping

const DialectMap& FieldMap::operator[](SourceDb db) const {
  switch (db) {
    case SourceDb::scopus: return scopus;
    case SourceDb::wos: return wos;
    case SourceDb::pubmed: return pubmed;
  }
  return scopus;
}

DialectMap& FieldMap::operator[](SourceDb db) {
  return const_cast<DialectMap&>(std::as_const(*this)[db]);
}

FieldMap FieldMap::defaults() {
  FieldMap m;
  m.scopus.title = {"TITLE"};
  m.scopus.abstract_text = {"ABSTRACT"};
  m.scopus.authors = {"AUTHOR"};
  m.scopus.affiliations = {"AFFILIATIONS", "AFFILIATION"};
  m.scopus.author_keywords = {"AUTHOR_KEYWORDS", "KEYWORDS"};
  m.scopus.keywords_plus = {"KEYWORDS-PLUS"};
  m.scopus.source = {"JOURNAL", "BOOKTITLE"};
  m.scopus.doc_type = {"DOCUMENT_TYPE", "TYPE"};
  m.scopus.language = {"LANGUAGE"};
  m.scopus.year = {"YEAR"};
  m.scopus.references = {"REFERENCES"};
  m.scopus.times_cited = {"NOTE"};
  m.scopus.doi = {"DOI"};
  m.scopus.reference_delims = {";"};
  m.scopus.affiliation_delims = {";"};

  m.wos.title = {"TITLE"};
  m.wos.abstract_text = {"ABSTRACT"};
  m.wos.authors = {"AUTHOR"};
  m.wos.affiliations = {"AFFILIATION", "AFFILIATIONS"};
  m.wos.author_keywords = {"KEYWORDS"};
  m.wos.keywords_plus = {"KEYWORDS-PLUS"};
  m.wos.source = {"JOURNAL", "BOOKTITLE"};
  m.wos.doc_type = {"TYPE"};
  m.wos.language = {"LANGUAGE"};
  m.wos.year = {"YEAR"};
  m.wos.references = {"CITED-REFERENCES"};
  m.wos.times_cited = {"TIMES-CITED"};
  m.wos.doi = {"DOI"};
  m.wos.reference_delims = {";", "\n"};
  m.wos.affiliation_delims = {"\n"};

  m.pubmed.title = {"TI"};
  m.pubmed.abstract_text = {"AB"};
  m.pubmed.authors = {"FAU", "AU"};
  m.pubmed.affiliations = {"AD"};
  m.pubmed.author_keywords = {"OT"};
  m.pubmed.keywords_plus = {"MH"};
  m.pubmed.source = {"JT", "TA"};
  m.pubmed.doc_type = {"PT"};
  m.pubmed.language = {"LA"};
  m.pubmed.year = {"DP"};
  m.pubmed.doi = {"LID", "AID"};
  m.pubmed.affiliation_delims = {";"};
  return m;
}

namespace {

void dialect_from_json(DialectMap& d, const nlohmann::json& j) {
  auto load = [&](const char* key, std::vector<std::string>& dst) {
    if (const auto it = j.find(key); it != j.end()) dst = it->get<std::vector<std::string>>();
  };
  load("title", d.title);
  load("abstract", d.abstract_text);
  load("authors", d.authors);
  load("affiliations", d.affiliations);
  load("author_keywords", d.author_keywords);
  load("keywords_plus", d.keywords_plus);
  load("source", d.source);
  load("doc_type", d.doc_type);
  load("language", d.language);
  load("year", d.year);
  load("references", d.references);
  load("times_cited", d.times_cited);
  load("doi", d.doi);
  load("reference_delims", d.reference_delims);
  load("affiliation_delims", d.affiliation_delims);
  if (const auto it = j.find("keyword_delim"); it != j.end()) d.keyword_delim = it->get<std::string>();
  if (const auto it = j.find("author_delim"); it != j.end()) d.author_delim = it->get<std::string>();
}

nlohmann::json dialect_to_json(const DialectMap& d) {
  return {{"title", d.title},
          {"abstract", d.abstract_text},
          {"authors", d.authors},
          {"affiliations", d.affiliations},
          {"author_keywords", d.author_keywords},
          {"keywords_plus", d.keywords_plus},
          {"source", d.source},
          {"doc_type", d.doc_type},
          {"language", d.language},
          {"year", d.year},
          {"references", d.references},
          {"times_cited", d.times_cited},
          {"doi", d.doi},
          {"reference_delims", d.reference_delims},
          {"affiliation_delims", d.affiliation_delims},
          {"keyword_delim", d.keyword_delim},
          {"author_delim", d.author_delim}};
}

}  // namespace

FieldMap FieldMap::from_json(const nlohmann::json& j) {
  FieldMap m = defaults();
  try {
    for (SourceDb db : {SourceDb::scopus, SourceDb::wos, SourceDb::pubmed}) {
      if (const auto it = j.find(std::string(to_string(db))); it != j.end()) dialect_from_json(m[db], *it);
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("field map: ") + e.what());
  }
  return m;
}

nlohmann::json FieldMap::to_json() const {
  return {{"scopus", dialect_to_json(scopus)}, {"wos", dialect_to_json(wos)}, {"pubmed", dialect_to_json(pubmed)}};
}

// ---------------------------------------------------------------------------
// normalize

std::optional<int> parse_year(std::string_view text) {
  const std::string t = str::trim(text);
  std::size_t i = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
  if (i != 4) return std::nullopt;
  const int y = std::stoi(t.substr(0, 4));
  if (y < 1000 || y > 3000) return std::nullopt;
  return y;
}

std::optional<std::int64_t> parse_times_cited(std::string_view text) {
  static const std::regex cited_by(R"(cited\s+by\s*:?\s*(\d+))", std::regex::icase);
  const std::string t(text);
  std::smatch m;
  if (std::regex_search(t, m, cited_by)) return std::stoll(m[1].str());
  const std::string trimmed = str::trim(t);
  if (!trimmed.empty() && trimmed.size() < 18 &&
      std::all_of(trimmed.begin(), trimmed.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return std::stoll(trimmed);
  return std::nullopt;
}

namespace {

// Combining mark for a TeX accent command, or 0.
char32_t tex_accent(std::string_view cmd) {
  static const std::map<std::string_view, char32_t> marks{
      {"\"", 0x0308}, {"'", 0x0301}, {"`", 0x0300}, {"^", 0x0302}, {"~", 0x0303}, {"=", 0x0304},
      {".", 0x0307},  {"c", 0x0327}, {"v", 0x030C}, {"u", 0x0306}, {"H", 0x030B}, {"k", 0x0328}, {"r", 0x030A}};
  const auto it = marks.find(cmd);
  return it == marks.end() ? 0 : it->second;
}

struct Composed {
  char base;
  char32_t mark;
  char32_t letter;
};

// Precomposed Latin letters for the accents above.
constexpr Composed kComposed[] = {
    {'a', 0x0308, 0x00E4}, {'e', 0x0308, 0x00EB}, {'i', 0x0308, 0x00EF}, {'o', 0x0308, 0x00F6},
    {'u', 0x0308, 0x00FC}, {'y', 0x0308, 0x00FF}, {'A', 0x0308, 0x00C4}, {'E', 0x0308, 0x00CB},
    {'I', 0x0308, 0x00CF}, {'O', 0x0308, 0x00D6}, {'U', 0x0308, 0x00DC}, {'Y', 0x0308, 0x0178},
    {'a', 0x0301, 0x00E1}, {'c', 0x0301, 0x0107}, {'e', 0x0301, 0x00E9}, {'g', 0x0301, 0x01F5},
    {'i', 0x0301, 0x00ED}, {'l', 0x0301, 0x013A}, {'n', 0x0301, 0x0144}, {'o', 0x0301, 0x00F3},
    {'r', 0x0301, 0x0155}, {'s', 0x0301, 0x015B}, {'u', 0x0301, 0x00FA}, {'y', 0x0301, 0x00FD},
    {'z', 0x0301, 0x017A}, {'A', 0x0301, 0x00C1}, {'C', 0x0301, 0x0106}, {'E', 0x0301, 0x00C9},
    {'G', 0x0301, 0x01F4}, {'I', 0x0301, 0x00CD}, {'L', 0x0301, 0x0139}, {'N', 0x0301, 0x0143},
    {'O', 0x0301, 0x00D3}, {'R', 0x0301, 0x0154}, {'S', 0x0301, 0x015A}, {'U', 0x0301, 0x00DA},
    {'Y', 0x0301, 0x00DD}, {'Z', 0x0301, 0x0179}, {'a', 0x0300, 0x00E0}, {'e', 0x0300, 0x00E8},
    {'i', 0x0300, 0x00EC}, {'n', 0x0300, 0x01F9}, {'o', 0x0300, 0x00F2}, {'u', 0x0300, 0x00F9},
    {'A', 0x0300, 0x00C0}, {'E', 0x0300, 0x00C8}, {'I', 0x0300, 0x00CC}, {'N', 0x0300, 0x01F8},
    {'O', 0x0300, 0x00D2}, {'U', 0x0300, 0x00D9}, {'a', 0x0302, 0x00E2}, {'c', 0x0302, 0x0109},
    {'e', 0x0302, 0x00EA}, {'g', 0x0302, 0x011D}, {'h', 0x0302, 0x0125}, {'i', 0x0302, 0x00EE},
    {'j', 0x0302, 0x0135}, {'o', 0x0302, 0x00F4}, {'s', 0x0302, 0x015D}, {'u', 0x0302, 0x00FB},
    {'w', 0x0302, 0x0175}, {'y', 0x0302, 0x0177}, {'A', 0x0302, 0x00C2}, {'C', 0x0302, 0x0108},
    {'E', 0x0302, 0x00CA}, {'G', 0x0302, 0x011C}, {'H', 0x0302, 0x0124}, {'I', 0x0302, 0x00CE},
    {'J', 0x0302, 0x0134}, {'O', 0x0302, 0x00D4}, {'S', 0x0302, 0x015C}, {'U', 0x0302, 0x00DB},
    {'W', 0x0302, 0x0174}, {'Y', 0x0302, 0x0176}, {'a', 0x0303, 0x00E3}, {'i', 0x0303, 0x0129},
    {'n', 0x0303, 0x00F1}, {'o', 0x0303, 0x00F5}, {'u', 0x0303, 0x0169}, {'A', 0x0303, 0x00C3},
    {'I', 0x0303, 0x0128}, {'N', 0x0303, 0x00D1}, {'O', 0x0303, 0x00D5}, {'U', 0x0303, 0x0168},
    {'a', 0x0304, 0x0101}, {'e', 0x0304, 0x0113}, {'i', 0x0304, 0x012B}, {'o', 0x0304, 0x014D},
    {'u', 0x0304, 0x016B}, {'y', 0x0304, 0x0233}, {'A', 0x0304, 0x0100}, {'E', 0x0304, 0x0112},
    {'I', 0x0304, 0x012A}, {'O', 0x0304, 0x014C}, {'U', 0x0304, 0x016A}, {'Y', 0x0304, 0x0232},
    {'a', 0x0307, 0x0227}, {'c', 0x0307, 0x010B}, {'e', 0x0307, 0x0117}, {'g', 0x0307, 0x0121},
    {'o', 0x0307, 0x022F}, {'z', 0x0307, 0x017C}, {'A', 0x0307, 0x0226}, {'C', 0x0307, 0x010A},
    {'E', 0x0307, 0x0116}, {'G', 0x0307, 0x0120}, {'I', 0x0307, 0x0130}, {'O', 0x0307, 0x022E},
    {'Z', 0x0307, 0x017B}, {'c', 0x0327, 0x00E7}, {'e', 0x0327, 0x0229}, {'g', 0x0327, 0x0123},
    {'k', 0x0327, 0x0137}, {'l', 0x0327, 0x013C}, {'n', 0x0327, 0x0146}, {'r', 0x0327, 0x0157},
    {'s', 0x0327, 0x015F}, {'t', 0x0327, 0x0163}, {'C', 0x0327, 0x00C7}, {'E', 0x0327, 0x0228},
    {'G', 0x0327, 0x0122}, {'K', 0x0327, 0x0136}, {'L', 0x0327, 0x013B}, {'N', 0x0327, 0x0145},
    {'R', 0x0327, 0x0156}, {'S', 0x0327, 0x015E}, {'T', 0x0327, 0x0162}, {'a', 0x030C, 0x01CE},
    {'c', 0x030C, 0x010D}, {'d', 0x030C, 0x010F}, {'e', 0x030C, 0x011B}, {'g', 0x030C, 0x01E7},
    {'h', 0x030C, 0x021F}, {'i', 0x030C, 0x01D0}, {'j', 0x030C, 0x01F0}, {'k', 0x030C, 0x01E9},
    {'l', 0x030C, 0x013E}, {'n', 0x030C, 0x0148}, {'o', 0x030C, 0x01D2}, {'r', 0x030C, 0x0159},
    {'s', 0x030C, 0x0161}, {'t', 0x030C, 0x0165}, {'u', 0x030C, 0x01D4}, {'z', 0x030C, 0x017E},
    {'A', 0x030C, 0x01CD}, {'C', 0x030C, 0x010C}, {'D', 0x030C, 0x010E}, {'E', 0x030C, 0x011A},
    {'G', 0x030C, 0x01E6}, {'H', 0x030C, 0x021E}, {'I', 0x030C, 0x01CF}, {'K', 0x030C, 0x01E8},
    {'L', 0x030C, 0x013D}, {'N', 0x030C, 0x0147}, {'O', 0x030C, 0x01D1}, {'R', 0x030C, 0x0158},
    {'S', 0x030C, 0x0160}, {'T', 0x030C, 0x0164}, {'U', 0x030C, 0x01D3}, {'Z', 0x030C, 0x017D},
    {'a', 0x0306, 0x0103}, {'e', 0x0306, 0x0115}, {'g', 0x0306, 0x011F}, {'i', 0x0306, 0x012D},
    {'o', 0x0306, 0x014F}, {'u', 0x0306, 0x016D}, {'A', 0x0306, 0x0102}, {'E', 0x0306, 0x0114},
    {'G', 0x0306, 0x011E}, {'I', 0x0306, 0x012C}, {'O', 0x0306, 0x014E}, {'U', 0x0306, 0x016C},
    {'o', 0x030B, 0x0151}, {'u', 0x030B, 0x0171}, {'O', 0x030B, 0x0150}, {'U', 0x030B, 0x0170},
    {'a', 0x0328, 0x0105}, {'e', 0x0328, 0x0119}, {'i', 0x0328, 0x012F}, {'o', 0x0328, 0x01EB},
    {'u', 0x0328, 0x0173}, {'A', 0x0328, 0x0104}, {'E', 0x0328, 0x0118}, {'I', 0x0328, 0x012E},
    {'O', 0x0328, 0x01EA}, {'U', 0x0328, 0x0172}, {'a', 0x030A, 0x00E5}, {'u', 0x030A, 0x016F},
    {'A', 0x030A, 0x00C5}, {'U', 0x030A, 0x016E}};

void append_accented(std::string& out, char base, char32_t mark) {
  for (const Composed& c : kComposed) {
    if (c.base == base && c.mark == mark) {
      str::append_utf8(out, c.letter);
      return;
    }
  }
  out.push_back(base);
  str::append_utf8(out, mark);
}

const char* tex_letter(std::string_view cmd) {
  static const std::map<std::string_view, const char*> letters{
      {"ss", "\u00df"}, {"o", "\u00f8"}, {"O", "\u00d8"}, {"ae", "\u00e6"}, {"AE", "\u00c6"}, {"aa", "\u00e5"},
      {"AA", "\u00c5"}, {"l", "\u0142"}, {"L", "\u0141"}, {"i", "\u0131"}, {"oe", "\u0153"}, {"OE", "\u0152"}};
  const auto it = letters.find(cmd);
  return it == letters.end() ? nullptr : it->second;
}

}  // namespace

std::string clean_tex(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  auto is_letter = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; };
  for (std::size_t i = 0; i < value.size(); ++i) {
    const char c = value[i];
    if (c == '{' || c == '}') continue;
    if (c != '\\' || i + 1 >= value.size()) {
      out.push_back(c);
      continue;
    }
    const char next = value[i + 1];
    if (std::string_view("&%_$#{}").find(next) != std::string_view::npos) {
      out.push_back(next);
      ++i;
      continue;
    }
    // Command name: one symbol or a run of letters.
    std::size_t j = i + 1;
    if (is_letter(next)) {
      while (j < value.size() && is_letter(value[j])) ++j;
    } else {
      ++j;
    }
    const std::string_view cmd = value.substr(i + 1, j - i - 1);
    if (const char32_t mark = tex_accent(cmd)) {
      // Accented letter: "\"u", "\"{u}", "\c c" or "\c{c}".
      std::size_t k = j;
      while (k < value.size() && value[k] == ' ' && is_letter(cmd[0])) ++k;
      bool braced = k < value.size() && value[k] == '{';
      if (braced) ++k;
      if (k < value.size() && (is_letter(value[k]) || value[k] == '\\')) {
        std::size_t end = k + 1;
        if (value[k] == '\\') {  // \"{\i}
          while (end < value.size() && is_letter(value[end])) ++end;
          const char* letter = tex_letter(value.substr(k + 1, end - k - 1));
          out += letter ? letter : "";
          str::append_utf8(out, mark);
        } else {
          append_accented(out, value[k], mark);
        }
        if (braced && end < value.size() && value[end] == '}') ++end;
        i = end - 1;
        continue;
      }
      i = j - 1;
      continue;
    }
    if (const char* letter = tex_letter(cmd)) {
      out += letter;
      if (j < value.size() && value[j] == ' ' && is_letter(cmd[0])) ++j;
      i = j - 1;
      continue;
    }
    if (is_letter(next)) {
      // Formatting command such as \textit: keep its argument.
      i = j - 1;
      continue;
    }
    out.push_back(next);
    ++i;
  }
  return str::collapse_ws(out);
}

namespace {

const std::string* first_present(const RawRecord& rec, const std::vector<std::string>& tags) {
  for (const auto& t : tags) {
    const auto* v = rec.values(t);
    if (v && !v->empty()) return &v->front();
  }
  return nullptr;
}

const std::vector<std::string>* all_present(const RawRecord& rec, const std::vector<std::string>& tags) {
  for (const auto& t : tags) {
    const auto* v = rec.values(t);
    if (v && !v->empty()) return v;
  }
  return nullptr;
}

std::vector<std::string> split_any(std::string_view s, const std::vector<std::string>& delims) {
  std::vector<std::string> pieces{std::string(s)};
  for (const auto& d : delims) {
    std::vector<std::string> next;
    for (const auto& p : pieces) {
      auto parts = str::split_top_level(p, d);
      next.insert(next.end(), parts.begin(), parts.end());
    }
    pieces = std::move(next);
  }
  return pieces;
}

const std::map<std::string, std::string>& language_codes() {
  static const std::map<std::string, std::string> codes{
      {"eng", "English"},    {"fre", "French"},   {"fra", "French"},  {"ger", "German"},
      {"deu", "German"},     {"spa", "Spanish"},  {"por", "Portuguese"}, {"ita", "Italian"},
      {"chi", "Chinese"},    {"zho", "Chinese"},  {"jpn", "Japanese"}, {"rus", "Russian"},
      {"kor", "Korean"},     {"dut", "Dutch"},    {"nld", "Dutch"},   {"pol", "Polish"},
      {"tur", "Turkish"},    {"per", "Persian"},  {"fas", "Persian"}, {"cze", "Czech"}};
  return codes;
}

std::string normalize_language(std::string_view raw) {
  const std::string t = clean_tex(raw);
  const auto it = language_codes().find(str::to_lower(t));
  if (it != language_codes().end()) return it->second;
  if (t.empty()) return t;
  std::string out = str::to_lower(t);
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::string doc_type_from_entrytype(std::string_view entrytype) {
  const std::string e = str::to_lower(entrytype);
  if (e == "article") return "Article";
  if (e == "inproceedings" || e == "conference") return "Conference Paper";
  if (e == "book") return "Book";
  if (e == "inbook" || e == "incollection") return "Book Chapter";
  return e.empty() ? std::string() : str::to_upper(e.substr(0, 1)) + e.substr(1);
}

std::string pubmed_doc_type(const std::vector<std::string>& types) {
  for (const auto& t : types) {
    if (str::iequals(t, "Review") || str::iequals(t, "Systematic Review")) return "Review";
  }
  for (const auto& t : types) {
    if (str::iequals(t, "Journal Article")) return "Article";
  }
  return types.empty() ? std::string() : types.front();
}

// "Decision Making/*methods" -> "Decision Making"
std::string mesh_heading(std::string_view mh) {
  std::string s(mh.substr(0, mh.find('/')));
  s.erase(std::remove(s.begin(), s.end(), '*'), s.end());
  return str::trim(s);
}

bool looks_like_institution(std::string_view token) {
  static constexpr std::string_view kMarkers[] = {
      "univ",    "institut", "college",  "hospital", "school",     "academ",     "centre", "center",
      "laborat", "lab ",     "company",  "corp",     " inc",       "ltd",        "gmbh",   "foundation",
      "ministry", "council", "agency",   "polytech", "politecnic", "hochschule", "ecole",  "faculdade",
      "clinic",  "bank",     "organi"};
  const std::string lower = str::to_lower(token);
  for (auto m : kMarkers) {
    if (lower.find(m) != std::string::npos) return true;
  }
  return false;
}

bool looks_like_author_prefix(const std::vector<std::string>& tokens) {
  // WoS: "Chen, TY, Chang Gung Univ, ..."
  if (tokens.size() < 3) return false;
  const auto& initials = tokens[1];
  return !initials.empty() && initials.size() <= 4 &&
         std::all_of(initials.begin(), initials.end(),
                     [](char c) { return std::isupper(static_cast<unsigned char>(c)) || c == '-' || c == '.'; }) &&
         tokens[0].find(' ') == std::string::npos && !looks_like_institution(tokens[0]);
}

Affiliation parse_affiliation(std::string_view raw, SourceDb db, const geo::CountryTable& countries) {
  std::string text = clean_tex(raw);
  if (const auto e = str::to_lower(text).find("electronic address"); e != std::string::npos) text = text.substr(0, e);
  if (const auto c = text.find("(Corresponding Author),"); c != std::string::npos)
    text = text.substr(c + std::string_view("(Corresponding Author),").size());
  text = str::trim(text);
  while (!text.empty() && (text.back() == '.' || text.back() == ';' || text.back() == ',')) text.pop_back();

  std::vector<std::string> tokens = str::split_top_level(text, ",");
  if (db == SourceDb::wos && looks_like_author_prefix(tokens)) tokens.erase(tokens.begin(), tokens.begin() + 2);

  Affiliation aff;
  const std::string rejoined = str::join(tokens, ", ");
  if (const auto* c = countries.from_affiliation(rejoined)) {
    aff.country = c->name;
    if (tokens.size() > 1) tokens.pop_back();
  }
  const auto inst = std::find_if(tokens.begin(), tokens.end(), [](const std::string& t) { return looks_like_institution(t); });
  if (inst != tokens.end()) {
    aff.institution = *inst;
  } else if (!tokens.empty()) {
    aff.institution = tokens.front();
  }
  return aff;
}

std::string extract_doi(const RawRecord& rec, const DialectMap& map, SourceDb db) {
  for (const auto& tag : map.doi) {
    const auto* vals = rec.values(tag);
    if (!vals) continue;
    for (const auto& v : *vals) {
      if (db == SourceDb::pubmed) {
        if (v.find("[doi]") == std::string::npos) continue;
        return str::trim(v.substr(0, v.find("[doi]")));
      }
      const std::string d = clean_tex(v);
      if (!d.empty()) return d;
    }
  }
  return {};
}

}  // namespace

std::optional<Document> normalize(const RawRecord& record, std::vector<Warning>& warnings, const FieldMap& fmap,
                                  const geo::CountryTable& countries) {
  const SourceDb db = record.source_db;
  const DialectMap& map = fmap[db];
  const std::size_t where = record.byte_span.start;

  Document doc;
  doc.origin = to_origin(db);
  if (const auto* t = first_present(record, map.title)) doc.title = clean_tex(*t);
  if (doc.title.empty()) {
    std::string id = record.first(db == SourceDb::pubmed ? "PMID" : "ID");
    warnings.push_back({where, "record " + (id.empty() ? std::string("?") : id) + " has no title; dropped"});
    return std::nullopt;
  }
  if (const auto* vals = all_present(record, map.abstract_text)) {
    doc.abstract_text = clean_tex(str::join(*vals, " "));
  }

  if (const auto* vals = all_present(record, map.authors)) {
    if (db == SourceDb::pubmed) {
      for (const auto& a : *vals) doc.authors.push_back(clean_tex(a));
    } else {
      for (const auto& v : *vals) {
        for (auto& a : str::split_top_level(v, map.author_delim)) doc.authors.push_back(clean_tex(a));
      }
    }
  }

  if (const auto* vals = all_present(record, map.affiliations)) {
    for (const auto& v : *vals) {
      for (const auto& piece : split_any(v, map.affiliation_delims)) {
        Affiliation aff = parse_affiliation(piece, db, countries);
        if (!aff.institution.empty() || !aff.country.empty()) doc.affiliations.push_back(std::move(aff));
      }
    }
  }

  auto keyword_list = [&](const std::vector<std::string>& tags, bool mesh) {
    std::vector<std::string> out;
    if (const auto* vals = all_present(record, tags)) {
      for (const auto& v : *vals) {
        if (db == SourceDb::pubmed) {
          out.push_back(mesh ? mesh_heading(v) : clean_tex(v));
        } else {
          for (auto& k : str::split_top_level(v, map.keyword_delim)) out.push_back(clean_tex(k));
        }
      }
    }
    return out;
  };
  doc.author_keywords = keyword_list(map.author_keywords, false);
  doc.keywords_plus = keyword_list(map.keywords_plus, true);

  if (const auto* s = first_present(record, map.source)) doc.source = clean_tex(*s);

  if (db == SourceDb::pubmed) {
    if (const auto* vals = all_present(record, map.doc_type)) doc.doc_type = pubmed_doc_type(*vals);
  } else if (const auto* t = first_present(record, map.doc_type)) {
    doc.doc_type = clean_tex(*t);
  } else {
    doc.doc_type = doc_type_from_entrytype(record.first("ENTRYTYPE"));
  }

  if (const auto* l = first_present(record, map.language)) doc.language = normalize_language(*l);

  if (const auto* y = first_present(record, map.year)) {
    doc.year = parse_year(clean_tex(*y));
    if (!doc.year) warnings.push_back({where, "unparseable year \"" + clean_tex(*y) + "\""});
  }

  if (db != SourceDb::pubmed) {
    if (const auto* r = first_present(record, map.references)) {
      std::vector<std::string> refs;
      for (auto& piece : split_any(*r, map.reference_delims)) {
        std::string ref = clean_tex(piece);
        if (!ref.empty()) refs.push_back(std::move(ref));
      }
      doc.references = std::move(refs);
    } else {
      doc.references = std::vector<std::string>{};
    }
    if (const auto* c = first_present(record, map.times_cited)) {
      doc.times_cited = parse_times_cited(*c);
    }
    if (!doc.times_cited && db == SourceDb::scopus) doc.times_cited = 0;
  }

  doc.doi = extract_doi(record, map, db);
  return doc;
}

IngestResult ingest(std::string_view bytes, SourceDb db, const FieldMap& map, const geo::CountryTable& countries) {
  auto records = db == SourceDb::pubmed ? parse_pubmed(bytes) : parse_bibtex(bytes, db);
  // Parse offsets refer to the raw bytes; values are repaired afterwards.
  for (auto& rec : records) {
    for (auto& [tag, vals] : rec.fields) {
      for (auto& v : vals) v = str::to_valid_utf8(v);
    }
  }
  IngestResult result;
  result.records = records.size();
  for (const auto& rec : records) {
    if (auto doc = normalize(rec, result.warnings, map, countries)) {
      result.documents.push_back(std::move(*doc));
    } else {
      ++result.dropped;
    }
  }
  return result;
}

}  // namespace bibx::ingest
