#include "bibx/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_set>

#include "bibx/error.hpp"
#include "bibx/strings.hpp"

namespace bibx {
namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool has_lower(std::string_view s) { return std::any_of(s.begin(), s.end(), is_lower); }

// "VAN DER BERG" -> "Van Der Berg", "O'BRIEN" -> "O'Brien".
std::string title_case(std::string_view s) {
  std::string out(s);
  bool start = true;
  for (char& c : out) {
    if (is_alpha(c)) {
      c = static_cast<char>(start ? std::toupper(static_cast<unsigned char>(c))
                                  : std::tolower(static_cast<unsigned char>(c)));
      start = false;
    } else {
      start = (c == ' ' || c == '-' || c == '\'');
    }
  }
  return out;
}

// Packed initials: "TY" in "Chen TY". Only trusted in mixed-case input.
bool packed_initials(std::string_view token, bool mixed_case_name) {
  return mixed_case_name && !token.empty() && token.size() <= 3 &&
         std::all_of(token.begin(), token.end(), is_upper);
}

std::string initials(std::string_view given, bool mixed_case_name) {
  std::string out;
  std::size_t i = 0;
  while (i < given.size()) {
    while (i < given.size() && given[i] == ' ') ++i;
    const std::size_t word_start = i;
    while (i < given.size() && given[i] != ' ') ++i;
    const std::string_view word = given.substr(word_start, i - word_start);
    bool pending_hyphen = false;
    std::size_t j = 0;
    while (j < word.size()) {
      const std::size_t piece_start = j;
      while (j < word.size() && word[j] != '.' && word[j] != '-') ++j;
      const std::string_view piece = word.substr(piece_start, j - piece_start);
      if (!piece.empty()) {
        if (pending_hyphen && !out.empty()) out.push_back('-');
        pending_hyphen = false;
        if (packed_initials(piece, mixed_case_name)) {
          for (char c : piece) {
            out.push_back(c);
            out.push_back('.');
          }
        } else {
          const auto first = std::find_if(piece.begin(), piece.end(), is_alpha);
          if (first != piece.end()) {
            out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(*first))));
            out.push_back('.');
          }
        }
      }
      if (j < word.size() && word[j] == '-') pending_hyphen = true;
      if (j < word.size()) ++j;
    }
  }
  return out;
}

std::string canonical_author(const std::string& name) {
  const bool mixed = has_lower(name);
  std::string surname;
  std::string given;
  if (const auto comma = name.find(','); comma != std::string::npos) {
    surname = str::trim(std::string_view(name).substr(0, comma));
    given = str::trim(std::string_view(name).substr(comma + 1));
  } else {
    // "Tzu-Yu Chen" or PubMed-style "Chen TY".
    const auto last_space = name.rfind(' ');
    if (last_space == std::string::npos) {
      surname = name;
    } else {
      const std::string last = name.substr(last_space + 1);
      if (packed_initials(last, mixed)) {
        surname = name.substr(0, last_space);
        given = last;
      } else {
        surname = last;
        given = name.substr(0, last_space);
      }
    }
  }
  if (!mixed || !has_lower(surname)) surname = title_case(surname);
  const std::string init = initials(given, mixed);
  if (init.empty()) return surname;
  return surname + ", " + init;
}

}  // namespace

std::string_view to_string(Origin origin) {
  switch (origin) {
    case Origin::scopus: return "scopus";
    case Origin::wos: return "wos";
    case Origin::pubmed: return "pubmed";
    case Origin::merged: return "merged";
  }
  return "scopus";
}

std::optional<Origin> origin_from_string(std::string_view s) {
  for (Origin o : {Origin::scopus, Origin::wos, Origin::pubmed, Origin::merged}) {
    if (str::iequals(s, to_string(o))) return o;
  }
  return std::nullopt;
}

char label_prefix(EntityKind kind) {
  switch (kind) {
    case EntityKind::author: return 'a';
    case EntityKind::source: return 'j';
    case EntityKind::institution: return 'i';
    case EntityKind::country: return 'c';
    case EntityKind::author_keyword: return 'k';
    case EntityKind::keyword_plus: return 'p';
    case EntityKind::reference: return 'r';
  }
  return '?';
}

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::author: return "author";
    case EntityKind::source: return "source";
    case EntityKind::institution: return "institution";
    case EntityKind::country: return "country";
    case EntityKind::author_keyword: return "author_keyword";
    case EntityKind::keyword_plus: return "keyword_plus";
    case EntityKind::reference: return "reference";
  }
  return "author";
}

std::optional<EntityKind> entity_kind_from_string(std::string_view s) {
  for (EntityKind k : kAllEntityKinds) {
    if (str::iequals(s, to_string(k))) return k;
  }
  return std::nullopt;
}

std::optional<EntityKind> entity_kind_from_prefix(char prefix) {
  for (EntityKind k : kAllEntityKinds) {
    if (label_prefix(k) == prefix) return k;
  }
  return std::nullopt;
}

std::optional<std::string> canonicalize(std::string_view raw, EntityKind kind) {
  std::string s = str::collapse_ws(str::fold_diacritics(raw));
  if (s.empty()) return std::nullopt;
  switch (kind) {
    case EntityKind::author_keyword:
    case EntityKind::keyword_plus:
    case EntityKind::country:
      return str::to_lower(s);
    case EntityKind::source:
    case EntityKind::institution:
      return str::to_upper(s);
    case EntityKind::author: {
      std::string name = canonical_author(s);
      if (name.empty()) return std::nullopt;
      return name;
    }
    case EntityKind::reference:
      return s;
  }
  return s;
}

std::vector<std::string> Document::institutions() const {
  std::vector<std::string> out;
  for (const auto& a : affiliations) {
    if (!a.institution.empty() && std::find(out.begin(), out.end(), a.institution) == out.end())
      out.push_back(a.institution);
  }
  return out;
}

std::vector<std::string> Document::countries() const {
  std::vector<std::string> out;
  for (const auto& a : affiliations) {
    if (!a.country.empty() && std::find(out.begin(), out.end(), a.country) == out.end())
      out.push_back(a.country);
  }
  return out;
}

std::size_t EntityRegistry::intern(const std::string& canonical) {
  const auto [it, inserted] = index_.emplace(canonical, entries_.size());
  if (inserted) entries_.push_back(canonical);
  return it->second;
}

std::optional<std::size_t> EntityRegistry::find(std::string_view canonical) const {
  const auto it = index_.find(std::string(canonical));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string EntityRegistry::label(std::size_t index) const {
  return std::string(1, prefix()) + "_" + std::to_string(index);
}

std::optional<std::size_t> EntityRegistry::parse_label(std::string_view label) const {
  if (label.size() < 3 || label[0] != prefix() || label[1] != '_') return std::nullopt;
  std::size_t index = 0;
  const auto digits = label.substr(2);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || index >= entries_.size())
    return std::nullopt;
  return index;
}

std::optional<std::string> Corpus::resolve_label(std::string_view label) const {
  if (label.size() < 3) return std::nullopt;
  const auto kind = entity_kind_from_prefix(label[0]);
  if (!kind) return std::nullopt;
  const auto& reg = registry(*kind);
  const auto index = reg.parse_label(label);
  if (!index) return std::nullopt;
  return reg.entry(*index);
}

std::string Corpus::target_label(const CitationLink& link) const {
  if (link.external) return registry(EntityKind::reference).label(link.target);
  return std::to_string(link.target);
}

std::string short_citation(const Document& doc) {
  std::string surname = "ANON";
  if (!doc.authors.empty()) {
    const std::string& first = doc.authors.front();
    surname = str::to_upper(str::trim(first.substr(0, first.find(','))));
  }
  const std::string year = doc.year ? std::to_string(*doc.year) : std::string("n.d.");
  return std::to_string(doc.id) + " (" + surname + ", " + year + ")";
}

std::vector<std::string> entity_values(const Document& doc, EntityKind kind) {
  switch (kind) {
    case EntityKind::author: return doc.authors;
    case EntityKind::source:
      return doc.source.empty() ? std::vector<std::string>{} : std::vector<std::string>{doc.source};
    case EntityKind::institution: return doc.institutions();
    case EntityKind::country: return doc.countries();
    case EntityKind::author_keyword: return doc.author_keywords;
    case EntityKind::keyword_plus: return doc.keywords_plus;
    case EntityKind::reference: return doc.references.value_or(std::vector<std::string>{});
  }
  return {};
}

namespace {

void canonicalize_list(std::vector<std::string>& values, EntityKind kind) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& v : values) {
    auto c = canonicalize(v, kind);
    if (c && seen.insert(*c).second) out.push_back(std::move(*c));
  }
  values = std::move(out);
}

}  // namespace

Corpus assign_ids(std::vector<Document> documents) {
  if (documents.empty()) throw EmptyCorpusError("assign_ids: document list is empty");
  Corpus corpus;
  corpus.documents = std::move(documents);
  for (std::size_t id = 0; id < corpus.documents.size(); ++id) {
    Document& doc = corpus.documents[id];
    doc.id = id;
    canonicalize_list(doc.authors, EntityKind::author);
    canonicalize_list(doc.author_keywords, EntityKind::author_keyword);
    canonicalize_list(doc.keywords_plus, EntityKind::keyword_plus);
    doc.source = canonicalize(doc.source, EntityKind::source).value_or("");
    for (auto& aff : doc.affiliations) {
      aff.institution = canonicalize(aff.institution, EntityKind::institution).value_or("");
      aff.country = canonicalize(aff.country, EntityKind::country).value_or("");
    }
    for (EntityKind kind : kAllEntityKinds) {
      if (kind == EntityKind::reference) continue;
      auto& reg = corpus.registry(kind);
      for (const auto& v : entity_values(doc, kind)) reg.intern(v);
    }
  }
  return corpus;
}

std::vector<std::string> validate(const Corpus& corpus) {
  std::vector<std::string> out;
  const std::size_t n = corpus.documents.size();
  for (std::size_t pos = 0; pos < n; ++pos) {
    const Document& doc = corpus.documents[pos];
    const std::string tag = "doc " + std::to_string(pos) + ": ";
    if (doc.id != pos) out.push_back(tag + "id " + std::to_string(doc.id) + " does not match position");
    if (doc.year && (*doc.year < 1000 || *doc.year > 3000)) out.push_back(tag + "year out of range");
    if (doc.times_cited && *doc.times_cited < 0) out.push_back(tag + "times_cited negative");
    for (EntityKind kind : kAllEntityKinds) {
      if (kind == EntityKind::reference) continue;
      const auto& reg = corpus.registry(kind);
      for (const auto& v : entity_values(doc, kind)) {
        if (!reg.find(v)) {
          out.push_back(tag + std::string(to_string(kind)) + " \"" + v + "\" missing from registry");
        }
      }
    }
  }
  const std::size_t n_refs = corpus.registry(EntityKind::reference).size();
  for (const auto& link : corpus.citation_links) {
    if (link.citing >= n) {
      out.push_back("citation link: citing doc " + std::to_string(link.citing) + " out of range");
      continue;
    }
    const std::string tag = "doc " + std::to_string(link.citing) + ": ";
    if (link.external && link.target >= n_refs)
      out.push_back(tag + "citation target r_" + std::to_string(link.target) + " out of range");
    if (!link.external && link.target >= n)
      out.push_back(tag + "citation target doc " + std::to_string(link.target) + " out of range");
  }
  return out;
}

}  // namespace bibx
