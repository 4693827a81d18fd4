#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bibx {

enum class Origin { scopus, wos, pubmed, merged };

std::string_view to_string(Origin origin);
std::optional<Origin> origin_from_string(std::string_view s);

struct Affiliation {
  std::string institution;
  std::string country;  // canonical lowercase country name; empty when unknown

  friend bool operator==(const Affiliation&, const Affiliation&) = default;
};

// One bibliographic record. Optional fields are absent, never zero.
struct Document {
  std::size_t id = 0;
  std::string title;
  std::string abstract_text;
  std::vector<std::string> authors;
  std::vector<Affiliation> affiliations;
  std::vector<std::string> author_keywords;
  std::vector<std::string> keywords_plus;
  std::string source;
  std::string doc_type;
  std::string language;
  std::optional<int> year;
  std::optional<std::vector<std::string>> references;
  std::optional<std::int64_t> times_cited;
  std::string doi;
  Origin origin = Origin::scopus;

  // Distinct institutions / countries in affiliation order.
  std::vector<std::string> institutions() const;
  std::vector<std::string> countries() const;

  friend bool operator==(const Document&, const Document&) = default;
};

enum class EntityKind { author, source, institution, country, author_keyword, keyword_plus, reference };

inline constexpr std::array<EntityKind, 7> kAllEntityKinds{
    EntityKind::author,         EntityKind::source,       EntityKind::institution, EntityKind::country,
    EntityKind::author_keyword, EntityKind::keyword_plus, EntityKind::reference};

char label_prefix(EntityKind kind);
std::string_view to_string(EntityKind kind);
std::optional<EntityKind> entity_kind_from_string(std::string_view s);
std::optional<EntityKind> entity_kind_from_prefix(char prefix);

// Canonical form of an entity string. std::nullopt is the skip-entry signal:
// the raw value is empty after trimming and the caller drops it.
std::optional<std::string> canonicalize(std::string_view raw, EntityKind kind);

// Canonical strings of one entity kind, labelled `<prefix>_<index>` in
// first-appearance order.
class EntityRegistry {
 public:
  explicit EntityRegistry(EntityKind kind = EntityKind::author) : kind_(kind) {}

  EntityKind kind() const { return kind_; }
  char prefix() const { return label_prefix(kind_); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::string>& entries() const { return entries_; }
  const std::string& entry(std::size_t index) const { return entries_.at(index); }

  // Index of `canonical`, inserting it at the end when new.
  std::size_t intern(const std::string& canonical);
  std::optional<std::size_t> find(std::string_view canonical) const;

  std::string label(std::size_t index) const;
  // Parses "<prefix>_<index>" for this registry; nullopt on any mismatch.
  std::optional<std::size_t> parse_label(std::string_view label) const;

  friend bool operator==(const EntityRegistry& a, const EntityRegistry& b) {
    return a.kind_ == b.kind_ && a.entries_ == b.entries_;
  }

 private:
  EntityKind kind_;
  std::vector<std::string> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

// A citation from one corpus document to either another corpus document or an
// external reference (r_# label).
struct CitationLink {
  std::size_t citing = 0;
  bool external = false;
  std::size_t target = 0;  // doc id, or reference registry index when external

  friend auto operator<=>(const CitationLink&, const CitationLink&) = default;
};

struct Corpus {
  std::vector<Document> documents;
  std::array<EntityRegistry, 7> registries{
      EntityRegistry(EntityKind::author),         EntityRegistry(EntityKind::source),
      EntityRegistry(EntityKind::institution),    EntityRegistry(EntityKind::country),
      EntityRegistry(EntityKind::author_keyword), EntityRegistry(EntityKind::keyword_plus),
      EntityRegistry(EntityKind::reference)};
  std::vector<CitationLink> citation_links;
  // Original document ids before the last filter; empty when unfiltered.
  std::vector<std::size_t> provenance;

  std::size_t size() const { return documents.size(); }
  bool empty() const { return documents.empty(); }
  EntityRegistry& registry(EntityKind kind) { return registries[static_cast<std::size_t>(kind)]; }
  const EntityRegistry& registry(EntityKind kind) const {
    return registries[static_cast<std::size_t>(kind)];
  }

  // Resolves a label such as "a_3" to its registry entry.
  std::optional<std::string> resolve_label(std::string_view label) const;
  // "r_12" for external targets, the decimal doc id otherwise.
  std::string target_label(const CitationLink& link) const;
};

// "<id> (<SURNAME>, <year>)"; "n.d." stands in for a missing year and
// "ANON" for a missing author.
std::string short_citation(const Document& doc);

// Values a document holds for an entity kind (references excluded).
std::vector<std::string> entity_values(const Document& doc, EntityKind kind);

// Numbers documents 0..n-1 in input order, canonicalizes entity fields and
// builds the six non-reference registries by first appearance. The reference
// registry and citation links are left empty (see fuse::match_references).
Corpus assign_ids(std::vector<Document> documents);

// Empty iff every Document/Corpus invariant holds.
std::vector<std::string> validate(const Corpus& corpus);

}  // namespace bibx
