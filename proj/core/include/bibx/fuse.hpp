#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bibx/corpus.hpp"
#include "bibx/ingest.hpp"

// Merging databases, filtering, Bradford zoning and in-corpus citation
// resolution.
namespace bibx::fuse {

struct Dataset {
  std::vector<Document> documents;
  ingest::SourceDb source_db = ingest::SourceDb::scopus;
};

// Earlier datasets take precedence: later ones only fill empty fields.
struct MergePlan {
  std::vector<Dataset> datasets;
};

struct MatchConfig {
  std::size_t min_title_chars = 20;  // rule (b) and (c) minimum normalized title length
  double min_token_fraction = 0.6;   // rule (c)
};

struct MergeStats {
  std::vector<std::size_t> added_per_dataset;
  std::size_t duplicates = 0;
  std::size_t title_key_merges = 0;
  // More than 5% of duplicate merges relied on the title fallback key.
  bool title_fallback_flag = false;
};

struct MergeResult {
  Corpus corpus;
  MergeStats stats;
};

// Lowercased DOI, else the title reduced to lowercase letters and digits.
// Documents with neither get a sentinel unique to `doc_index`.
std::string dedup_key(const Document& doc, std::size_t doc_index = 0);

MergeResult merge(const MergePlan& plan, const MatchConfig& config = {});

// Merges already-normalized documents (any origin) without relabelling.
std::vector<Document> merge_documents(const std::vector<std::vector<Document>>& datasets, MergeStats* stats = nullptr);

struct FilterCriteria {
  std::optional<std::set<std::string>> doc_types;
  std::optional<std::pair<int, int>> year_range;
  std::optional<std::set<std::string>> sources;
  std::optional<std::set<int>> bradford_zones;
  std::optional<std::set<std::string>> countries;
  std::optional<std::set<std::string>> languages;
  bool require_abstract = false;

  bool active() const;
};

// Keeps documents meeting every active criterion and relabels them; the
// result's provenance holds the original ids. Throws EmptyCorpusError when
// nothing survives and UsageError for an inverted year range.
Corpus filter(const Corpus& corpus, const FilterCriteria& criteria, const MatchConfig& config = {});

struct BradfordZoning {
  std::vector<std::string> sources;     // productivity order
  std::vector<std::size_t> doc_counts;  // parallel to sources
  std::vector<int> zone;                // parallel to sources, 1..3
  std::array<std::size_t, 3> zone_documents{};
  std::array<std::size_t, 3> zone_sources{};

  std::optional<int> zone_of(const std::string& source) const;
};

// Sources sorted by descending document count (ties by name); zone 1 is the
// shortest prefix holding at least n/3 documents, zones 1+2 the shortest
// holding at least 2n/3, where n counts documents that name a source.
BradfordZoning bradford_zones(const Corpus& corpus);

// Resolves every raw reference to a corpus document (DOI, then title
// containment, then surname + year + title tokens) or an r_# entry.
// Rebuilds the reference registry and the corpus citation links.
void match_references(Corpus& corpus, const MatchConfig& config = {});

// assign_ids followed by match_references.
Corpus relabel(std::vector<Document> documents, const MatchConfig& config = {});

}  // namespace bibx::fuse
