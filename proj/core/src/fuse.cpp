#include "bibx/fuse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "bibx/countries.hpp"
#include "bibx/error.hpp"
#include "bibx/strings.hpp"

namespace bibx::fuse {

std::string dedup_key(const Document& doc, std::size_t doc_index) {
  const std::string doi = str::to_lower(str::trim(doc.doi));
  if (!doi.empty()) return doi;
  const std::string title = str::alnum_key(doc.title);
  if (!title.empty()) return title;
  return "\x01#" + std::to_string(doc_index);
}

namespace {

template <typename T>
void fill_list(std::vector<T>& dst, const std::vector<T>& src) {
  if (dst.empty() && !src.empty()) dst = src;
}

void fill_text(std::string& dst, const std::string& src) {
  if (str::trim(dst).empty() && !str::trim(src).empty()) dst = src;
}

// Copies into `kept` only what it lacks.
void fill_missing(Document& kept, const Document& incoming) {
  fill_text(kept.title, incoming.title);
  fill_text(kept.abstract_text, incoming.abstract_text);
  fill_list(kept.authors, incoming.authors);
  fill_list(kept.affiliations, incoming.affiliations);
  fill_list(kept.author_keywords, incoming.author_keywords);
  fill_list(kept.keywords_plus, incoming.keywords_plus);
  fill_text(kept.source, incoming.source);
  fill_text(kept.doc_type, incoming.doc_type);
  fill_text(kept.language, incoming.language);
  if (!kept.year) kept.year = incoming.year;
  if (incoming.references && !incoming.references->empty() && (!kept.references || kept.references->empty()))
    kept.references = incoming.references;
  if (!kept.references) kept.references = incoming.references;
  if (!kept.times_cited) kept.times_cited = incoming.times_cited;
  fill_text(kept.doi, incoming.doi);
}

}  // namespace

std::vector<Document> merge_documents(const std::vector<std::vector<Document>>& datasets, MergeStats* stats) {
  std::vector<Document> merged;
  std::unordered_map<std::string, std::size_t> by_doi;
  std::unordered_map<std::string, std::size_t> by_title;
  MergeStats local;
  std::size_t running = 0;
  for (const auto& dataset : datasets) {
    std::size_t added = 0;
    for (const auto& doc : dataset) {
      const std::string key = dedup_key(doc, running++);
      const std::string title_key = str::alnum_key(doc.title);
      const bool has_doi = !str::trim(doc.doi).empty();
      std::optional<std::size_t> hit;
      bool by_title_key = false;
      if (has_doi) {
        if (const auto it = by_doi.find(key); it != by_doi.end()) hit = it->second;
      }
      if (!hit && !title_key.empty()) {
        // A DOI never matches a retained record that carries a different DOI.
        if (const auto it = by_title.find(title_key);
            it != by_title.end() && (!has_doi || str::trim(merged[it->second].doi).empty())) {
          hit = it->second;
          by_title_key = true;
        }
      }
      if (hit) {
        ++local.duplicates;
        if (by_title_key) ++local.title_key_merges;
        Document& kept = merged[*hit];
        fill_missing(kept, doc);
        kept.origin = Origin::merged;
        if (!kept.doi.empty()) by_doi.emplace(str::to_lower(str::trim(kept.doi)), *hit);
        continue;
      }
      const std::size_t index = merged.size();
      merged.push_back(doc);
      ++added;
      if (has_doi) by_doi.emplace(key, index);
      // Title keys index every document so DOI-less copies still find it.
      if (!title_key.empty()) by_title.emplace(title_key, index);
    }
    local.added_per_dataset.push_back(added);
  }
  local.title_fallback_flag =
      local.duplicates > 0 && static_cast<double>(local.title_key_merges) > 0.05 * static_cast<double>(local.duplicates);
  if (stats) *stats = local;
  return merged;
}

MergeResult merge(const MergePlan& plan, const MatchConfig& config) {
  if (plan.datasets.empty()) throw UsageError("merge: plan needs at least one dataset");
  std::vector<std::vector<Document>> docs;
  docs.reserve(plan.datasets.size());
  for (const auto& ds : plan.datasets) docs.push_back(ds.documents);
  MergeResult result;
  auto merged = merge_documents(docs, &result.stats);
  if (merged.empty()) throw EmptyCorpusError("merge: no documents in any dataset");
  result.corpus = relabel(std::move(merged), config);
  return result;
}

bool FilterCriteria::active() const {
  return doc_types || year_range || sources || bradford_zones || countries || languages || require_abstract;
}

namespace {

std::set<std::string> lowered(const std::set<std::string>& in) {
  std::set<std::string> out;
  for (const auto& s : in) out.insert(str::to_lower(str::collapse_ws(s)));
  return out;
}

}  // namespace

Corpus filter(const Corpus& corpus, const FilterCriteria& c, const MatchConfig& config) {
  if (c.year_range && c.year_range->first > c.year_range->second)
    throw UsageError("filter: year range min " + std::to_string(c.year_range->first) + " exceeds max " +
                     std::to_string(c.year_range->second));
  const auto types = c.doc_types ? lowered(*c.doc_types) : std::set<std::string>{};
  const auto langs = c.languages ? lowered(*c.languages) : std::set<std::string>{};
  std::set<std::string> sources;
  if (c.sources) {
    for (const auto& s : *c.sources) sources.insert(canonicalize(s, EntityKind::source).value_or(""));
  }
  std::set<std::string> countries;
  if (c.countries) {
    for (const auto& s : *c.countries) {
      const auto* known = geo::CountryTable::builtin().find(s);
      countries.insert(known ? known->name : canonicalize(s, EntityKind::country).value_or(""));
    }
  }
  std::optional<BradfordZoning> zoning;
  if (c.bradford_zones) zoning = bradford_zones(corpus);

  std::vector<Document> kept;
  std::vector<std::size_t> provenance;
  for (const auto& doc : corpus.documents) {
    if (c.doc_types && !types.count(str::to_lower(str::collapse_ws(doc.doc_type)))) continue;
    if (c.year_range && (!doc.year || *doc.year < c.year_range->first || *doc.year > c.year_range->second)) continue;
    if (c.sources && !sources.count(doc.source)) continue;
    if (c.bradford_zones) {
      const auto z = zoning->zone_of(doc.source);
      if (!z || !c.bradford_zones->count(*z)) continue;
    }
    if (c.countries) {
      const auto dc = doc.countries();
      if (std::none_of(dc.begin(), dc.end(), [&](const std::string& x) { return countries.count(x) > 0; })) continue;
    }
    if (c.languages && !langs.count(str::to_lower(doc.language))) continue;
    if (c.require_abstract && str::trim(doc.abstract_text).empty()) continue;
    kept.push_back(doc);
    provenance.push_back(corpus.provenance.empty() ? doc.id : corpus.provenance.at(doc.id));
  }
  if (kept.empty()) throw EmptyCorpusError("filter: no document satisfies the criteria");
  Corpus out = relabel(std::move(kept), config);
  out.provenance = std::move(provenance);
  return out;
}

std::optional<int> BradfordZoning::zone_of(const std::string& source) const {
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (sources[i] == source) return zone[i];
  }
  return std::nullopt;
}

BradfordZoning bradford_zones(const Corpus& corpus) {
  std::map<std::string, std::size_t> counts;
  std::size_t n = 0;
  for (const auto& doc : corpus.documents) {
    if (doc.source.empty()) continue;
    ++counts[doc.source];
    ++n;
  }
  if (counts.empty()) throw UnavailableError("bradford_zones: corpus has no sources");
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  BradfordZoning z;
  std::size_t cumulative = 0;
  int current = 1;
  for (const auto& [source, count] : ranked) {
    z.sources.push_back(source);
    z.doc_counts.push_back(count);
    z.zone.push_back(current);
    cumulative += count;
    // Advance past every threshold this prefix reaches (3*cum >= k*n).
    while (current < 3 && 3 * cumulative >= static_cast<std::size_t>(current) * n) ++current;
  }
  for (std::size_t i = 0; i < z.sources.size(); ++i) {
    z.zone_documents[z.zone[i] - 1] += z.doc_counts[i];
    z.zone_sources[z.zone[i] - 1] += 1;
  }
  return z;
}

namespace {

std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : str::to_lower(str::fold_diacritics(text))) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

struct DocKeys {
  std::string doi;
  std::string title;
  std::string surname;
  std::string year;
  std::vector<std::string> title_tokens;
};

struct Target {
  bool external = false;
  std::size_t index = 0;
};

}  // namespace

void match_references(Corpus& corpus, const MatchConfig& config) {
  std::vector<DocKeys> keys;
  keys.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) {
    DocKeys k;
    k.doi = str::to_lower(str::trim(doc.doi));
    k.title = str::alnum_key(doc.title);
    if (!doc.authors.empty()) k.surname = str::alnum_key(doc.authors.front().substr(0, doc.authors.front().find(',')));
    if (doc.year) k.year = std::to_string(*doc.year);
    std::unordered_set<std::string> seen;
    for (auto& t : word_tokens(doc.title)) {
      if (t.size() >= 3 && seen.insert(t).second) k.title_tokens.push_back(std::move(t));
    }
    keys.push_back(std::move(k));
  }

  auto resolve = [&](const std::string& ref) -> std::optional<std::size_t> {
    const std::string lower = str::to_lower(ref);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (!keys[i].doi.empty() && lower.find(keys[i].doi) != std::string::npos) return i;
    }
    const std::string ref_key = str::alnum_key(ref);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (keys[i].title.size() >= config.min_title_chars && ref_key.find(keys[i].title) != std::string::npos)
        return i;
    }
    const auto tokens = word_tokens(ref);
    const std::unordered_set<std::string> token_set(tokens.begin(), tokens.end());
    for (std::size_t i = 0; i < keys.size(); ++i) {
      const auto& k = keys[i];
      if (k.surname.empty() || k.year.empty() || k.title_tokens.empty()) continue;
      if (k.title.size() < config.min_title_chars) continue;
      if (ref_key.find(k.surname) == std::string::npos || !token_set.count(k.year)) continue;
      const auto present = static_cast<double>(std::count_if(k.title_tokens.begin(), k.title_tokens.end(),
                                                             [&](const std::string& t) { return token_set.count(t) > 0; }));
      if (present >= config.min_token_fraction * static_cast<double>(k.title_tokens.size())) return i;
    }
    return std::nullopt;
  };

  auto& refs = corpus.registry(EntityKind::reference);
  refs = EntityRegistry(EntityKind::reference);
  std::unordered_map<std::string, Target> memo;
  std::vector<CitationLink> links;
  for (const auto& doc : corpus.documents) {
    if (!doc.references) continue;
    for (const auto& raw : *doc.references) {
      const auto canonical = canonicalize(raw, EntityKind::reference);
      if (!canonical) continue;
      auto it = memo.find(*canonical);
      if (it == memo.end()) {
        Target t;
        if (const auto hit = resolve(*canonical)) {
          t.index = *hit;
        } else {
          t.external = true;
          t.index = refs.intern(*canonical);
        }
        it = memo.emplace(*canonical, t).first;
      }
      links.push_back({doc.id, it->second.external, it->second.index});
    }
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
  corpus.citation_links = std::move(links);
}

Corpus relabel(std::vector<Document> documents, const MatchConfig& config) {
  Corpus corpus = assign_ids(std::move(documents));
  match_references(corpus, config);
  return corpus;
}

}  // namespace bibx::fuse
