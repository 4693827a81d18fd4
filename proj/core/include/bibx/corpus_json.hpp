#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bibx/corpus.hpp"

namespace bibx {

// Interchange format: {"documents": [...], "registries": {...},
// "citation_links": [[citing, target], ...], "provenance": [...]}. Targets are
// doc ids (integers) or "r_#" labels.
nlohmann::json corpus_to_json(const Corpus& corpus);
Corpus corpus_from_json(const nlohmann::json& j);

nlohmann::json document_to_json(const Document& doc);
Document document_from_json(const nlohmann::json& j);

Corpus load_corpus(const std::filesystem::path& path);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace bibx
