#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <CLI11.hpp>

#include "bibx/askllm.hpp"
#include "bibx/corpus.hpp"
#include "bibx/render.hpp"
#include "bibx/textkit.hpp"

namespace bibx::cli {

// Options every command accepts.
struct Globals {
  std::uint64_t seed = 42;
  std::string config_path;
  std::optional<double> width;
  std::optional<double> height;
  std::string palette;
  std::string stopwords_path;
};

// Globals merged with the config file.
struct Settings {
  llm::LlmConfig llm;
  render::ViewOptions view;
  text::StopWords stopwords;
};

Settings load_settings(const Globals& globals);

// Where a figure command writes: the SVG and its data file side by side.
struct FigurePaths {
  std::filesystem::path svg;
  std::filesystem::path data;
};

// "x.svg" -> x.svg + x<data_ext>; "x.json"/"x.csv" -> x.svg + that file;
// anything else is a base name for both.
FigurePaths figure_paths(const std::string& out, std::string_view data_ext = ".json");

void write_output(const std::filesystem::path& path, std::string_view contents);

// {"command", "seed", ...payload}
std::string with_metadata(std::string_view command, std::uint64_t seed, nlohmann::json payload);

// "2010:2020" -> {2010, 2020}; throws UsageError otherwise.
std::pair<int, int> parse_year_range(const std::string& text);

// Comma-separated list, trimmed, empties dropped.
std::vector<std::string> split_list(const std::string& text);

void warn(std::string_view message);

// Positional corpus JSON argument shared by most commands.
CLI::Option* add_corpus_arg(CLI::App* command, std::string& path);
CLI::Option* add_out_option(CLI::App* command, std::string& path, std::string_view what);

void add_corpus_commands(CLI::App& app, Globals& globals);
void add_figure_commands(CLI::App& app, Globals& globals);
void add_network_commands(CLI::App& app, Globals& globals);
void add_analysis_commands(CLI::App& app, Globals& globals);

}  // namespace bibx::cli
