#include <charconv>
#include <iostream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "bibx/corpus_json.hpp"
#include "bibx/error.hpp"
#include "bibx/strings.hpp"
#include "cli.hpp"

namespace bibx::cli {

namespace {

namespace pt = boost::property_tree;

// Looks a key up as "[section] key" or as a literal dotted top-level key.
std::optional<std::string> lookup(const pt::ptree& tree, const std::string& dotted) {
  if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(dotted, '.'))) return str::trim(*v);
  if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(dotted, '/'))) return str::trim(*v);
  return std::nullopt;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used == value.size()) return d;
  } catch (const std::exception&) {
  }
  throw ConfigError("config " + key + ": expected a number, got '" + value + "'");
}

}  // namespace

Settings load_settings(const Globals& g) {
  Settings s;
  pt::ptree tree;
  if (!g.config_path.empty()) {
    if (!std::filesystem::exists(g.config_path)) throw DataError("cannot read " + g.config_path);
    try {
      pt::ini_parser::read_ini(g.config_path, tree);
    } catch (const pt::ini_parser_error& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  if (auto v = lookup(tree, "llm.endpoint")) s.llm.endpoint = *v;
  if (auto v = lookup(tree, "llm.model")) s.llm.model = *v;
  if (auto v = lookup(tree, "llm.temperature")) s.llm.temperature = to_double("llm.temperature", *v);
  if (auto v = lookup(tree, "llm.max_tokens")) s.llm.max_tokens = static_cast<int>(to_double("llm.max_tokens", *v));
  if (auto v = lookup(tree, "llm.timeout_s")) s.llm.timeout_s = to_double("llm.timeout_s", *v);
  if (auto v = lookup(tree, "llm.context_budget_chars")) {
    s.llm.context_budget_chars = static_cast<std::size_t>(to_double("llm.context_budget_chars", *v));
  }
  if (auto v = lookup(tree, "llm.session_log")) s.llm.session_log = *v;
  s.llm.load_key_from_env();

  if (auto v = lookup(tree, "render.width")) s.view.width = to_double("render.width", *v);
  if (auto v = lookup(tree, "render.height")) s.view.height = to_double("render.height", *v);
  std::string palette;
  if (auto v = lookup(tree, "render.palette")) palette = *v;
  if (g.width) s.view.width = *g.width;
  if (g.height) s.view.height = *g.height;
  if (!g.palette.empty()) palette = g.palette;
  if (!palette.empty()) s.view.palette = render::Palette::parse(palette);
  if (!(s.view.width >= 100.0) || !(s.view.height >= 100.0)) throw UsageError("figure size must be at least 100x100");
  s.view.seed = g.seed;

  std::string stopwords_path = g.stopwords_path;
  if (stopwords_path.empty()) {
    if (auto v = lookup(tree, "text.stopwords_path")) stopwords_path = *v;
  }
  s.stopwords = stopwords_path.empty() ? text::english_stopwords() : text::parse_stopwords(read_file(stopwords_path));
  return s;
}

FigurePaths figure_paths(const std::string& out, std::string_view data_ext) {
  std::filesystem::path p(out);
  const std::string ext = p.extension().string();
  if (ext == ".svg") return {p, std::filesystem::path(p).replace_extension(data_ext)};
  if (ext == ".json" || ext == ".csv" || ext == ".tsv") return {std::filesystem::path(p).replace_extension(".svg"), p};
  return {std::filesystem::path(out + ".svg"), std::filesystem::path(out + std::string(data_ext))};
}

void write_output(const std::filesystem::path& path, std::string_view contents) {
  write_file(path, contents);
  std::cerr << "wrote " << path.string() << "\n";
}

std::string with_metadata(std::string_view command, std::uint64_t seed, nlohmann::json payload) {
  nlohmann::json out;
  out["command"] = command;
  out["seed"] = seed;
  if (payload.is_object()) {
    for (auto& [k, v] : payload.items()) out[k] = v;
  } else {
    out["data"] = std::move(payload);
  }
  return out.dump(1) + "\n";
}

std::pair<int, int> parse_year_range(const std::string& text) {
  const auto colon = text.find(':');
  auto parse = [&](std::string_view part) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size()) {
      throw UsageError("year range must look like 2010:2020, got '" + text + "'");
    }
    return v;
  };
  if (colon == std::string::npos) {
    const int y = parse(text);
    return {y, y};
  }
  const auto range = std::pair{parse(std::string_view(text).substr(0, colon)),
                               parse(std::string_view(text).substr(colon + 1))};
  if (range.first > range.second) {
    throw UsageError("year range " + text + " is inverted");
  }
  return range;
}

std::vector<std::string> split_list(const std::string& text) { return str::split_top_level(text, ","); }

void warn(std::string_view message) { std::cerr << "WARN " << message << "\n"; }

CLI::Option* add_corpus_arg(CLI::App* command, std::string& path) {
  return command->add_option("corpus", path, "Corpus JSON written by ingest, merge or filter")->required();
}

CLI::Option* add_out_option(CLI::App* command, std::string& path, std::string_view what) {
  return command->add_option("-o,--out", path, std::string(what))->required();
}

}  // namespace bibx::cli
