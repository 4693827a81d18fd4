#include <algorithm>
#include <optional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bibx/error.hpp"
#include "cli.hpp"

namespace {

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Long flag names a command (and the top level) accepts.
std::vector<std::string> known_flags(const CLI::App& app, const CLI::App* sub) {
  std::vector<std::string> names;
  auto collect = [&](const CLI::App* a, auto&& self) -> void {
    for (const CLI::Option* opt : a->get_options()) {
      for (const auto& name : opt->get_lnames()) names.push_back("--" + name);
    }
    // option groups are nameless subcommands
    for (const CLI::App* group : a->get_subcommands({})) {
      if (group->get_name().empty()) self(group, self);
    }
  };
  collect(&app, collect);
  if (sub != nullptr) collect(sub, collect);
  return names;
}

std::string suggest(const std::string& flag, const std::vector<std::string>& names) {
  const std::string bare = flag.substr(0, flag.find('='));
  std::string best;
  std::size_t best_d = 3;
  for (const auto& n : names) {
    const std::size_t d = edit_distance(bare, n);
    if (d < best_d || (d == best_d && !best.empty() && n < best)) {
      best_d = d;
      best = n;
    }
  }
  return best;
}

// Flags are checked before CLI11 sees them so a typo is reported as such
// rather than as a missing required option.
std::optional<std::string> unknown_flag_message(const CLI::App& app, int argc, char** argv) {
  const CLI::App* sub = nullptr;
  std::vector<std::string> unknown;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--") break;
    if (sub == nullptr && arg.rfind("-", 0) != 0) {
      for (const CLI::App* s : app.get_subcommands({})) {
        if (s->check_name(arg)) sub = s;
      }
      continue;
    }
    if (arg.rfind("--", 0) != 0) continue;
    const std::string bare = arg.substr(0, arg.find('='));
    const auto names = known_flags(app, sub);
    if (bare == "--help" || std::find(names.begin(), names.end(), bare) != names.end()) continue;
    std::string message = "unknown flag " + bare;
    if (auto s = suggest(bare, names); !s.empty()) message += " (did you mean " + s + "?)";
    unknown.push_back(message);
  }
  if (unknown.empty()) return std::nullopt;
  std::string out = "error: ";
  for (std::size_t i = 0; i < unknown.size(); ++i) out += (i ? "; " : "") + unknown[i];
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bibliometric analysis: ingest exports, explore the corpus, draw figures.", "bibx"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("bibx 0.1.0"));

  bibx::cli::Globals globals;
  app.add_option("--seed", globals.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--config", globals.config_path, "INI file with llm.*, render.* and text.* keys");
  app.add_option("--width", globals.width, "Figure width in pixels");
  app.add_option("--height", globals.height, "Figure height in pixels");
  app.add_option("--palette", globals.palette, "Comma-separated #rrggbb colours");
  app.add_option("--stopwords", globals.stopwords_path, "Stopword file, one word per line");

  bibx::cli::add_corpus_commands(app, globals);
  bibx::cli::add_figure_commands(app, globals);
  bibx::cli::add_network_commands(app, globals);
  bibx::cli::add_analysis_commands(app, globals);

  if (auto message = unknown_flag_message(app, argc, argv)) {
    std::cerr << *message << "\n";
    return 1;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ExtrasError& e) {
    const CLI::App* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
    const auto names = known_flags(app, sub);
    std::string message = "error: ";
    bool first = true;
    for (const auto& extra : (sub ? sub->remaining() : app.remaining())) {
      if (extra.rfind("--", 0) != 0) continue;
      if (!first) message += "; ";
      first = false;
      message += "unknown flag " + extra;
      if (auto s = suggest(extra, names); !s.empty()) message += " (did you mean " + s + "?)";
    }
    if (first) message += e.what();
    std::cerr << message << "\n";
    return 1;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) {
      std::cerr << "run 'bibx " << app.get_subcommands().front()->get_name() << " --help' for usage\n";
    }
    return 1;
  } catch (const bibx::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  }
  return 0;
}
