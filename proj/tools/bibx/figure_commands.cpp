#include <memory>

#include "results.hpp"

namespace bibx::cli {

namespace {

struct FigureOpts {
  std::string corpus;
  std::string out;
  ResultParams params;
};

// Registers a figure command: positional corpus, -o, and the extra options.
template <typename Extra>
void add_figure(CLI::App& app, Globals& g, const std::string& name, const std::string& description, Extra extra) {
  auto o = std::make_shared<FigureOpts>();
  auto* cmd = app.add_subcommand(name, description);
  add_corpus_arg(cmd, o->corpus);
  add_out_option(cmd, o->out, "Output name: x.svg, x.json/x.csv, or a base name for both");
  extra(cmd, o->params);
  cmd->callback([o, &g, name] { run_figure(name, o->corpus, o->out, o->params, g); });
}

}  // namespace

void add_figure_commands(CLI::App& app, Globals& g) {
  add_figure(app, g, "ngram", "Most frequent n-grams of a text field", [](CLI::App* c, ResultParams& p) {
    c->add_option("--n", p.n, "Words per n-gram")->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--field", p.field, "abstract, title, author_keywords or keywords_plus (default abstract)");
    c->add_option("--top", p.top, "How many n-grams")->capture_default_str();
  });
  add_figure(app, g, "wordcloud", "Word cloud of a text or keyword field", [](CLI::App* c, ResultParams& p) {
    p.top = 60;
    c->add_option("--field", p.field, "abstract, title, author_keywords or keywords_plus (default author_keywords)");
    c->add_option("--top", p.top, "How many words")->capture_default_str();
  });
  add_figure(app, g, "project", "2-D projection of the abstracts, optionally clustered",
             [](CLI::App* c, ResultParams& p) {
               c->add_option("--vectors", p.vectors, "CSV/TSV of per-document vectors instead of TF-IDF");
               c->add_option("--clusters", p.clusters, "k-means clusters on the projection (0 = none)")
                   ->capture_default_str();
             });
  add_figure(app, g, "evolution", "Yearly frequency of the top entities of a field", [](CLI::App* c, ResultParams& p) {
    p.top = 5;
    c->add_option("--field", p.field, "authors, countries, institutions, sources, author_keywords, keywords_plus, "
                                      "languages (default author_keywords)");
    c->add_option("--years", p.years, "Year range, e.g. 2010:2020 (default: corpus span)");
    c->add_option("--top", p.top, "How many entities")->capture_default_str();
  });
  add_figure(app, g, "treemap", "Treemap of the top entities of a field", [](CLI::App* c, ResultParams& p) {
    p.top = 20;
    c->add_option("--field", p.field, "authors, countries, institutions, sources, author_keywords, keywords_plus, "
                                      "languages (default author_keywords)");
    c->add_option("--top", p.top, "How many entities")->capture_default_str();
  });
  add_figure(app, g, "sankey", "Flows between two fields", [](CLI::App* c, ResultParams& p) {
    p.top = 10;
    c->add_option("--left", p.left, "Left field")->capture_default_str();
    c->add_option("--right", p.right, "Right field")->capture_default_str();
    c->add_option("--top", p.top, "Entities kept per side")->capture_default_str();
  });
  add_figure(app, g, "productivity", "Publications per year of the most productive authors",
             [](CLI::App* c, ResultParams& p) {
               p.top = 10;
               c->add_option("--top", p.top, "How many authors")->capture_default_str();
             });
  add_figure(app, g, "bar", "Bar plot of one corpus statistic", [](CLI::App* c, ResultParams& p) {
    c->add_option("--kind", p.kind, "documents_per_year, citations_per_year, lotka, bradford, ...")
        ->capture_default_str();
    c->add_option("--top", p.top, "Rows kept for ranked kinds")->capture_default_str();
  });
}

void add_network_commands(CLI::App& app, Globals& g) {
  add_figure(app, g, "network", "Citation network of documents and cited references",
             [](CLI::App* c, ResultParams& p) {
               c->add_option("--min-citations", p.min_citations, "Keep targets cited by at least this many documents")
                   ->capture_default_str();
             });
  add_figure(app, g, "history", "Citation chain around one document", [](CLI::App* c, ResultParams& p) {
    c->add_option("--doc", p.doc, "Document id")->required();
  });
  for (const std::string name : {"similarity", "cocitation"}) {
    add_figure(app, g, name,
               name == "similarity" ? "Documents linked by shared references" : "Alias of similarity",
               [](CLI::App* c, ResultParams& p) {
                 c->add_option("--min-shared", p.min_shared, "Minimum shared references per edge")
                     ->capture_default_str();
               });
  }
  add_figure(app, g, "collab", "Co-authorship network, optionally around one author", [](CLI::App* c, ResultParams& p) {
    c->add_option("--author", p.author, "Centre the network on this author");
    c->add_option("--depth", p.depth, "Hops from --author (default: whole component)");
  });
  add_figure(app, g, "worldmap", "Countries and their collaborations on a world map", [](CLI::App*, ResultParams&) {});
}

}  // namespace bibx::cli
