#include <iostream>
#include <memory>

#include "bibx/corpus_json.hpp"
#include "bibx/error.hpp"
#include "bibx/strings.hpp"
#include "results.hpp"

namespace bibx::cli {

namespace {

void add_topics(CLI::App& app, Globals& g) {
  struct Opts {
    std::string corpus, out;
    ResultParams params;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("topics", "Cluster abstracts into topics and name them by their words");
  add_corpus_arg(cmd, o->corpus);
  cmd->add_option("--k", o->params.k, "Number of topics, or 'auto' to pick by silhouette")->capture_default_str();
  cmd->add_option("--vectors", o->params.vectors, "CSV/TSV of per-document vectors instead of TF-IDF");
  cmd->add_option("--top-words", o->params.top_words, "Words listed per topic")->capture_default_str();
  cmd->add_option("-o,--out", o->out, "Topic JSON to write");
  cmd->callback([o, &g] {
    const Settings settings = load_settings(g);
    const Corpus corpus = load_corpus(o->corpus);
    const auto result = compute_result("topics", corpus, o->params, settings);
    const auto& model = std::get<topics::TopicModel>(result);
    for (const auto& [k, score] : model.silhouettes) std::cerr << "k=" << k << " silhouette " << score << "\n";
    for (const auto& line : topics::topic_summary(model)) std::cout << line << "\n";
    if (!o->out.empty()) write_output(o->out, with_metadata("topics", g.seed, result_json(result)));
  });
}

void add_summarize(CLI::App& app, Globals& g) {
  struct Opts {
    std::string corpus, out;
    ResultParams params;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("summarize", "Extract the most central sentences of some abstracts");
  add_corpus_arg(cmd, o->corpus);
  cmd->add_option("--docs", o->params.docs, "Comma-separated document ids, e.g. 96,74")->required();
  cmd->add_option("--sentences", o->params.sentences, "Sentences to keep")->capture_default_str();
  cmd->add_option("-o,--out", o->out, "Summary JSON to write");
  cmd->callback([o, &g] {
    const Settings settings = load_settings(g);
    const Corpus corpus = load_corpus(o->corpus);
    const auto result = compute_result("summarize", corpus, o->params, settings);
    for (const auto& s : std::get<summarize::Summary>(result).sentences) std::cout << s << "\n";
    if (!o->out.empty()) write_output(o->out, with_metadata("summarize", g.seed, result_json(result)));
  });
}

void add_ask(CLI::App& app, Globals& g) {
  struct Opts {
    std::string corpus, result, question, session_log, out;
    bool dry_run = false;
    ResultParams params;
  };
  auto o = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("ask", "Ask a chat model about one analysis result");
  add_corpus_arg(cmd, o->corpus);
  cmd->add_option("--result", o->result, "Analysis to serialize: " + str::join(result_names(), ", "))->required();
  cmd->add_option("--q,--question", o->question, "The question")->required();
  cmd->add_option("--session-log", o->session_log, "Append the exchange to this JSONL file");
  cmd->add_flag("--dry-run", o->dry_run, "Print the request body instead of sending it");
  cmd->add_option("-o,--out", o->out, "Write the exchange as JSON");
  auto& p = o->params;
  auto* params = cmd->add_option_group("result options", "Parameters of the analysis named by --result");
  params->add_option("--kind", p.kind, "bar: series kind")->capture_default_str();
  params->add_option("--field", p.field, "ngram/wordcloud/evolution/treemap: field");
  params->add_option("--n", p.n, "ngram: words per n-gram")->capture_default_str();
  params->add_option("--top", p.top, "Rows kept")->capture_default_str();
  params->add_option("--years", p.years, "evolution: year range");
  params->add_option("--left", p.left, "sankey: left field")->capture_default_str();
  params->add_option("--right", p.right, "sankey: right field")->capture_default_str();
  params->add_option("--min-citations", p.min_citations, "network: citation threshold")->capture_default_str();
  params->add_option("--min-shared", p.min_shared, "similarity: shared-reference threshold")->capture_default_str();
  params->add_option("--doc", p.doc, "history: document id");
  params->add_option("--docs", p.docs, "summarize: document ids");
  params->add_option("--sentences", p.sentences, "summarize: sentences kept")->capture_default_str();
  params->add_option("--k", p.k, "topics: number of topics or auto")->capture_default_str();
  params->add_option("--top-words", p.top_words, "topics: words per topic")->capture_default_str();
  params->add_option("--clusters", p.clusters, "project: k-means clusters")->capture_default_str();
  params->add_option("--vectors", p.vectors, "project/topics: external vectors");
  params->add_option("--author", p.author, "collab: centre author");
  params->add_option("--depth", p.depth, "collab: hops from --author");
  params->add_option("--collab-mode", p.collab_mode, "report: unique or authorships")->capture_default_str();
  cmd->callback([o, &g] {
    Settings settings = load_settings(g);
    if (!o->session_log.empty()) settings.llm.session_log = o->session_log;
    settings.llm.check();
    const Corpus corpus = load_corpus(o->corpus);
    const auto result = compute_result(o->result, corpus, o->params, settings);
    const std::string context = llm::serialize_result(result, settings.llm.context_budget_chars);
    if (o->dry_run) {
      std::cout << llm::request_body(context, o->question, settings.llm).dump(1) << "\n";
      return;
    }
    const auto exchange = llm::ask(context, o->question, settings.llm);
    std::cout << exchange.answer << "\n";
    if (!o->out.empty()) write_output(o->out, llm::exchange_json(exchange).dump(1) + "\n");
  });
}

}  // namespace

void add_analysis_commands(CLI::App& app, Globals& g) {
  add_topics(app, g);
  add_summarize(app, g);
  add_ask(app, g);
}

}  // namespace bibx::cli
