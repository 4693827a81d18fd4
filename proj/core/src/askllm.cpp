#include "bibx/askllm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <numeric>

#include <httplib.h>

#include "bibx/error.hpp"

namespace bibx::llm {

namespace {

struct Row {
  std::string text;
  double weight = 0.0;
};

struct Section {
  std::vector<std::string> header;
  std::vector<Row> rows;
};

std::string num(double v) {
  if (std::floor(v) == v && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string omitted_line(std::size_t k) { return "… (" + std::to_string(k) + " rows omitted)"; }

// Renders a section into at most `budget` bytes.
std::string render_section(const Section& section, std::size_t budget) {
  std::string head;
  for (const auto& line : section.header) head += line + "\n";
  std::size_t total = head.size();
  for (const Row& r : section.rows) total += r.text.size() + 1;
  if (total <= budget) {
    std::string out = head;
    for (const Row& r : section.rows) out += r.text + "\n";
    return out;
  }
  if (head.size() > budget) head = head.substr(0, budget);
  // Rank rows by weight (stable), take a prefix that fits with the footer.
  std::vector<std::size_t> order(section.rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return section.rows[a].weight > section.rows[b].weight; });
  std::vector<bool> keep(section.rows.size(), false);
  std::size_t used = head.size();
  std::size_t kept = 0;
  for (std::size_t idx : order) {
    const std::size_t cost = section.rows[idx].text.size() + 1;
    const std::size_t footer = omitted_line(section.rows.size() - kept - 1).size() + 1;
    if (used + cost + footer > budget) break;
    keep[idx] = true;
    used += cost;
    ++kept;
  }
  std::string out = head;
  for (std::size_t i = 0; i < section.rows.size(); ++i) {
    if (keep[i]) out += section.rows[i].text + "\n";
  }
  const std::string footer = omitted_line(section.rows.size() - kept) + "\n";
  if (out.size() + footer.size() <= budget) out += footer;
  return out;
}

std::size_t full_size(const Section& s) {
  std::size_t n = 0;
  for (const auto& l : s.header) n += l.size() + 1;
  for (const auto& r : s.rows) n += r.text.size() + 1;
  return n;
}

// Each section gets at least an equal share of what is left; a section may
// take more when the ones after it fit in the remainder.
std::string render(const std::vector<Section>& sections, std::size_t budget) {
  std::string out;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const std::size_t remaining = budget > out.size() ? budget - out.size() : 0;
    std::size_t later = 0;
    for (std::size_t j = i + 1; j < sections.size(); ++j) later += full_size(sections[j]);
    const std::size_t full = full_size(sections[i]);
    std::size_t allowance = full;
    if (full + later > remaining) {
      allowance = std::max(remaining / (sections.size() - i), remaining > later ? remaining - later : 0);
    }
    out += render_section(sections[i], allowance);
  }
  return out;
}

std::vector<Section> sections_of(const eda::EdaReport& report) {
  Section s{{"# EDA report"}, {}};
  for (const auto& [label, value] : eda::report_rows(report)) s.rows.push_back({label + ": " + value, 1.0});
  return {s};
}

std::vector<Section> sections_of(const eda::Series& series) {
  Section s{{"# " + series.label, series.groups.empty() ? "category\tvalue" : "category\tvalue\tgroup"}, {}};
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    std::string line = series.points[i].first + "\t" + num(series.points[i].second);
    if (!series.groups.empty()) line += "\t" + std::to_string(series.groups[i]);
    s.rows.push_back({line, series.points[i].second});
  }
  return {s};
}

std::vector<Section> sections_of(const EvolutionResult& e) {
  Section s{{"# evolution of " + std::string(eda::to_string(e.field)), "entity\ttotal\tyear:count"}, {}};
  for (const auto& series : e.series) {
    double total = 0.0;
    std::string cells;
    for (const auto& [year, v] : series.points) {
      total += v;
      if (v > 0) cells += (cells.empty() ? "" : " ") + year + ":" + num(v);
    }
    s.rows.push_back({series.label + "\t" + num(total) + "\t" + cells, total});
  }
  return {s};
}

std::vector<Section> sections_of(const TermCounts& t) {
  Section s{{"# " + t.label, "term\tcount"}, {}};
  for (const auto& [term, count] : t.counts) {
    s.rows.push_back({term + "\t" + std::to_string(count), static_cast<double>(count)});
  }
  return {s};
}

std::vector<Section> sections_of(const FlowResult& f) {
  Section s{{"# flows"}, {}};
  if (!f.flows.empty()) {
    s.header.push_back(std::string(eda::to_string(f.flows.front().left_kind)) + "\t" +
                       std::string(eda::to_string(f.flows.front().right_kind)) + "\tdocuments");
  }
  for (const auto& flow : f.flows) {
    s.rows.push_back({flow.left + "\t" + flow.right + "\t" + std::to_string(flow.weight),
                      static_cast<double>(flow.weight)});
  }
  return {s};
}

std::vector<Section> sections_of(const eda::Productivity& p) {
  Section s{{"# author productivity", "author\ttotal\tyear:documents"}, {}};
  for (const auto& row : p.rows) {
    std::string cells;
    for (const auto& [year, ids] : row.cells) {
      cells += (cells.empty() ? "" : " ") + std::to_string(year) + ":" + std::to_string(ids.size());
    }
    if (!row.undated.empty()) cells += (cells.empty() ? "" : " ") + std::string("n.d.:") + std::to_string(row.undated.size());
    s.rows.push_back({row.author + "\t" + std::to_string(row.total) + "\t" + cells, static_cast<double>(row.total)});
  }
  return {s};
}

std::vector<Section> sections_of(const GraphResult& g) {
  const auto& graph = g.graph;
  Section nodes{{"# " + g.label, "nodes: " + std::to_string(graph.nodes.size()) +
                                     ", edges: " + std::to_string(graph.edges.size()),
                 "node\tkind\tattributes"},
                {}};
  const auto degree = graph.in_degree();
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& n = graph.nodes[i];
    std::string attrs;
    double weight = static_cast<double>(degree[i]);
    for (const auto& [key, value] : n.attributes.items()) {
      if (key == "lat" || key == "lon" || key == "color_class") continue;
      attrs += (attrs.empty() ? "" : " ") + key + "=" + (value.is_string() ? value.get<std::string>() : value.dump());
      if (key == "doc_count" && value.is_number()) weight = value.get<double>();
    }
    nodes.rows.push_back({n.label + "\t" + std::string(graph::to_string(n.kind)) + "\t" + attrs, weight});
  }
  Section edges{{"source\ttarget\tweight"}, {}};
  for (const auto& e : graph.edges) {
    edges.rows.push_back(
        {graph.nodes[e.source].label + "\t" + graph.nodes[e.target].label + "\t" + num(e.weight), e.weight});
  }
  return {nodes, edges};
}

std::vector<Section> sections_of(const graph::CitationChain& c) {
  Section back{{"# citation history of document " + std::to_string(c.focal), "backward (citing -> cited)"}, {}};
  for (const auto& [a, b] : c.backward) back.rows.push_back({std::to_string(a) + " -> " + std::to_string(b), 1.0});
  Section fwd{{"forward (citing -> cited)"}, {}};
  for (const auto& [a, b] : c.forward) fwd.rows.push_back({std::to_string(a) + " -> " + std::to_string(b), 1.0});
  return {back, fwd};
}

std::vector<Section> sections_of(const topics::TopicModel& m) {
  Section s{{"# topics", "topic | size | words | central document"}, {}};
  const auto rows = topics::topic_summary(m);
  for (std::size_t i = 0; i < rows.size(); ++i) s.rows.push_back({rows[i], static_cast<double>(m.topics[i].size)});
  return {s};
}

std::vector<Section> sections_of(const summarize::Summary& sum) {
  Section s{{"# extractive summary"}, {}};
  for (std::size_t i = 0; i < sum.sentences.size(); ++i) s.rows.push_back({sum.sentences[i], sum.scores[i]});
  return {s};
}

std::vector<Section> sections_of(const vec::Projection2D& p) {
  Section s{{"# document projection", "document\tx\ty\tcluster"}, {}};
  for (const auto& pt : p.points) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f\t%.4f", pt.x, pt.y);
    s.rows.push_back({pt.citation + "\t" + buf + "\t" + (pt.cluster ? std::to_string(*pt.cluster) : "-"),
                      std::hypot(pt.x, pt.y)});
  }
  return {s};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("llm.endpoint must be an http(s) URL: " + url);
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") throw ConfigError("unsupported scheme in llm.endpoint: " + scheme);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

void LlmConfig::load_key_from_env() {
  if (const char* key = std::getenv(std::string(kApiKeyEnv).c_str()); key != nullptr && *key != '\0') api_key = key;
}

void LlmConfig::check() const {
  if (temperature < 0.0 || temperature > 2.0) throw ConfigError("llm.temperature must be within [0, 2]");
  if (max_tokens <= 0) throw ConfigError("llm.max_tokens must be positive");
  if (!(timeout_s > 0.0)) throw ConfigError("llm.timeout_s must be positive");
  if (context_budget_chars == 0) throw ConfigError("llm.context_budget_chars must be positive");
  split_endpoint(endpoint);
}

std::string serialize_result(const AnalysisResult& result, std::size_t budget) {
  const auto sections = std::visit([](const auto& r) { return sections_of(r); }, result);
  return render(sections, budget);
}

nlohmann::json request_body(std::string_view context, std::string_view question, const LlmConfig& config) {
  return {{"model", config.model},
          {"temperature", config.temperature},
          {"max_tokens", config.max_tokens},
          {"messages",
           nlohmann::json::array({{{"role", "system"}, {"content", kSystemMessage}},
                                  {{"role", "user"}, {"content", std::string(context)}},
                                  {{"role", "user"}, {"content", std::string(question)}}})}};
}

Exchange parse_response(std::string_view body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception&) {
    throw ProtocolError("response is not JSON");
  }
  Exchange ex;
  try {
    const auto& content = j.at("choices").at(0).at("message").at("content");
    ex.answer = content.get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw ProtocolError("response lacks choices[0].message.content");
  }
  if (j.contains("usage") && j["usage"].is_object()) {
    const auto& u = j["usage"];
    ex.prompt_tokens = u.value("prompt_tokens", 0LL);
    ex.completion_tokens = u.value("completion_tokens", 0LL);
    ex.total_tokens = u.value("total_tokens", ex.prompt_tokens + ex.completion_tokens);
  }
  return ex;
}

Exchange ask(std::string_view context, std::string_view question, const LlmConfig& config) {
  if (config.api_key.empty()) {
    throw ConfigError("no API key: set " + std::string(kApiKeyEnv));
  }
  config.check();
  const Endpoint ep = split_endpoint(config.endpoint);
  const std::string body = request_body(context, question, config).dump();

  httplib::Client client(ep.base);
  const auto secs = static_cast<time_t>(config.timeout_s);
  const auto usecs = static_cast<time_t>((config.timeout_s - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  client.set_bearer_token_auth(config.api_key);

  httplib::Result res;
  for (int attempt = 0; attempt < 2; ++attempt) {
    res = client.Post(ep.path, body, "application/json");
    if (res) break;
    const auto err = res.error();
    if (err != httplib::Error::Read && err != httplib::Error::ConnectionTimeout) {
      throw ServiceError("request to " + ep.base + " failed: " + httplib::to_string(err));
    }
  }
  if (!res) throw TimeoutError("no response from " + ep.base + " after two attempts");
  if (res->status >= 400) {
    throw ServiceError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
  }
  Exchange ex = parse_response(res->body);
  ex.context = std::string(context);
  ex.question = std::string(question);
  ex.timestamp = utc_timestamp();
  if (config.session_log) append_session_log(*config.session_log, ex);
  return ex;
}

Exchange ask(const AnalysisResult& result, std::string_view question, const LlmConfig& config) {
  if (config.api_key.empty()) throw ConfigError("no API key: set " + std::string(kApiKeyEnv));
  return ask(serialize_result(result, config.context_budget_chars), question, config);
}

nlohmann::json exchange_json(const Exchange& ex) {
  return {{"timestamp", ex.timestamp},
          {"question", ex.question},
          {"context", ex.context},
          {"answer", ex.answer},
          {"usage",
           {{"prompt_tokens", ex.prompt_tokens},
            {"completion_tokens", ex.completion_tokens},
            {"total_tokens", ex.total_tokens}}}};
}

void append_session_log(const std::filesystem::path& path, const Exchange& exchange) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw DataError("cannot open session log " + path.string());
  out << exchange_json(exchange).dump() << '\n';
}

}  // namespace bibx::llm
