#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bibx/result.hpp"

// Plain-text serialization of analysis results and a chat-completion client.
namespace bibx::llm {

inline constexpr std::string_view kApiKeyEnv = "BIBX_LLM_API_KEY";
inline constexpr std::string_view kSystemMessage = "You are analyzing bibliometric results.";

struct LlmConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-3.5-turbo";
  std::string api_key;  // never written anywhere
  double temperature = 0.2;
  int max_tokens = 512;
  double timeout_s = 60.0;
  std::size_t context_budget_chars = 12000;
  std::optional<std::filesystem::path> session_log;

  // Fills api_key from BIBX_LLM_API_KEY when set.
  void load_key_from_env();
  // Throws ConfigError on out-of-range values.
  void check() const;
};

struct Exchange {
  std::string context;
  std::string question;
  std::string answer;
  long long prompt_tokens = 0;
  long long completion_tokens = 0;
  long long total_tokens = 0;
  std::string timestamp;  // UTC, ISO 8601
};

// Tab-separated text no longer than `budget` characters. When rows must go,
// the highest-weight rows are kept in their original order and a
// "… (<k> rows omitted)" line is appended.
std::string serialize_result(const AnalysisResult& result, std::size_t budget = 12000);

nlohmann::json request_body(std::string_view context, std::string_view question, const LlmConfig& config);

// Throws ProtocolError unless the body carries choices[0].message.content.
Exchange parse_response(std::string_view body);

// One POST to config.endpoint, retried once on timeout. The key is checked
// before any connection is made (ConfigError naming BIBX_LLM_API_KEY); HTTP
// status >= 400 raises ServiceError, a second timeout TimeoutError. The
// exchange is appended to config.session_log when set.
Exchange ask(std::string_view context, std::string_view question, const LlmConfig& config);
Exchange ask(const AnalysisResult& result, std::string_view question, const LlmConfig& config);

nlohmann::json exchange_json(const Exchange& exchange);
void append_session_log(const std::filesystem::path& path, const Exchange& exchange);

}  // namespace bibx::llm
