#pragma once

#include <atomic>
#include <chrono>
#include <string>
#include <thread>

// Minimal HTTP/1.1 responder on 127.0.0.1 that counts accepted connections.
// Each connection gets the configured status and body, optionally after a
// delay, and is then closed.
class StubServer {
 public:
  StubServer();
  ~StubServer();
  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  int port() const { return port_; }
  std::string endpoint() const;  // http://127.0.0.1:<port>/v1/chat/completions

  void respond(int status, std::string body);
  void delay(std::chrono::milliseconds d) { delay_ms_ = static_cast<int>(d.count()); }

  int connections() const { return connections_.load(); }
  std::string last_request() const;

 private:
  void serve();

  int listen_fd_ = -1;
  int port_ = 0;
  std::atomic<bool> stop_{false};
  std::atomic<int> connections_{0};
  std::atomic<int> delay_ms_{0};
  std::atomic<int> status_{200};
  std::string body_;
  std::string last_request_;
  mutable std::atomic_flag lock_ = ATOMIC_FLAG_INIT;
  std::thread thread_;
};

// Chat-completion JSON carrying `answer` as choices[0].message.content.
std::string completion_body(const std::string& answer);
