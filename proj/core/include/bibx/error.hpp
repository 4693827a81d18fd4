#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bibx {

// Base of every library failure. exit_code() is what the CLI reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 2; }
};

// Bad arguments or an operation called outside its preconditions.
class UsageError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 1; }
};

// Malformed or insufficient input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// Input text that failed to parse; offset is a byte offset (BibTeX) or a
// 1-based line number (MEDLINE), as named by `unit`.
class ParseError : public DataError {
 public:
  ParseError(std::size_t offset, const std::string& message, const char* unit = "offset")
      : DataError(std::string(unit) + " " + std::to_string(offset) + ": " + message),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// A filter or analysis produced zero documents.
class EmptyCorpusError : public DataError {
 public:
  EmptyCorpusError() : DataError("empty corpus") {}
  explicit EmptyCorpusError(const std::string& what) : DataError(what) {}
};

// The corpus lacks the data an analysis needs (too few abstracts, no
// references, ...).
class UnavailableError : public DataError {
 public:
  using DataError::DataError;
};

// Failures talking to the external chat-completion service.
class ServiceError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

class ConfigError : public ServiceError {
 public:
  using ServiceError::ServiceError;
};

class TimeoutError : public ServiceError {
 public:
  using ServiceError::ServiceError;
};

class ProtocolError : public ServiceError {
 public:
  using ServiceError::ServiceError;
};

}  // namespace bibx
