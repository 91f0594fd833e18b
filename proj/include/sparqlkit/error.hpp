#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparqlkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LexError : public Error {
 public:
  enum class Kind { Empty, IllegalCharacter, UnterminatedLiteral };

  LexError(Kind kind, std::size_t offset, const std::string& message)
      : Error(message + " at byte " + std::to_string(offset)),
        kind_(kind),
        offset_(offset) {}

  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t token_index, const std::string& expected,
              const std::string& found)
      : Error("syntax error at token " + std::to_string(token_index) +
              ": expected " + expected + ", found " + found),
        token_index_(token_index),
        expected_(expected) {}

  std::size_t token_index() const { return token_index_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t token_index_;
  std::string expected_;
};

class UnsupportedFeature : public Error {
 public:
  UnsupportedFeature(std::size_t token_index, const std::string& feature)
      : Error("unsupported feature at token " + std::to_string(token_index) +
              ": " + feature),
        token_index_(token_index) {}

  std::size_t token_index() const { return token_index_; }

 private:
  std::size_t token_index_;
};

class InvalidPath : public Error {
 public:
  using Error::Error;
};

class EmptyLabel : public Error {
 public:
  EmptyLabel() : Error("label is empty after normalization") {}
};

class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t line, const std::string& reason)
      : Error("malformed line " + std::to_string(line) + ": " + reason),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class MalformedRecord : public Error {
 public:
  MalformedRecord(const std::string& where, const std::string& reason)
      : Error("malformed record " + where + ": " + reason) {}
};

class UnknownSchema : public Error {
 public:
  explicit UnknownSchema(const std::string& name)
      : Error("unknown dataset schema '" + name + "'") {}
};

class GoldUnparsable : public Error {
 public:
  explicit GoldUnparsable(const std::string& reason)
      : Error("gold query does not parse: " + reason) {}
};

class NetworkError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public NetworkError {
 public:
  using NetworkError::NetworkError;
};

class EndpointError : public Error {
 public:
  EndpointError(int status, std::string body_excerpt)
      : Error("endpoint returned HTTP " + std::to_string(status) + ": " +
              body_excerpt),
        status_(status),
        body_excerpt_(std::move(body_excerpt)) {}

  int status() const { return status_; }
  const std::string& body_excerpt() const { return body_excerpt_; }

 private:
  int status_;
  std::string body_excerpt_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sparqlkit
