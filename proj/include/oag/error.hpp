#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oag {

enum class ErrorKind {
  DomainMismatch,
  IllFormedSchema,
  Parse,
  PredicateLeak,
  UnknownPredicate,
  ResourceLimit,
  NotASentence,
  MissingAssignment,
  DegenerateInterval,
  InvalidCover,
  NotAFunction,
  Structure,
  Usage,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Byte range in parser input; line and column are 1-based.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceSpan span)
      : Error(ErrorKind::Parse, std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message),
        message_(message),
        span_(span) {}

  const std::string& message() const noexcept { return message_; }
  const SourceSpan& span() const noexcept { return span_; }

 private:
  std::string message_;
  SourceSpan span_;
};

}  // namespace oag
