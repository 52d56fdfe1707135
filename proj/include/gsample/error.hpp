#pragma once

#include <stdexcept>
#include <string>

namespace gsample {

enum class ErrorCode {
  kInvalidArgument = 1,
  kIo = 2,
  kParse = 3,
  kEmptyGraph = 4,
  kUnknownNode = 5,
  kUnsupported = 6,
  kConvergence = 7,
};

/// Base for every error raised by the library. The code maps one-to-one onto
/// the C API status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::kInvalidArgument, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(ErrorCode::kParse, what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyGraphError : public Error {
 public:
  explicit EmptyGraphError(const std::string& what)
      : Error(ErrorCode::kEmptyGraph, what) {}
};

class UnknownNodeError : public Error {
 public:
  explicit UnknownNodeError(const std::string& what)
      : Error(ErrorCode::kUnknownNode, what) {}
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what)
      : Error(ErrorCode::kUnsupported, what) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what)
      : Error(ErrorCode::kConvergence, what) {}
};

}  // namespace gsample
