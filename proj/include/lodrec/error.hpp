#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lodrec {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input. `line()` is 1-based, or 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error(message) {}
  ParseError(const std::string& source, std::size_t line, const std::string& message)
      : Error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

/// Well-formed input that violates a data contract (duplicate ids, unknown ids,
/// degenerate statistics, mismatched artifacts).
class DataError : public Error {
 public:
  using Error::Error;
};

class DuplicateIdError : public DataError {
 public:
  explicit DuplicateIdError(std::string id)
      : DataError("duplicate id: " + id), id_(std::move(id)) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class UnknownIdError : public DataError {
 public:
  explicit UnknownIdError(std::string id) : DataError("unknown id: " + id), id_(std::move(id)) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

/// Vectors built against different fragment vocabularies were compared or mixed.
class VocabularyMismatchError : public DataError {
 public:
  using DataError::DataError;
};

class DimensionMismatchError : public Error {
 public:
  DimensionMismatchError(std::size_t lhs, std::size_t rhs)
      : Error("dimension mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Bad arguments from the caller (k out of range, invalid weights, bad config keys).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace lodrec
