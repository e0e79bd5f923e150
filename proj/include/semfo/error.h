// Copyright 2026 The semfo Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef SEMFO_ERROR_H_
#define SEMFO_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semfo {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A value was used with a semiring whose carrier does not contain it.
class CarrierMismatch : public Error {
 public:
  explicit CarrierMismatch(const std::string& what) : Error("carrier mismatch: " + what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A bounded search or enumeration would exceed its configured size limit.
class GuardExceeded : public Error {
 public:
  explicit GuardExceeded(const std::string& what) : Error("guard exceeded: " + what) {}
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error("precondition violated: " + what) {}
};

class NotModelDefining : public Error {
 public:
  explicit NotModelDefining(const std::string& literal)
      : Error("interpretation is not model-defining at literal " + literal), literal_(literal) {}
  const std::string& literal() const { return literal_; }

 private:
  std::string literal_;
};

// An internal self-check of a constructed object failed.
class VerificationFailure : public Error {
 public:
  explicit VerificationFailure(const std::string& what) : Error("verification failed: " + what) {}
};

}  // namespace semfo

#endif  // SEMFO_ERROR_H_
