#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace invbasis {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed term or identity text. `offset` is a 0-based character index
/// into the text that was handed to the parser.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class InvalidPosition : public Error {
 public:
  using Error::Error;
};

/// Evaluation against a finite algebra failed (unbound variable, element out of range).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A configured evaluation, node or time budget would be (or was) exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class PresetError : public Error {
 public:
  using Error::Error;
};

}  // namespace invbasis
