#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dcsim {

// Root of every error raised by the simulator. The CLI maps the subclasses
// below onto exit codes, so new error kinds should derive from one of them.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed structured text (config JSON). Carries the 1-based line when the
// parser reports one, 0 otherwise.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A value parsed fine but is outside its documented domain.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& constraint)
      : Error(field + ": " + constraint), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// A data file does not have the expected layout (header, column set, record
// count).
class FormatError : public Error {
 public:
  using Error::Error;
};

// A numeric function was called outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A caller broke an API contract, e.g. a controller emitted an action index
// outside {0, 1, 2}.
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcsim
