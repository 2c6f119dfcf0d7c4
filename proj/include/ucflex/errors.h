#ifndef UCFLEX_ERRORS_H_
#define UCFLEX_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ucflex {

// Root of all library errors. Callers that do not care about the category
// can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance or model data violates an invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A document is well-formed but does not match the expected schema.
class SchemaError : public Error {
 public:
  SchemaError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Malformed text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column = 0)
      : Error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Structural problem in a MILP model (duplicate names, dangling references).
class ModelError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

// Instance too large for exhaustive enumeration.
class SizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace ucflex

#endif  // UCFLEX_ERRORS_H_
