#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cwa {

// Base for every data error raised by the library. The CLI maps it to exit
// code 3 unless a more specific subclass says otherwise.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> cycle)
      : Error(format(cycle)), cycle_(std::move(cycle)) {}

  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  static std::string format(const std::vector<std::string>& cycle) {
    std::string out = "subclass cycle:";
    for (const auto& c : cycle) out += " " + c;
    return out;
  }

  std::vector<std::string> cycle_;
};

class UnknownClassError : public Error {
 public:
  explicit UnknownClassError(const std::string& name) : Error("unknown class: " + name) {}
};

class ConflictError : public Error {
 public:
  using Error::Error;
};

class CurationIncompleteError : public Error {
 public:
  using Error::Error;
};

class MalformedRowError : public Error {
 public:
  MalformedRowError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class TemplateError : public Error {
 public:
  using Error::Error;
};

class OpenFormulaError : public Error {
 public:
  using Error::Error;
};

class UnsupportedConstructError : public Error {
 public:
  using Error::Error;
};

class UnrecognizedShapeError : public Error {
 public:
  using Error::Error;
};

// Raised when both tests of a competency question are proved.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

// The external prover could not be used at all.
class ProverError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cwa
