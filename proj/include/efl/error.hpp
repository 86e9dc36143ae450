#pragma once

#include <stdexcept>
#include <string>

namespace efl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown world, agent or nominal; malformed model construction.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A transformation produced a structure that is not an EFL model.
class EFLViolation : public Error {
 public:
  using Error::Error;
};

/// An assigned K relates different agents, or F/D relates different worlds.
class CrossDimensionError : public EFLViolation {
 public:
  using EFLViolation::EFLViolation;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace efl
