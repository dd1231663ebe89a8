#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexctx {

// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed input stream. `line()` is 1-based; 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class EmptyDatasetError : public Error {
 public:
  using Error::Error;
};

class SplitError : public Error {
 public:
  using Error::Error;
};

// A target span that covers no subtoken.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

class EmptyTrainingError : public Error {
 public:
  using Error::Error;
};

class SingularComponentError : public Error {
 public:
  SingularComponentError(std::size_t component)
      : Error("PCA component " + std::to_string(component) + " has near-zero variance; cannot whiten"),
        component_(component) {}
  std::size_t component() const { return component_; }

 private:
  std::size_t component_;
};

class UndefinedSimilarityError : public Error {
 public:
  using Error::Error;
};

class DegenerateTuningError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lexctx
