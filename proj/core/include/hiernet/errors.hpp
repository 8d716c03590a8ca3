#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hiernet {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- graph construction / lookup ----

class UnknownNodeError : public Error {
 public:
  explicit UnknownNodeError(const std::string& id)
      : Error("unknown node: " + id) {}
};

class KindConflictError : public Error {
 public:
  using Error::Error;
};

class IllegalEdgeError : public Error {
 public:
  using Error::Error;
};

class HierarchyViolationError : public Error {
 public:
  using Error::Error;
};

class NotADocumentError : public Error {
 public:
  explicit NotADocumentError(const std::string& id)
      : Error("node is not a document: " + id) {}
};

// ---- extraction ----

class MalformedOutlineError : public Error {
 public:
  MalformedOutlineError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// ---- walks ----

class NotAdjacentError : public Error {
 public:
  using Error::Error;
};

class InvalidSchemaError : public Error {
 public:
  using Error::Error;
};

// ---- embedding ----

class EmptyCorpusError : public Error {
 public:
  EmptyCorpusError() : Error("walk corpus is empty") {}
  using Error::Error;
};

class IndexOutOfRangeError : public Error {
 public:
  using Error::Error;
};

class UnknownIdError : public Error {
 public:
  explicit UnknownIdError(const std::string& id)
      : Error("id not in vocabulary: " + id) {}
};

// ---- evaluation ----

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ScoreOutOfRangeError : public Error {
 public:
  ScoreOutOfRangeError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

class ZeroVarianceError : public Error {
 public:
  using Error::Error;
};

class MissingPredictionError : public Error {
 public:
  MissingPredictionError(const std::string& a, const std::string& b)
      : Error("no prediction for pair (" + a + ", " + b + ")") {}
};

// ---- pipeline ----

// Bad or inconsistent configuration (missing config paths, artifacts built
// under a different configuration, unknown method names).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An earlier stage's output is required but absent.
class MissingArtifactError : public Error {
 public:
  explicit MissingArtifactError(const std::string& path)
      : Error("missing artifact: " + path + " (run the earlier stages first)") {
  }
};

}  // namespace hiernet
