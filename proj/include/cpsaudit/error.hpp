#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cpsaudit {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 1-based position inside a source text.
struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public Error {
 public:
  ParseError(SourceLocation where, std::string message, std::string snippet);

  std::size_t line() const { return where_.line; }
  std::size_t column() const { return where_.column; }
  const std::string& message() const { return message_; }
  const std::string& snippet() const { return snippet_; }

 private:
  SourceLocation where_;
  std::string message_;
  std::string snippet_;
};

// A CURIE whose label has no binding. Carries a position when raised by a
// parser.
class UnknownPrefix : public Error {
 public:
  explicit UnknownPrefix(std::string label,
                         std::optional<SourceLocation> where = std::nullopt);

  const std::string& label() const { return label_; }
  const std::optional<SourceLocation>& where() const { return where_; }

 private:
  std::string label_;
  std::optional<SourceLocation> where_;
};

class InvalidTerm : public Error {
 public:
  using Error::Error;
};

class SectionConflict : public Error {
 public:
  using Error::Error;
};

class PrefixConflict : public Error {
 public:
  using Error::Error;
};

class SafetyError : public Error {
 public:
  using Error::Error;
};

class DuplicateRule : public Error {
 public:
  using Error::Error;
};

// A predicate depends on its own negation. `cycle` lists the predicates
// along the offending dependency cycle.
class NegativeCycle : public Error {
 public:
  explicit NegativeCycle(std::vector<std::string> cycle);
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

class IterationLimit : public Error {
 public:
  explicit IterationLimit(std::size_t limit);
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

class NotDerived : public Error {
 public:
  using Error::Error;
};

class MalformedShape : public Error {
 public:
  using Error::Error;
};

// Failure while reading or parsing one input file; what() is
// "<path>: <cause>".
class LoadError : public Error {
 public:
  LoadError(std::string path, const std::string& cause)
      : Error(path + ": " + cause), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace cpsaudit
