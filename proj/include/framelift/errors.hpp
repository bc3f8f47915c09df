#ifndef FRAMELIFT_ERRORS_HPP
#define FRAMELIFT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace framelift {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct LexError : Error {
  std::size_t position;
  LexError(std::size_t pos, const std::string& msg)
      : Error("lex error at offset " + std::to_string(pos) + ": " + msg), position(pos) {}
};

struct ParseError : Error {
  std::size_t position;
  std::string expected;
  ParseError(std::size_t pos, const std::string& what_expected)
      : Error("parse error at offset " + std::to_string(pos) + ": expected " + what_expected),
        position(pos),
        expected(what_expected) {}
};

struct UnknownIdentifier : Error {
  std::size_t position;
  std::string name;
  UnknownIdentifier(std::size_t pos, const std::string& ident)
      : Error("unknown identifier '" + ident + "' at offset " + std::to_string(pos)),
        position(pos),
        name(ident) {}
};

// Evaluation left the real domain (log/sqrt of a negative number, division by
// zero, non-integer power of a negative base).
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error("domain error: " + msg) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& msg) : Error("dimension error: " + msg) {}
};

struct SingularFrame : Error {
  double det;
  explicit SingularFrame(double d)
      : Error("singular frame: |det e| = " + std::to_string(d)), det(d) {}
};

struct SingularMetric : Error {
  explicit SingularMetric(const std::string& msg) : Error("singular metric: " + msg) {}
};

struct UnknownScene : Error {
  explicit UnknownScene(const std::string& name) : Error("unknown scene '" + name + "'") {}
};

struct UnknownSuite : Error {
  explicit UnknownSuite(const std::string& name) : Error("unknown suite '" + name + "'") {}
};

struct SceneMismatch : Error {
  explicit SceneMismatch(const std::string& msg) : Error("scene mismatch: " + msg) {}
};

// Scene document violated the schema; `path` points at the offending field.
struct SchemaError : Error {
  std::string path;
  SchemaError(const std::string& at, const std::string& msg)
      : Error("schema error at " + at + ": " + msg), path(at) {}
};

struct QuadratureError : Error {
  explicit QuadratureError(const std::string& msg) : Error("quadrature error: " + msg) {}
};

}  // namespace framelift

#endif
