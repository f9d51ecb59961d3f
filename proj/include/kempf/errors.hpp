#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace kempf {

/// Input failed a structural precondition. `code` is a stable short name
/// (e.g. "ZeroCocharacter", "DimensionMismatch", "NotNilpotent") that tests
/// and the CLI can branch on without parsing the message.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Input could not be parsed (CLI arguments, JSON payloads, rationals).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A request exceeded a configured bound (sweep size guard).
class LimitExceeded : public std::runtime_error {
 public:
  explicit LimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant failed; indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace kempf
