#pragma once

#include <stdexcept>
#include <string>

namespace xgs {

enum class ErrorKind {
  ZeroVector,
  DimensionMismatch,
  BranchLimitExceeded,
  IllFormedWord,
  InconsistentMap,
  UnknownCatalogEntry,
  MissingSigma,
  HypothesisViolated,
  UnsupportedDimension,
  InvalidSigmaData,
  ParseError,
  VersionError,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it to a diagnostic without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures remember where they happened (1-based).
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorKind::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

inline void require_dim(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(where) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace xgs
