#pragma once

#include <stdexcept>
#include <string>

namespace sandpile {

// Raised when an order is requested for an element or group that is infinite.
class InfiniteOrderError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Element-order statistics that no finite abelian group realizes.
class MalformedStatisticsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A brute-force enumeration would exceed its configured cap.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reduced Laplacian of a one-vertex graph.
class EmptyMatrixError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed matrix text; line() is 1-based.
class MatrixParseError : public std::runtime_error {
 public:
  MatrixParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sandpile
