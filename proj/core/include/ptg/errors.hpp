#pragma once

#include <stdexcept>
#include <string>

namespace ptg {

// Raising a ladder index past the truncation bound. The message names the
// offending Fock index so callers can widen the truncation deliberately.
class TruncationOverflow : public std::runtime_error {
 public:
  explicit TruncationOverflow(const std::string& what) : std::runtime_error(what) {}
};

// Index or parameter outside the admissible range of an operation.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Operation requires a square Fock truncation (n1_max == n2_max).
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

// Sector operator is rank deficient, typically at an exceptional point.
class RankDeficiency : public std::runtime_error {
 public:
  explicit RankDeficiency(const std::string& what) : std::runtime_error(what) {}
};

// Matrix rejected by the finite biorthogonal builder: repeated eigenvalues
// within the gap tolerance, or dimension above the supported cap.
class NonDiagonalizable : public std::runtime_error {
 public:
  explicit NonDiagonalizable(const std::string& what) : std::runtime_error(what) {}
};

// Intertwining relation X H1 = H2 X fails, or the map kills the eigenvector.
class IntertwiningError : public std::runtime_error {
 public:
  explicit IntertwiningError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ptg
