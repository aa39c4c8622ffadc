#pragma once

#include <stdexcept>
#include <string>

namespace metrobound {

/// Precondition on a parameter value violated (|alpha| > 1, odd N for a singlet, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Requested representation exceeds the configured full-space cap.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Operands live in different spaces.
class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Two routes to the same quantity disagree; indicates a transcription bug.
class ComputationError : public std::logic_error {
 public:
  explicit ComputationError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace metrobound
