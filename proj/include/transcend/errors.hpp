// Copyright 2026 transcend authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace transcend {

// Base class for all typed failures thrown by the library. Callers that need
// to map failures to process exit codes catch the concrete types below.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A finite log-magnitude could not be produced (double overflow in log space).
class RangeExhausted : public Error {
 public:
  using Error::Error;
};

// 0 raised to a count that is only known in log form has no defined value.
class ZeroToLogOnlyPower : public Error {
 public:
  using Error::Error;
};

// An operation required an exact integer count but got a log-only one.
class ExactCountRequired : public Error {
 public:
  using Error::Error;
};

// A search exhausted its range without a hit.
class NotFound : public Error {
 public:
  using Error::Error;
};

// An iterative solve failed to reach its tolerance.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

// Parameter validation failed; every violated constraint is listed.
class ValidationFailure : public Error {
 public:
  explicit ValidationFailure(const std::string& what) : Error(what) {}
  ValidationFailure(const std::string& what, std::vector<std::string> violations)
      : Error(what), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Input lies outside the region the ledger can evaluate.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

// The requested relative tolerance is below the best available tail bound.
class TolUnreachable : public Error {
 public:
  using Error::Error;
};

// A guaranteed sign change was not found in the search bracket.
class BracketFailure : public Error {
 public:
  using Error::Error;
};

// Too few usable scales for a least-squares dimension fit.
class DegenerateFit : public Error {
 public:
  using Error::Error;
};

// An operation on a masked set got an empty mask.
class EmptySet : public Error {
 public:
  using Error::Error;
};

// A computation that needs explicit polynomial data was asked for a degree
// beyond its supported range.
class InfeasibleDegree : public Error {
 public:
  using Error::Error;
};

}  // namespace transcend
