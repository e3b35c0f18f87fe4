#pragma once

#include <stdexcept>
#include <string>

namespace a2g {

// Argument outside the documented domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Not enough samples left to satisfy a request.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A statistic cannot be formed from the data (e.g. zero-energy CP windows).
class EstimateUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed binary or text input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Content that parses but violates an invariant (unsorted timestamps, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Too many frames of a run failed for its results to stand.
class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace a2g
