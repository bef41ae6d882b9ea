#pragma once

#include <stdexcept>
#include <string>

namespace l1rank {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A center tuple that does not satisfy the relations it was decoded against.
class EncodingError : public Error {
 public:
  using Error::Error;
};

class ContractError : public Error {
 public:
  using Error::Error;
};

// Raised when an enumeration would exceed its configured budget. `stage`
// names the pipeline stage that refused the work.
class BudgetError : public Error {
 public:
  BudgetError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace l1rank
