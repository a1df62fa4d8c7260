#pragma once

#include <stdexcept>
#include <string>

namespace dp4kit {

// Bad input: malformed JSON, out-of-range parameters, unsupported fields.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical precondition failed (e.g. a pencil that is not squarefree).
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration would exceed the configured work budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, double estimate, double budget)
      : std::runtime_error(what), estimate_(estimate), budget_(budget) {}
  double estimate() const { return estimate_; }
  double budget() const { return budget_; }

 private:
  double estimate_;
  double budget_;
};

}  // namespace dp4kit
