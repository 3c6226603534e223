#pragma once

#include <stdexcept>
#include <string>

namespace hm {

// Exact searches must never report "ran out of budget" as a negative answer,
// so budget exhaustion is its own exception type.
class BudgetExhausted : public std::runtime_error {
  public:
    explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

class InvalidArity : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class InvalidPattern : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedParameter : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class NoAbsorberError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace hm
