#ifndef DAMPL_ERROR_HPP
#define DAMPL_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace dampl {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A function argument left its admissible domain (e.g. chi outside [0,1]).
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A scenario or operation was configured inconsistently.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Scenario validation failed; carries every violation found, not just the first.
class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<std::string> issues)
      : Error(join(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const { return issues_; }

private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "scenario validation failed:";
    for (const auto& i : v) {
      s += "\n  - ";
      s += i;
    }
    return s;
  }
  std::vector<std::string> issues_;
};

// Iterative solver did not reach its target (CG divergence, AM stall).
class SolverError : public Error {
public:
  explicit SolverError(const std::string& msg) : Error(msg) {}
};

}  // namespace dampl

#endif
