#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qbm {

// Raised when a configuration or set of parameters violates a precondition.
// Carries every violation found, not only the first.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what)
      : std::invalid_argument(what), violations_{what} {}
  ConfigError(const std::string& what, std::vector<std::string> violations)
      : std::invalid_argument(what), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace qbm
