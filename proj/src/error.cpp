#include "frackappa/error.hpp"

#include <utility>

namespace frackappa {

namespace {
std::string join(const std::vector<std::string>& problems) {
  std::string out = "invalid configuration";
  for (const auto& p : problems) out += "\n  " + p;
  return out;
}
}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error(join(problems)), problems_(std::move(problems)) {}

}  // namespace frackappa
