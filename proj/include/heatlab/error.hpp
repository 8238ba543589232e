#pragma once

#include <stdexcept>
#include <string>

namespace heatlab {

// Exit-code families: config errors are the caller's input, precondition
// errors are evaluator/solver inputs that are well-formed but inadmissible,
// numeric errors are failures of a numerical method on admissible input.

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace heatlab
