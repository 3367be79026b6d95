#pragma once

#include <stdexcept>
#include <string>

namespace sdea {

// Invalid model configuration or dataset handed to a model builder.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input file. The message carries the row/column location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A solve stage ended without an optimal point (infeasible, unbounded,
// numerical trouble). `stage()` names which stage failed.
class ModelError : public std::runtime_error {
 public:
  ModelError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace sdea
