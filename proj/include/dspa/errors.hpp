#pragma once

#include <stdexcept>
#include <string>

namespace dspa {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FileNotFound : ConfigError {
  using ConfigError::ConfigError;
};

struct BadImageFormat : ConfigError {
  using ConfigError::ConfigError;
};

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidOwnerMap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyHyperedgeIntersection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MissingHalo : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TileTooSmall : ConfigError {
  using ConfigError::ConfigError;
};

struct TransportFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProtocolViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Chain state became NaN/Inf or exceeded the divergence guard; signals a
// step-size violation.
struct NonFiniteState : std::runtime_error {
  long iteration;
  NonFiniteState(long t, const std::string& what)
      : std::runtime_error(what), iteration(t) {}
};

struct EmptyBuffer : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dspa
