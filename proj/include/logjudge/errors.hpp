#pragma once

#include <stdexcept>
#include <string>

namespace logjudge {

/// Base of every error raised while loading or solving.
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedClause : public EngineError {
 public:
  using EngineError::EngineError;
};

class UnknownTag : public EngineError {
 public:
  explicit UnknownTag(const std::string& tag) : EngineError("unknown evidence tag '" + tag + "'"), tag_(tag) {}
  const std::string& tag() const noexcept { return tag_; }

 private:
  std::string tag_;
};

/// Raised when a derivation would go deeper than the configured limit;
/// usually a sign of an unintended recursive rule.
class DepthLimitExceeded : public EngineError {
 public:
  using EngineError::EngineError;
};

/// Negation as failure called on a goal that still has unbound variables.
class NonGroundNaf : public EngineError {
 public:
  using EngineError::EngineError;
};

class InstantiationError : public EngineError {
 public:
  using EngineError::EngineError;
};

class TypeError : public EngineError {
 public:
  using EngineError::EngineError;
};

}  // namespace logjudge
