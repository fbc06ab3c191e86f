#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace uq {

/// Raised when an upstream service (generator, NLI, embedding) fails or
/// returns a payload we cannot use.
class UpstreamError : public std::runtime_error {
 public:
  explicit UpstreamError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when AUROC is requested for a single-class label set.
class UndefinedAurocError : public std::runtime_error {
 public:
  explicit UndefinedAurocError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline void require_finite(double x, const std::string& name) {
  if (!std::isfinite(x)) throw std::invalid_argument(name + " must be finite");
}

}  // namespace uq
