#pragma once

#include <memory>
#include <span>
#include <string>

#include "uq/prob.hpp"

namespace uq {

/// Directional entailment judge used to build semantic classes. Any oracle
/// must satisfy entails(s, s) == true.
class EquivalenceOracle {
 public:
  virtual ~EquivalenceOracle() = default;
  virtual bool entails(const std::string& premise, const std::string& hypothesis) const = 0;
  virtual std::string name() const = 0;
};

/// True iff the normalized forms (lowercase, punctuation stripped, whitespace
/// collapsed) are equal. Symmetric, hence bidirectional by construction.
class NormalizedMatchOracle final : public EquivalenceOracle {
 public:
  bool entails(const std::string& premise, const std::string& hypothesis) const override;
  std::string name() const override { return "normalized-match"; }
};

/// Exact string equality.
class ExactMatchOracle final : public EquivalenceOracle {
 public:
  bool entails(const std::string& premise, const std::string& hypothesis) const override {
    return premise == hypothesis;
  }
  std::string name() const override { return "exact-match"; }
};

bool normalized_match(const std::string& a, const std::string& b);

/// Greedy clustering: each sample joins the first class whose representative
/// (first member) it bidirectionally entails, else founds a new class.
/// Deterministic given sample order.
SemanticPartition cluster(std::span<const ScoredSample> samples, const EquivalenceOracle& oracle);

}  // namespace uq
