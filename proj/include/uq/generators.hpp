#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uq/prob.hpp"

namespace uq {

struct GeneratorRequest {
  std::string context;
  std::size_t n_samples = 1;
  double temperature = 1.0;
  std::size_t max_tokens = 64;
  std::optional<uint64_t> seed;

  void validate() const;
};

/// Sampling interface over a text generator. Implementations must report
/// honest sequence log-probabilities; fabricating them is not allowed.
class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  virtual std::vector<ScoredSample> generate(const GeneratorRequest& request) = 0;
  /// Whether the orchestrator may issue calls from multiple threads.
  virtual bool supports_concurrent_calls() const { return false; }
  virtual std::string name() const = 0;
};

/// Raw sum of token log-probs, or the per-token mean when normalize is set.
double sequence_logprob(const ScoredSample& sample, bool normalize);

/// Scripted behavior for the offline mock generator.
///
/// Answer mode: when the request context contains a rendered tool output
/// known to answer_map, the mock emits that output's mapped answer with
/// probability `faithfulness` and spreads the rest uniformly over the other
/// distractor answers. Unknown contexts fall back to a uniform draw over
/// distractor_answers.
///
/// Tool-call mode: otherwise the mock extracts the numeric features of the
/// final question in the context and emits them as a bracketed list; with
/// probability call_noise one feature is perturbed by +/-0.1.
struct MockBehavior {
  std::map<std::string, std::string> answer_map;
  double faithfulness = 1.0;
  std::vector<std::string> distractor_answers;
  double call_noise = 0.0;

  void validate() const;
};

class MockGenerator final : public TextGenerator {
 public:
  explicit MockGenerator(MockBehavior behavior);

  std::vector<ScoredSample> generate(const GeneratorRequest& request) override;
  bool supports_concurrent_calls() const override { return true; }
  std::string name() const override { return "mock"; }

  const MockBehavior& behavior() const { return behavior_; }

 private:
  MockBehavior behavior_;
};

/// Context markers shared by the prompt builder and the mock generator.
inline constexpr const char* kQuestionMarker = "Question:";
inline constexpr const char* kToolResultMarker = "Tool result:";

}  // namespace uq
