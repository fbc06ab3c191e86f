#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uq/generators.hpp"
#include "uq/prob.hpp"
#include "uq/tool_call.hpp"
#include "uq/tools.hpp"

namespace uq {

struct FewShotExample {
  std::string question;
  std::string tool_call;
  std::string answer;
};

struct Prompt {
  std::string question_id;
  std::string text;  // the question itself
  std::vector<FewShotExample> few_shot;

  void validate() const;
};

/// One traversal of the system: tool call, tool output draw, and the answer
/// samples conditioned on (prompt, rendered tool output).
struct EpisodeSample {
  Prompt prompt;
  ToolCall tool_call;
  std::string tool_output_label;
  std::string tool_output_rendered;
  Categorical tool_dist;
  std::vector<ScoredSample> answers;
  uint64_t seed = 0;
  bool failed = false;
  std::string failure_reason;
};

enum class UnparseableCallPolicy { kFailEpisode, kRetry };

struct EpisodeConfig {
  std::size_t n_answer_samples = 10;
  std::string render_template = "{}";
  UnparseableCallPolicy unparseable_policy = UnparseableCallPolicy::kFailEpisode;
  std::size_t max_retries = 2;
  double temperature = 1.0;
  std::size_t max_tokens = 64;
};

/// Builds the tool-call prompt: instructions, few-shot (question, call)
/// pairs, then the question awaiting a call.
std::string build_call_context(const Prompt& prompt);

/// Builds the final-answer prompt: few-shot (question, tool result, answer)
/// triples, then the question with its rendered tool output.
std::string build_answer_context(const Prompt& prompt, const std::string& rendered_output,
                                 const std::string& render_template);

/// Runs one episode: samples a tool call, invokes the tool, draws z from the
/// tool's distribution, renders it, then samples the answers. Deterministic
/// given the seed and a deterministic generator. A call that stays
/// unparseable after the configured policy marks the episode failed; it never
/// silently contributes to metrics.
EpisodeSample run_episode(const Prompt& prompt, TextGenerator& generator, const Tool& tool,
                          const EpisodeConfig& config, uint64_t seed);

void write_episode_log(const std::string& path, std::span<const EpisodeSample> episodes);
std::vector<EpisodeSample> read_episode_log(const std::string& path);

}  // namespace uq
