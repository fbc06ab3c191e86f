#include "uq/generators.hpp"

#include <algorithm>
#include <cmath>

#include "uq/common.hpp"
#include "uq/rng.hpp"
#include "uq/text.hpp"

namespace uq {

void GeneratorRequest::validate() const {
  require(n_samples >= 1, "GeneratorRequest: n_samples must be >= 1");
  require(temperature > 0.0, "GeneratorRequest: temperature must be positive");
  require(max_tokens >= 1, "GeneratorRequest: max_tokens must be >= 1");
}

double sequence_logprob(const ScoredSample& sample, bool normalize) {
  if (!normalize) return sample.log_prob;
  require(sample.token_count >= 1, "sequence_logprob: token_count must be >= 1");
  return sample.log_prob / static_cast<double>(sample.token_count);
}

void MockBehavior::validate() const {
  require(faithfulness >= 0.0 && faithfulness <= 1.0, "MockBehavior: faithfulness in [0,1]");
  require(call_noise >= 0.0 && call_noise <= 1.0, "MockBehavior: call_noise in [0,1]");
  if (faithfulness < 1.0) {
    require(!distractor_answers.empty(),
            "MockBehavior: faithfulness < 1 requires distractor answers");
  }
}

MockGenerator::MockGenerator(MockBehavior behavior) : behavior_(std::move(behavior)) {
  behavior_.validate();
}

namespace {

std::size_t count_tokens(const std::string& text) {
  auto toks = split_ws(text);
  return toks.empty() ? 1 : toks.size();
}

// Rightmost answer_map key occurring in the context; ties at the same
// position go to the longest key. Few-shot examples render earlier in the
// context, so the final question's tool result wins.
const std::string* find_context_key(const std::map<std::string, std::string>& answer_map,
                                    const std::string& context) {
  const std::string* best = nullptr;
  std::size_t best_pos = 0;
  std::size_t best_len = 0;
  for (const auto& [key, _] : answer_map) {
    if (key.empty()) continue;
    std::size_t pos = context.rfind(key);
    if (pos == std::string::npos) continue;
    if (!best || pos > best_pos || (pos == best_pos && key.size() > best_len)) {
      best = &key;
      best_pos = pos;
      best_len = key.size();
    }
  }
  return best;
}

int decimals_in_token(const std::string& tok) {
  std::size_t dot = tok.find('.');
  return dot == std::string::npos ? 0 : static_cast<int>(tok.size() - dot - 1);
}

struct WeightedString {
  std::string text;
  double prob;
};

std::vector<ScoredSample> sample_from(const std::vector<WeightedString>& options,
                                      std::size_t n_samples, Rng& rng) {
  std::vector<double> probs;
  probs.reserve(options.size());
  for (const auto& o : options) probs.push_back(o.prob);
  std::vector<ScoredSample> out;
  out.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    std::size_t idx = rng.categorical(probs);
    const auto& opt = options[idx];
    out.push_back(ScoredSample{opt.text, std::log(opt.prob), count_tokens(opt.text)});
  }
  return out;
}

}  // namespace

std::vector<ScoredSample> MockGenerator::generate(const GeneratorRequest& request) {
  request.validate();
  Rng rng(request.seed.value_or(0));

  if (const std::string* key = find_context_key(behavior_.answer_map, request.context);
      key != nullptr || request.context.find(kToolResultMarker) != std::string::npos) {
    std::vector<WeightedString> options;
    if (key != nullptr) {
      const std::string& gold = behavior_.answer_map.at(*key);
      options.push_back({gold, behavior_.faithfulness});
      std::vector<const std::string*> others;
      for (const auto& d : behavior_.distractor_answers) {
        if (d != gold) others.push_back(&d);
      }
      if (behavior_.faithfulness < 1.0) {
        require(!others.empty(), "MockGenerator: no distractors distinct from the gold answer");
        double spread = (1.0 - behavior_.faithfulness) / static_cast<double>(others.size());
        for (const auto* d : others) options.push_back({*d, spread});
      }
    } else {
      // Tool result present but unmapped: the mock has no grounded answer.
      require(!behavior_.distractor_answers.empty(),
              "MockGenerator: unmapped tool result and no distractor answers");
      double p = 1.0 / static_cast<double>(behavior_.distractor_answers.size());
      for (const auto& d : behavior_.distractor_answers) options.push_back({d, p});
    }
    return sample_from(options, request.n_samples, rng);
  }

  // Tool-call mode: features come from the last question in the context.
  std::size_t q_pos = request.context.rfind(kQuestionMarker);
  std::string scope = q_pos == std::string::npos
                          ? request.context
                          : request.context.substr(q_pos + std::string(kQuestionMarker).size());
  std::vector<std::string> tokens = extract_number_tokens(scope);
  require(!tokens.empty(), "MockGenerator: no numeric features found in context");

  auto join = [](const std::vector<std::string>& toks) {
    std::string s = "[";
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (i > 0) s += ", ";
      s += toks[i];
    }
    s += "]";
    return s;
  };

  const std::string correct = join(tokens);
  const double noise = behavior_.call_noise;
  const std::size_t variants = 2 * tokens.size();

  std::vector<ScoredSample> out;
  out.reserve(request.n_samples);
  for (std::size_t i = 0; i < request.n_samples; ++i) {
    if (noise <= 0.0 || rng.uniform() >= noise) {
      double p = 1.0 - noise;
      out.push_back(ScoredSample{correct, std::log(p), count_tokens(correct)});
    } else {
      std::size_t choice = rng.uniform_index(variants);
      std::size_t feat = choice / 2;
      double sign = (choice % 2 == 0) ? 1.0 : -1.0;
      std::vector<std::string> perturbed = tokens;
      double value = std::stod(tokens[feat]) + sign * 0.1;
      int decimals = std::max(1, decimals_in_token(tokens[feat]));
      perturbed[feat] = format_decimal(value, decimals);
      std::string text = join(perturbed);
      double p = noise / static_cast<double>(variants);
      out.push_back(ScoredSample{text, std::log(p), count_tokens(text)});
    }
  }
  return out;
}

}  // namespace uq
