#include "uq/pipeline.hpp"

#include <fstream>

#include "uq/common.hpp"
#include "uq/rng.hpp"

#include "json.hpp"

namespace uq {

void Prompt::validate() const {
  require(!text.empty(), "Prompt: text must be non-empty");
}

std::string build_call_context(const Prompt& prompt) {
  std::string ctx =
      "Extract the numeric features from the question and produce the tool call "
      "as a bracketed list of values.\n\n";
  for (const auto& ex : prompt.few_shot) {
    ctx += std::string(kQuestionMarker) + " " + ex.question + "\n";
    ctx += "Tool call: " + ex.tool_call + "\n\n";
  }
  ctx += std::string(kQuestionMarker) + " " + prompt.text + "\n";
  ctx += "Tool call:";
  return ctx;
}

std::string build_answer_context(const Prompt& prompt, const std::string& rendered_output,
                                 const std::string& render_template) {
  std::string ctx = "Answer the question briefly, in one word if possible, using the tool result.\n\n";
  for (const auto& ex : prompt.few_shot) {
    ctx += std::string(kQuestionMarker) + " " + ex.question + "\n";
    ctx += std::string(kToolResultMarker) + " " +
           render_tool_output(ex.answer, render_template) + "\n";
    ctx += "Answer: " + ex.answer + "\n\n";
  }
  ctx += std::string(kQuestionMarker) + " " + prompt.text + "\n";
  if (!rendered_output.empty()) {
    ctx += std::string(kToolResultMarker) + " " + rendered_output + "\n";
  }
  ctx += "Answer:";
  return ctx;
}

EpisodeSample run_episode(const Prompt& prompt, TextGenerator& generator, const Tool& tool,
                          const EpisodeConfig& config, uint64_t seed) {
  prompt.validate();
  require(config.n_answer_samples >= 1, "run_episode: n_answer_samples must be >= 1");

  EpisodeSample episode;
  episode.prompt = prompt;
  episode.seed = seed;

  const std::string call_context = build_call_context(prompt);
  const std::size_t attempts =
      config.unparseable_policy == UnparseableCallPolicy::kRetry ? config.max_retries + 1 : 1;

  ToolCall call;
  bool have_call = false;
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    GeneratorRequest req;
    req.context = call_context;
    req.n_samples = 1;
    req.temperature = config.temperature;
    req.max_tokens = config.max_tokens;
    req.seed = derive_seed(seed, "call", attempt);
    std::vector<ScoredSample> samples;
    try {
      samples = generator.generate(req);
    } catch (const std::exception& e) {
      throw UpstreamError("run_episode: tool-call generation failed for question " +
                          prompt.question_id + ": " + e.what());
    }
    require(!samples.empty(), "run_episode: generator returned no samples");
    call = parse_tool_call(samples.front().text, samples.front().log_prob);
    if (call.parsed() || call.is_null) {
      have_call = true;
      break;
    }
  }
  episode.tool_call = call;
  if (!have_call) {
    episode.failed = true;
    episode.failure_reason = "unparseable tool call: " + call.raw_text;
    return episode;
  }

  if (call.is_null) {
    // Null tool: no invocation, zero tool entropy.
    episode.tool_dist = Categorical::point_mass("__null__");
    episode.tool_output_label = "__null__";
    episode.tool_output_rendered = "";
  } else {
    episode.tool_dist = tool.output_distribution(call, prompt.question_id);
    Rng rng(derive_seed(seed, "tool-output", 0));
    std::size_t z_idx = rng.categorical(episode.tool_dist.probs);
    episode.tool_output_label = episode.tool_dist.labels[z_idx];
    episode.tool_output_rendered =
        render_tool_output(episode.tool_output_label, config.render_template);
  }

  GeneratorRequest req;
  req.context = build_answer_context(prompt, episode.tool_output_rendered, config.render_template);
  req.n_samples = config.n_answer_samples;
  req.temperature = config.temperature;
  req.max_tokens = config.max_tokens;
  req.seed = derive_seed(seed, "answers", 0);
  try {
    episode.answers = generator.generate(req);
  } catch (const std::exception& e) {
    throw UpstreamError("run_episode: answer generation failed for question " +
                        prompt.question_id + ": " + e.what());
  }
  require(episode.answers.size() == config.n_answer_samples,
          "run_episode: generator returned wrong sample count");
  return episode;
}

namespace {

nlohmann::json episode_to_json(const EpisodeSample& e) {
  nlohmann::json j;
  j["question_id"] = e.prompt.question_id;
  j["question_text"] = e.prompt.text;
  j["tool_call_text"] = e.tool_call.raw_text;
  if (e.tool_call.parsed()) j["parsed_features"] = *e.tool_call.parsed_features;
  j["tool_call_log_prob"] = e.tool_call.log_prob;
  j["tool_call_is_null"] = e.tool_call.is_null;
  j["z_label"] = e.tool_output_label;
  j["z_rendered"] = e.tool_output_rendered;
  if (!e.tool_dist.probs.empty()) {
    j["tool_dist"] = {{"labels", e.tool_dist.labels}, {"probs", e.tool_dist.probs}};
  }
  nlohmann::json answers = nlohmann::json::array();
  for (const auto& a : e.answers) {
    answers.push_back({{"text", a.text}, {"log_prob", a.log_prob}, {"token_count", a.token_count}});
  }
  j["answers"] = answers;
  j["seed"] = e.seed;
  j["failed"] = e.failed;
  if (e.failed) j["failure_reason"] = e.failure_reason;
  return j;
}

EpisodeSample episode_from_json(const nlohmann::json& j) {
  EpisodeSample e;
  e.prompt.question_id = j.at("question_id").get<std::string>();
  e.prompt.text = j.value("question_text", std::string("?"));
  e.tool_call.raw_text = j.at("tool_call_text").get<std::string>();
  if (j.contains("parsed_features")) {
    e.tool_call.parsed_features = j["parsed_features"].get<std::vector<double>>();
  }
  e.tool_call.log_prob = j.at("tool_call_log_prob").get<double>();
  e.tool_call.is_null = j.value("tool_call_is_null", false);
  e.tool_output_label = j.value("z_label", std::string());
  e.tool_output_rendered = j.value("z_rendered", std::string());
  if (j.contains("tool_dist")) {
    e.tool_dist.labels = j["tool_dist"].at("labels").get<std::vector<std::string>>();
    e.tool_dist.probs = j["tool_dist"].at("probs").get<std::vector<double>>();
  }
  for (const auto& a : j.at("answers")) {
    e.answers.push_back(ScoredSample{a.at("text").get<std::string>(),
                                     a.at("log_prob").get<double>(),
                                     a.value("token_count", std::size_t{1})});
  }
  e.seed = j.at("seed").get<uint64_t>();
  e.failed = j.value("failed", false);
  e.failure_reason = j.value("failure_reason", std::string());
  return e;
}

}  // namespace

void write_episode_log(const std::string& path, std::span<const EpisodeSample> episodes) {
  std::ofstream out(path);
  require(out.good(), "write_episode_log: cannot open " + path);
  for (const auto& e : episodes) {
    out << episode_to_json(e).dump() << "\n";
  }
}

std::vector<EpisodeSample> read_episode_log(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "read_episode_log: cannot open " + path);
  std::vector<EpisodeSample> episodes;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    episodes.push_back(episode_from_json(nlohmann::json::parse(line)));
  }
  return episodes;
}

}  // namespace uq
