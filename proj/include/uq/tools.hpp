#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "uq/prob.hpp"
#include "uq/tool_call.hpp"

namespace uq {

/// A callable external tool with a known output distribution per call.
class Tool {
 public:
  virtual ~Tool() = default;
  virtual Categorical output_distribution(const ToolCall& call,
                                          const std::string& question_id) const = 0;
  virtual std::string name() const = 0;
};

enum class LookupMissPolicy { kUniformFallback, kError };

/// The stochastic lookup classifier: a feature-keyed table with two noise
/// profiles. Questions assigned to the noisy profile get a uniform output
/// distribution; the rest get peak_prob on the looked-up gold class and the
/// remainder split evenly over the other classes.
class LookupClassifierTool final : public Tool {
 public:
  LookupClassifierTool(std::map<std::string, std::string> table,
                       std::vector<std::string> class_labels, double noisy_fraction = 0.5,
                       double peak_prob = 0.9, int key_rounding = 1,
                       LookupMissPolicy miss_policy = LookupMissPolicy::kUniformFallback);

  /// Fixes the noisy/confident split: ids are ranked by hash and the first
  /// floor(noisy_fraction * N) become noisy. Reproducible across runs.
  void assign_noise_profile(std::span<const std::string> question_ids);

  bool is_noisy(const std::string& question_id) const;
  std::string feature_key(std::span<const double> features) const;

  Categorical output_distribution(const ToolCall& call,
                                  const std::string& question_id) const override;
  std::string name() const override { return "lookup-classifier"; }

  const std::vector<std::string>& class_labels() const { return class_labels_; }
  double peak_prob() const { return peak_prob_; }
  int key_rounding() const { return key_rounding_; }

 private:
  std::map<std::string, std::string> table_;
  std::vector<std::string> class_labels_;
  double noisy_fraction_;
  double peak_prob_;
  int key_rounding_;
  LookupMissPolicy miss_policy_;
  std::set<std::string> noisy_ids_;
};

struct CorpusDocument {
  std::string doc_id;
  std::string text;
  std::vector<double> embedding;
};

/// Top-K retrieval over a fixed corpus: cosine scores against every document,
/// softmax(score / temperature) over the K best as the retrieval
/// distribution p(z|x).
class RetrievalTool {
 public:
  RetrievalTool(std::vector<CorpusDocument> corpus, std::size_t top_k = 5,
                std::size_t n_draws = 1, double temperature = 0.1);

  Categorical retrieval_distribution(std::span<const double> query_embedding) const;

  const std::vector<CorpusDocument>& corpus() const { return corpus_; }
  const CorpusDocument& document(const std::string& doc_id) const;
  std::size_t top_k() const { return top_k_; }
  std::size_t n_draws() const { return n_draws_; }
  double temperature() const { return temperature_; }

 private:
  std::vector<CorpusDocument> corpus_;
  std::size_t top_k_;
  std::size_t n_draws_;
  double temperature_;
};

double cosine_similarity(std::span<const double> u, std::span<const double> v);

/// n_draws i.i.d. label draws from the distribution, deterministic per seed.
std::vector<std::string> sample_documents(const Categorical& dist, std::size_t n_draws,
                                          uint64_t seed);

std::vector<CorpusDocument> load_corpus_jsonl(const std::string& path);
/// CSV with feature columns followed by a final class column; returns keyed
/// rows for building a LookupClassifierTool.
std::map<std::string, std::string> load_classifier_table_csv(const std::string& path,
                                                             int key_rounding);

}  // namespace uq
