#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace uq {

/// Finite probability distribution over labeled outcomes. Holds tool output
/// distributions and retrieval distributions.
///
/// Invariants (checked by validate / the checked factory):
///   - probs and labels have equal length, labels unique
///   - every prob >= 0, probs sum to 1 within 1e-9
struct Categorical {
  std::vector<double> probs;
  std::vector<std::string> labels;

  static Categorical make(std::vector<double> probs, std::vector<std::string> labels);
  static Categorical uniform(std::vector<std::string> labels);
  static Categorical point_mass(std::string label);

  void validate() const;
  std::size_t size() const { return probs.size(); }
  std::size_t index_of(const std::string& label) const;
};

/// One sampled sequence with its total log-probability (nats) under the
/// generator, plus the token count for optional length normalization.
struct ScoredSample {
  std::string text;
  double log_prob = 0.0;
  std::size_t token_count = 1;
};

/// Partition of answer samples into semantic classes. Classes hold indices
/// into `samples`; they are disjoint, non-empty and cover all samples.
struct SemanticPartition {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<ScoredSample> samples;

  void validate() const;
};

/// Shannon entropy of a categorical, in nats. 0 ln 0 is treated as 0.
double entropy(const Categorical& dist);

/// Monte-Carlo predictive entropy: -(1/N) sum log p(y_i | z, x).
double mc_predictive_entropy(std::span<const ScoredSample> samples);

/// Monte-Carlo semantic entropy: -(1/|C|) sum_j log sum_{y in C_j} p(y|z,x),
/// where the inner sum runs over distinct sequences within the class (a
/// repeated sequence contributes its probability once).
double mc_semantic_entropy(const SemanticPartition& partition);

/// Occupancy-count semantic entropy: -sum_j (N_j/N) ln (N_j/N). Black-box
/// fallback that needs no log-probabilities.
double frequency_semantic_entropy(const SemanticPartition& partition);

/// Differential entropy of an independent Gaussian: sum_d 0.5 ln(2 pi e s_d^2).
double gaussian_entropy(std::span<const double> variances);

inline double nats_to_bits(double nats) { return nats / 0.6931471805599453; }
inline double bits_to_nats(double bits) { return bits * 0.6931471805599453; }

}  // namespace uq
