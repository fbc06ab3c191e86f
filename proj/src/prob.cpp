#include "uq/prob.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "uq/common.hpp"

namespace uq {

namespace {

// Neumaier-compensated sum; entropy sums over up to ~1e3 terms must stay
// within 1e-12 of the analytic value.
double compensated_sum(std::span<const double> terms) {
  double sum = 0.0;
  double comp = 0.0;
  for (double t : terms) {
    double next = sum + t;
    if (std::abs(sum) >= std::abs(t)) {
      comp += (sum - next) + t;
    } else {
      comp += (t - next) + sum;
    }
    sum = next;
  }
  return sum + comp;
}

}  // namespace

Categorical Categorical::make(std::vector<double> probs, std::vector<std::string> labels) {
  Categorical c{std::move(probs), std::move(labels)};
  c.validate();
  return c;
}

Categorical Categorical::uniform(std::vector<std::string> labels) {
  require(!labels.empty(), "uniform: no labels");
  std::vector<double> probs(labels.size(), 1.0 / static_cast<double>(labels.size()));
  return make(std::move(probs), std::move(labels));
}

Categorical Categorical::point_mass(std::string label) {
  return make({1.0}, {std::move(label)});
}

void Categorical::validate() const {
  require(!probs.empty(), "Categorical: empty distribution");
  require(probs.size() == labels.size(), "Categorical: probs/labels size mismatch");
  double sum = 0.0;
  for (double p : probs) {
    require_finite(p, "Categorical prob");
    require(p >= 0.0, "Categorical: negative probability");
    sum += p;
  }
  require(std::abs(sum - 1.0) <= 1e-9, "Categorical: probabilities must sum to 1");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels) {
    require(seen.insert(l).second, "Categorical: duplicate label '" + l + "'");
  }
}

std::size_t Categorical::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  throw std::invalid_argument("Categorical: unknown label '" + label + "'");
}

void SemanticPartition::validate() const {
  require(!classes.empty(), "SemanticPartition: no classes");
  std::vector<bool> covered(samples.size(), false);
  for (const auto& cls : classes) {
    require(!cls.empty(), "SemanticPartition: empty class");
    for (std::size_t idx : cls) {
      require(idx < samples.size(), "SemanticPartition: index out of range");
      require(!covered[idx], "SemanticPartition: classes overlap");
      covered[idx] = true;
    }
  }
  for (bool c : covered) require(c, "SemanticPartition: classes do not cover all samples");
}

double entropy(const Categorical& dist) {
  dist.validate();
  std::vector<double> terms;
  terms.reserve(dist.probs.size());
  for (double p : dist.probs) {
    terms.push_back(p > 0.0 ? -p * std::log(p) : 0.0);
  }
  return compensated_sum(terms);
}

double mc_predictive_entropy(std::span<const ScoredSample> samples) {
  require(!samples.empty(), "mc_predictive_entropy: no samples");
  double sum = 0.0;
  for (const auto& s : samples) {
    require_finite(s.log_prob, "sample log_prob");
    sum += s.log_prob;
  }
  return -sum / static_cast<double>(samples.size());
}

double mc_semantic_entropy(const SemanticPartition& partition) {
  partition.validate();
  double sum = 0.0;
  for (const auto& cls : partition.classes) {
    // Distinct sequences only: the estimator's inner sum is over the class's
    // support, not over sample occurrences.
    std::unordered_map<std::string, double> distinct;
    for (std::size_t idx : cls) {
      const auto& s = partition.samples[idx];
      require_finite(s.log_prob, "sample log_prob");
      distinct.emplace(s.text, std::exp(s.log_prob));
    }
    double class_prob = 0.0;
    for (const auto& [_, p] : distinct) class_prob += p;
    require(class_prob > 0.0, "mc_semantic_entropy: class with zero probability");
    sum += std::log(class_prob);
  }
  return -sum / static_cast<double>(partition.classes.size());
}

double frequency_semantic_entropy(const SemanticPartition& partition) {
  partition.validate();
  const double n = static_cast<double>(partition.samples.size());
  std::vector<double> terms;
  terms.reserve(partition.classes.size());
  for (const auto& cls : partition.classes) {
    double f = static_cast<double>(cls.size()) / n;
    terms.push_back(-f * std::log(f));
  }
  return compensated_sum(terms);
}

double gaussian_entropy(std::span<const double> variances) {
  require(!variances.empty(), "gaussian_entropy: no variances");
  constexpr double two_pi_e = 2.0 * 3.141592653589793238462643383279502884 *
                              2.718281828459045235360287471352662498;
  double sum = 0.0;
  for (double v : variances) {
    require_finite(v, "variance");
    require(v > 0.0, "gaussian_entropy: variance must be positive");
    sum += 0.5 * std::log(two_pi_e * v);
  }
  return sum;
}

}  // namespace uq
