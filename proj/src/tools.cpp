#include "uq/tools.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "uq/common.hpp"
#include "uq/rng.hpp"
#include "uq/text.hpp"

#include "json.hpp"

namespace uq {

LookupClassifierTool::LookupClassifierTool(std::map<std::string, std::string> table,
                                           std::vector<std::string> class_labels,
                                           double noisy_fraction, double peak_prob,
                                           int key_rounding, LookupMissPolicy miss_policy)
    : table_(std::move(table)),
      class_labels_(std::move(class_labels)),
      noisy_fraction_(noisy_fraction),
      peak_prob_(peak_prob),
      key_rounding_(key_rounding),
      miss_policy_(miss_policy) {
  require(!class_labels_.empty(), "LookupClassifierTool: no class labels");
  require(noisy_fraction_ >= 0.0 && noisy_fraction_ <= 1.0,
          "LookupClassifierTool: noisy_fraction in [0,1]");
  require(peak_prob_ > 1.0 / static_cast<double>(class_labels_.size()) && peak_prob_ <= 1.0,
          "LookupClassifierTool: peak_prob must exceed 1/|classes| and be <= 1");
  require(key_rounding_ >= 0, "LookupClassifierTool: key_rounding must be >= 0");
  for (const auto& [key, cls] : table_) {
    require(std::find(class_labels_.begin(), class_labels_.end(), cls) != class_labels_.end(),
            "LookupClassifierTool: table class '" + cls + "' not in class labels");
    (void)key;
  }
}

void LookupClassifierTool::assign_noise_profile(std::span<const std::string> question_ids) {
  std::vector<std::string> ids(question_ids.begin(), question_ids.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::stable_sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) {
    uint64_t ha = splitmix64(fnv1a64(a));
    uint64_t hb = splitmix64(fnv1a64(b));
    return ha != hb ? ha < hb : a < b;
  });
  std::size_t n_noisy =
      static_cast<std::size_t>(noisy_fraction_ * static_cast<double>(ids.size()));
  noisy_ids_.clear();
  for (std::size_t i = 0; i < n_noisy; ++i) noisy_ids_.insert(ids[i]);
}

bool LookupClassifierTool::is_noisy(const std::string& question_id) const {
  return noisy_ids_.count(question_id) > 0;
}

std::string LookupClassifierTool::feature_key(std::span<const double> features) const {
  std::string key;
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (i > 0) key += "|";
    key += format_decimal(features[i], key_rounding_);
  }
  return key;
}

Categorical LookupClassifierTool::output_distribution(const ToolCall& call,
                                                      const std::string& question_id) const {
  require(call.parsed(), "LookupClassifierTool: call has no parsed features");
  if (is_noisy(question_id)) {
    return Categorical::uniform(class_labels_);
  }
  auto it = table_.find(feature_key(*call.parsed_features));
  if (it == table_.end()) {
    if (miss_policy_ == LookupMissPolicy::kError) {
      throw std::invalid_argument("LookupClassifierTool: no table entry for features of question " +
                                  question_id);
    }
    return Categorical::uniform(class_labels_);
  }
  const std::string& gold = it->second;
  std::vector<double> probs(class_labels_.size());
  double rest = class_labels_.size() > 1
                    ? (1.0 - peak_prob_) / static_cast<double>(class_labels_.size() - 1)
                    : 0.0;
  for (std::size_t i = 0; i < class_labels_.size(); ++i) {
    probs[i] = class_labels_[i] == gold ? peak_prob_ : rest;
  }
  return Categorical::make(std::move(probs), class_labels_);
}

RetrievalTool::RetrievalTool(std::vector<CorpusDocument> corpus, std::size_t top_k,
                             std::size_t n_draws, double temperature)
    : corpus_(std::move(corpus)), top_k_(top_k), n_draws_(n_draws), temperature_(temperature) {
  require(!corpus_.empty(), "RetrievalTool: empty corpus");
  require(top_k_ >= 1 && top_k_ <= corpus_.size(), "RetrievalTool: top_k must be in [1, corpus size]");
  require(n_draws_ >= 1, "RetrievalTool: n_draws must be >= 1");
  require(temperature_ > 0.0, "RetrievalTool: temperature must be positive");
  std::size_t dim = corpus_.front().embedding.size();
  require(dim > 0, "RetrievalTool: documents need embeddings");
  for (const auto& doc : corpus_) {
    require(doc.embedding.size() == dim, "RetrievalTool: inconsistent embedding dimensions");
  }
}

const CorpusDocument& RetrievalTool::document(const std::string& doc_id) const {
  for (const auto& doc : corpus_) {
    if (doc.doc_id == doc_id) return doc;
  }
  throw std::invalid_argument("RetrievalTool: unknown doc_id '" + doc_id + "'");
}

Categorical RetrievalTool::retrieval_distribution(std::span<const double> query_embedding) const {
  require(query_embedding.size() == corpus_.front().embedding.size(),
          "retrieval_distribution: query dimension mismatch");

  struct Scored {
    double score;
    const CorpusDocument* doc;
  };
  std::vector<Scored> scored;
  scored.reserve(corpus_.size());
  for (const auto& doc : corpus_) {
    scored.push_back({cosine_similarity(query_embedding, doc.embedding), &doc});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc->doc_id < b.doc->doc_id;  // ties broken by doc_id order
  });
  scored.resize(top_k_);

  double max_logit = scored.front().score / temperature_;
  std::vector<double> weights(top_k_);
  double total = 0.0;
  for (std::size_t i = 0; i < top_k_; ++i) {
    weights[i] = std::exp(scored[i].score / temperature_ - max_logit);
    total += weights[i];
  }
  std::vector<double> probs(top_k_);
  std::vector<std::string> labels(top_k_);
  for (std::size_t i = 0; i < top_k_; ++i) {
    probs[i] = weights[i] / total;
    labels[i] = scored[i].doc->doc_id;
  }
  // Normalize away the last-ulp drift so the Categorical invariant holds.
  double sum = 0.0;
  for (double p : probs) sum += p;
  for (double& p : probs) p /= sum;
  return Categorical::make(std::move(probs), std::move(labels));
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  require(u.size() == v.size(), "cosine_similarity: dimension mismatch");
  require(!u.empty(), "cosine_similarity: empty vectors");
  double dot = 0.0;
  double nu = 0.0;
  double nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  require(nu > 0.0 && nv > 0.0, "cosine_similarity: zero vector");
  return dot / (std::sqrt(nu) * std::sqrt(nv));
}

std::vector<std::string> sample_documents(const Categorical& dist, std::size_t n_draws,
                                          uint64_t seed) {
  dist.validate();
  require(n_draws >= 1, "sample_documents: n_draws must be >= 1");
  Rng rng(seed);
  std::vector<std::string> out;
  out.reserve(n_draws);
  for (std::size_t i = 0; i < n_draws; ++i) {
    out.push_back(dist.labels[rng.categorical(dist.probs)]);
  }
  return out;
}

std::vector<CorpusDocument> load_corpus_jsonl(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "load_corpus_jsonl: cannot open " + path);
  std::vector<CorpusDocument> corpus;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    CorpusDocument doc;
    doc.doc_id = j.at("doc_id").get<std::string>();
    doc.text = j.at("text").get<std::string>();
    if (j.contains("embedding")) doc.embedding = j["embedding"].get<std::vector<double>>();
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

std::map<std::string, std::string> load_classifier_table_csv(const std::string& path,
                                                             int key_rounding) {
  std::ifstream in(path);
  require(in.good(), "load_classifier_table_csv: cannot open " + path);
  std::map<std::string, std::string> table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    require(fields.size() >= 2, "load_classifier_table_csv: need features and a class column");
    if (first) {
      first = false;
      // Header row: skip when the first field is not numeric.
      try {
        (void)std::stod(fields.front());
      } catch (const std::exception&) {
        continue;
      }
    }
    std::string key;
    for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
      if (i > 0) key += "|";
      key += format_decimal(std::stod(fields[i]), key_rounding);
    }
    table[key] = fields.back();
  }
  return table;
}

}  // namespace uq
