#include "uq/semantics.hpp"

#include "uq/common.hpp"
#include "uq/text.hpp"

namespace uq {

bool normalized_match(const std::string& a, const std::string& b) {
  return normalize_text(a) == normalize_text(b);
}

bool NormalizedMatchOracle::entails(const std::string& premise, const std::string& hypothesis) const {
  return normalized_match(premise, hypothesis);
}

SemanticPartition cluster(std::span<const ScoredSample> samples, const EquivalenceOracle& oracle) {
  require(!samples.empty(), "cluster: no samples");
  SemanticPartition partition;
  partition.samples.assign(samples.begin(), samples.end());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    bool placed = false;
    for (auto& cls : partition.classes) {
      const std::string& rep = partition.samples[cls.front()].text;
      if (oracle.entails(samples[i].text, rep) && oracle.entails(rep, samples[i].text)) {
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) partition.classes.push_back({i});
  }
  partition.validate();
  return partition;
}

}  // namespace uq
